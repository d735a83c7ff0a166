"""Certified lower/upper bounds on an integer invariant."""

from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, model_validator

# Provenance tags
CUP = "cup"
COVER = "cover-certificate"
VERTEX_COVER = "vertex-cover"
CRIT = "crit"
CRIT_HEURISTIC = "crit-heuristic"
GCAT = "gcat"
FIXTURE_TABLE = "fixture-table"
EXHAUSTIVE = "exhaustive"
COMPONENTS = "components"
CONTRACTIBILITY = "contractibility"
POINCARE_HOPF = "poincare-hopf"
DEGREE = "degree-exhaustion"
TRIVIAL = "trivial"
HOMOTOPY_INVARIANT = "homotopy-invariant"
STAR_COVER = "star-cover"
COVER_SEARCH = "cover-search"


class CategoryBracket(BaseModel):
    """lower <= value <= upper, each side tagged with the method that proved it.

    ``certificates`` holds the data backing each bound (a nonvanishing
    product, an ordering, a cover, a homotopy certificate).
    """

    lower: int
    upper: int
    lower_method: str
    upper_method: str
    certificates: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _ordered(self) -> "CategoryBracket":
        if self.lower > self.upper:
            raise ValueError(f"bracket lower {self.lower} exceeds upper {self.upper}")
        return self

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.exact else None

    @classmethod
    def point(cls, value: int, method: str, **certificates: Any) -> "CategoryBracket":
        return cls(lower=value, upper=value, lower_method=method, upper_method=method, certificates=certificates)

    def tightened(
        self,
        lower: Optional[int] = None,
        lower_method: str = "",
        upper: Optional[int] = None,
        upper_method: str = "",
        **certificates: Any,
    ) -> "CategoryBracket":
        """A copy whose sides improve where the new bounds are better."""
        data = self.model_dump()
        if lower is not None and lower > self.lower:
            data["lower"], data["lower_method"] = lower, lower_method
        if upper is not None and upper < self.upper:
            data["upper"], data["upper_method"] = upper, upper_method
        data["certificates"] = {**self.certificates, **certificates}
        return CategoryBracket(**data)

    def __add__(self, other: "CategoryBracket") -> "CategoryBracket":
        return CategoryBracket(
            lower=self.lower + other.lower,
            upper=self.upper + other.upper,
            lower_method=self.lower_method if self.lower_method == other.lower_method else "sum",
            upper_method=self.upper_method if self.upper_method == other.upper_method else "sum",
        )

    def __str__(self) -> str:
        if self.exact:
            return f"{self.lower} ({self.lower_method}/{self.upper_method})"
        return f"[{self.lower}, {self.upper}] ({self.lower_method}/{self.upper_method})"
