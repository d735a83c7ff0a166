"""Versioned report schemas printed by the CLI.

Every report carries ``schema_version`` and the tool version. JSON output
is the pydantic dump; text output is one aligned ``key: value`` line per
top-level field.
"""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from category.covers import CoverReport
from census.classification import CensusReport
from core import __version__
from core.brackets import CategoryBracket
from core.canonical import certificate
from core.config import SearchBudget
from core.graph_io import GraphDocument, LoadedGraph
from curvature.curvatures import CurvatureReport
from homotopy.moves import HomotopyCertificate
from homotopy.search import InvariantWitness, VerdictStatus
from morse.filtration import VertexIndexReport
from morse.morse_functions import CriticalPoint, MorseInequalityReport
from cli.messages import KEY_VALUE_LINE

SCHEMA_VERSION = 1


class InputDescriptor(BaseModel):
    source: str
    certificate: str
    order: int
    size: int

    @classmethod
    def of(cls, loaded: LoadedGraph) -> "InputDescriptor":
        graph = loaded.graph
        return cls(source=loaded.source, certificate=certificate(graph).hex(), order=graph.order, size=graph.size)


class Report(BaseModel):
    schema_version: int = SCHEMA_VERSION
    tool_version: str = __version__
    command: str
    input: Optional[InputDescriptor] = None


class CritSummary(BaseModel):
    value: int
    exact: bool
    method: str
    ordering: List[int]


class InvariantReport(Report):
    fvector: List[int]
    euler_characteristic: int
    betti: List[int]
    poincare_polynomial: str
    contractible: bool
    cup: CategoryBracket
    crit: CritSummary
    tcat: CategoryBracket
    cat: CategoryBracket
    cri: CategoryBracket
    budget: SearchBudget


class ContractibleReport(Report):
    contractible: bool
    witness: Optional[List[int]] = None
    refutation: Optional[str] = None
    greedy_misses: int = 0


class ReduceReport(Report):
    reduced: GraphDocument
    removed: int
    certificate: HomotopyCertificate


class CritReport(Report):
    crit: CritSummary


class CupReport(Report):
    betti: List[int]
    cup: CategoryBracket


class CategoryReport(Report):
    tcat: CategoryBracket
    gcat: CategoryBracket
    cat: CategoryBracket
    strong_cat: CategoryBracket
    cri: CategoryBracket


class CurvatureCommandReport(Report):
    curvature: CurvatureReport
    total: Optional[str] = None


class PoincareHopfReport(Report):
    ordering: List[int]
    indices: List[VertexIndexReport]
    index_sum: int
    euler_characteristic: int
    prefix_sums_match: bool

    @property
    def holds(self) -> bool:
        return self.index_sum == self.euler_characteristic and self.prefix_sums_match


class MorseCheckReport(Report):
    ordering: List[int]
    morse: bool
    critical_points: List[CriticalPoint]
    counts: List[int]
    inequalities: Optional[MorseInequalityReport] = None


class CoverVerifyReport(Report):
    cover: CoverReport


class HomotopicReport(Report):
    second: InputDescriptor
    status: VerdictStatus
    states_explored: int = 0
    reason: str = ""
    witness: Optional[InvariantWitness] = None
    certificate: Optional[HomotopyCertificate] = None
    end_isomorphic: Optional[bool] = None


class CertificateVerifyReport(Report):
    valid: bool
    steps: int = 0
    end: Optional[GraphDocument] = None
    marked: Optional[List[int]] = None
    failed_step: Optional[int] = None
    reason: str = ""


class CensusCommandReport(Report):
    census: CensusReport


class FixturesReport(Report):
    fixtures: List[str]


class ErrorReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    error: str
    message: str
    position: Optional[str] = None


def to_json(report: BaseModel) -> str:
    return report.model_dump_json(indent=2, exclude_none=True)


def _format_value(value: Any) -> str:
    if isinstance(value, CategoryBracket):
        return str(value)
    if isinstance(value, BaseModel):
        return json.dumps(value.model_dump(mode="json", exclude_none=True), separators=(",", ":"))
    if isinstance(value, (list, tuple)):
        if all(isinstance(v, (int, str)) for v in value):
            return " ".join(str(v) for v in value)
        return json.dumps([v.model_dump(mode="json", exclude_none=True) if isinstance(v, BaseModel) else v for v in value])
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return str(value)


def to_text(report: Report) -> str:
    """Aligned ``key: value`` lines for the top-level fields."""
    rows: Dict[str, str] = {}
    if report.input is not None:
        rows["input"] = f"{report.input.source} ({report.input.order} vertices, {report.input.size} edges)"
    for name in type(report).model_fields:
        if name in ("schema_version", "tool_version", "command", "input"):
            continue
        value = getattr(report, name)
        if value is None:
            continue
        rows[name] = _format_value(value)
    width = max((len(k) for k in rows), default=0) + 1
    return "\n".join(KEY_VALUE_LINE.format(key=f"{k}:", value=v, width=width) for k, v in rows.items())
