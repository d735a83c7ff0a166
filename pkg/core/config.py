"""Runtime configuration.

Values come from ``LSCAT_*`` environment variables (optionally via a ``.env``
file) and may be overridden per invocation by CLI flags.
"""

import multiprocessing
import os
from functools import lru_cache
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

ENV_PREFIX = "LSCAT_"


class SearchBudget(BaseModel):
    """Bounds for homotopy searches."""

    max_extra_vertices: int = Field(default=2, ge=0, description="Vertices allowed above max(|G|, |H|)")
    max_states: int = Field(default=1_000_000, ge=1, description="Canonical states visited before giving up")


class Settings(BaseModel):
    seed: int = Field(default=0, description="Seed for random orderings and combination trials")
    threads: int = Field(default=1, ge=1, description="Worker processes for the census, crit DP, set cover and sampled curvature")
    budget_states: int = Field(default=1_000_000, ge=1, description="Default homotopy search state budget")
    budget_extra_vertices: int = Field(default=2, ge=0, description="Default extra vertices in homotopy search")
    dp_limit: int = Field(default=22, ge=1, description="Largest vertex count for the exact crit DP")
    gcat_limit: int = Field(default=10, ge=1, description="Largest vertex count for exact gcat")
    curvature_degree_cap: int = Field(default=16, ge=1, description="Largest degree for exact Euler curvature")
    betti_exact_limit: int = Field(default=8, ge=1, description="Largest vertex count for exact Betti/category curvature")
    cup_random_trials: int = Field(default=64, ge=0, description="Random class combinations per cup-length degree")
    heuristic_restarts: int = Field(default=200, ge=1, description="Restarts of the greedy crit heuristic")
    cover_search_restarts: int = Field(default=4, ge=1, description="Random growths per closed star in the gcat cover search")
    category_search_states: int = Field(default=300, ge=0, description="Representatives examined by cat/cri brackets")
    census_max_order: int = Field(default=7, ge=1, description="Largest census order without the long flag")
    census_long_order: int = Field(default=8, ge=1, description="Largest census order with the long flag")
    log_level: str = Field(default="WARNING", description="Root logging level for the CLI")
    progress: bool = Field(default=False, description="Show census progress bars")

    @property
    def budget(self) -> SearchBudget:
        return SearchBudget(
            max_extra_vertices=self.budget_extra_vertices,
            max_states=self.budget_states,
        )


def _read_environment() -> Dict[str, Any]:
    values: Dict[str, Any] = {}
    for name in Settings.model_fields:
        raw = os.environ.get(ENV_PREFIX + name.upper())
        if raw is not None and raw != "":
            values[name] = raw
    return values


@lru_cache(maxsize=1)
def _environment_settings() -> Settings:
    """Settings from the environment, loading ``.env`` on first use."""
    load_dotenv()
    return Settings(**_read_environment())


_active: Optional[Settings] = None


def get_settings() -> Settings:
    """The process-wide settings: environment values plus any CLI overrides."""
    return _active if _active is not None else _environment_settings()


def override_settings(**updates: Any) -> Settings:
    """Apply per-invocation overrides; ``None`` values leave a field alone."""
    global _active
    _active = _environment_settings().model_copy(update={k: v for k, v in updates.items() if v is not None})
    return _active


def reset_settings() -> None:
    global _active
    _active = None
    _environment_settings.cache_clear()


def pool_threads(threads: Optional[int] = None) -> int:
    """Worker processes for a pool; always 1 inside a worker process."""
    if multiprocessing.parent_process() is not None:
        return 1
    return get_settings().threads if threads is None else threads
