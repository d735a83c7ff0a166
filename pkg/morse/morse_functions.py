"""Morse orderings and the Morse inequalities."""

import logging
from typing import List, Optional

from pydantic import BaseModel

from cohomology.betti import betti
from core.cliques import cliques
from core.errors import NotMorseError
from core.graph import SimpleGraph
from homotopy.contractibility import ContractibilityCache
from morse.filtration import Ordering, index_profile

logger = logging.getLogger(__name__)


class CriticalPoint(BaseModel):
    vertex: int
    index: int
    morse_index: Optional[int] = None
    reason: str = ""


class MorseReport(BaseModel):
    morse: bool
    critical_points: List[CriticalPoint]
    counts: List[int]


def _morse_index(change: List[int]) -> Optional[int]:
    """Degree m of a single +-1 Betti change: k for b_k + 1, k + 1 for b_k - 1."""
    moved = [(k, d) for k, d in enumerate(change) if d]
    if len(moved) != 1:
        return None
    k, d = moved[0]
    if d == 1:
        return k
    if d == -1:
        return k + 1
    return None


def is_morse(graph: SimpleGraph, ordering: Ordering, cache: Optional[ContractibilityCache] = None) -> MorseReport:
    """Classify an ordering.

    It is Morse when every critical vertex has index +-1, changes exactly one
    Betti number by one, and its index equals (-1)^m for that Morse index m.
    ``counts`` is the vector c_m of critical points per Morse index, padded
    to the clique dimension of the graph.
    """
    profile = index_profile(graph, ordering, with_betti=True, cache=cache)
    points = []
    morse = True
    for report in profile:
        if not report.critical:
            continue
        m = _morse_index(report.betti_change)
        reason = ""
        if report.index not in (-1, 1):
            reason = f"index {report.index} is not +-1"
        elif m is None:
            reason = f"Betti change {report.betti_change} is not a single +-1"
        elif (-1) ** m != report.index:
            reason = f"index {report.index} disagrees with Morse index {m}"
        if reason:
            morse = False
            m = None
        points.append(CriticalPoint(vertex=report.vertex, index=report.index, morse_index=m, reason=reason))
    width = cliques(graph).dimension + 1
    top = max((p.morse_index for p in points if p.morse_index is not None), default=-1)
    counts = [0] * max(width, top + 1)
    for p in points:
        if p.morse_index is not None:
            counts[p.morse_index] += 1
    if not morse:
        logger.debug("Ordering is not Morse: %s", [p.reason for p in points if p.reason])
    return MorseReport(morse=morse, critical_points=points, counts=counts)


class InequalityRow(BaseModel):
    k: int
    betti_side: int
    critical_side: int
    slack: int


class MorseInequalityReport(BaseModel):
    betti: List[int]
    counts: List[int]
    strong: List[InequalityRow]
    weak: List[InequalityRow]
    euler_holds: bool

    @property
    def holds(self) -> bool:
        return self.euler_holds and all(r.slack >= 0 for r in self.strong + self.weak)


def _alternating(values: List[int], k: int) -> int:
    return sum((-1) ** (k - j) * values[j] for j in range(k + 1))


def morse_inequalities(
    graph: SimpleGraph, ordering: Ordering, cache: Optional[ContractibilityCache] = None
) -> MorseInequalityReport:
    """Check the strong and weak Morse inequalities for a Morse ordering.

    Strong: sum_{j<=k} (-1)^(k-j) b_j <= sum_{j<=k} (-1)^(k-j) c_j for every k,
    with equality at the top degree (Euler characteristic). Weak: b_k <= c_k.

    Raises:
        NotMorseError: the ordering is not Morse
    """
    report = is_morse(graph, ordering, cache)
    if not report.morse:
        reasons = "; ".join(f"{p.vertex}: {p.reason}" for p in report.critical_points if p.reason)
        raise NotMorseError(f"ordering is not Morse ({reasons})")
    counts = list(report.counts)
    b = list(betti(graph))
    width = max(len(b), len(counts))
    b += [0] * (width - len(b))
    counts += [0] * (width - len(counts))
    strong = []
    weak = []
    for k in range(width):
        lhs, rhs = _alternating(b, k), _alternating(counts, k)
        strong.append(InequalityRow(k=k, betti_side=lhs, critical_side=rhs, slack=rhs - lhs))
        weak.append(InequalityRow(k=k, betti_side=b[k], critical_side=counts[k], slack=counts[k] - b[k]))
    euler = sum((-1) ** k * b[k] for k in range(width)) == sum((-1) ** k * counts[k] for k in range(width))
    return MorseInequalityReport(betti=b, counts=counts, strong=strong, weak=weak, euler_holds=euler)

