"""Curvatures as expected indices over uniformly random orderings.

Euler curvature only depends on the relative order of x and its
neighbours. Betti and category curvature depend on the whole sublevel set,
whose law below x is a random subset S of V minus x with weight
|S|!(n-1-|S|)!/n!. Larger cases are sampled, and the same orderings serve
every vertex so that sampled curvatures still sum to the global value.
Orderings come in fixed chunks, each drawn from its own stream spawned from
the seed, and chunks are evaluated in a process pool when threads allow.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer

from cohomology.betti import betti
from core.brackets import CategoryBracket
from core.category_evaluator import CategoryEvaluator
from core.cliques import alternating_clique_count
from core.config import get_settings, pool_threads
from core.errors import SizeLimitError
from core.graph import SimpleGraph, bit_positions, induced_masks

logger = logging.getLogger(__name__)

EXACT = "exact"
MONTE_CARLO = "monte_carlo"
BRACKET = "bracket"

DEFAULT_SAMPLES = 2000
# Orderings per seeded stream; fixed so that samples do not depend on the thread count
SAMPLE_CHUNK = 250


class CurvatureEntry(BaseModel):
    """Curvature at one vertex.

    Exact entries set ``value``; bracket entries set ``lower``/``upper``;
    sampled entries set ``mean``/``radius`` (and ``lower``/``upper`` means
    when the underlying values were brackets).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    vertex: int
    method: str
    value: Optional[Fraction] = None
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None
    mean: Optional[float] = None
    radius: Optional[float] = None

    @field_serializer("value", "lower", "upper")
    def _rational(self, v: Optional[Fraction]) -> Optional[str]:
        return None if v is None else str(v)


class CurvatureReport(BaseModel):
    kind: str
    method: str
    entries: List[CurvatureEntry]
    samples: Optional[int] = None
    seed: Optional[int] = None

    def values(self) -> Dict[int, Fraction]:
        """Exact curvature per vertex; only meaningful when ``method`` is exact."""
        return {e.vertex: e.value for e in self.entries if e.value is not None}

    def total(self) -> Optional[Fraction]:
        if any(e.value is None for e in self.entries):
            return None
        return sum((e.value for e in self.entries), Fraction(0))


def _report_method(entries: Sequence[CurvatureEntry]) -> str:
    methods = {e.method for e in entries}
    if not methods:
        return EXACT
    return methods.pop() if len(methods) == 1 else "mixed"


def _weight(size: int, n: int) -> Fraction:
    """Probability weight of a particular set of ``size`` elements lying below x."""
    return Fraction(factorial(size) * factorial(n - 1 - size), factorial(n))


def _chunk_sizes(samples: int) -> List[int]:
    full, rest = divmod(samples, SAMPLE_CHUNK)
    return [SAMPLE_CHUNK] * full + ([rest] if rest else [])


def _chunk_orderings(n: int, count: int, stream: np.random.SeedSequence) -> List[List[int]]:
    rng = np.random.default_rng(stream)
    return [rng.permutation(n).tolist() for _ in range(count)]


def _sample_orderings(n: int, samples: int, seed: int) -> List[List[int]]:
    """Orderings drawn in fixed chunks, each chunk from its own spawned stream."""
    sizes = _chunk_sizes(samples)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    orderings: List[List[int]] = []
    for count, stream in zip(sizes, streams):
        orderings.extend(_chunk_orderings(n, count, stream))
    return orderings


def _summary(values: Sequence[float]) -> Tuple[float, float]:
    data = np.asarray(values, dtype=float)
    mean = float(data.mean())
    if len(data) < 2:
        return mean, 0.0
    return mean, float(3 * data.std(ddof=1) / np.sqrt(len(data)))


# ============================================================================
# Euler curvature
# ============================================================================

def euler_curvature(
    graph: SimpleGraph,
    degree_cap: Optional[int] = None,
    samples: int = DEFAULT_SAMPLES,
    seed: Optional[int] = None,
) -> CurvatureReport:
    """K(x) = sum over W in N(x) of (1 - chi(W)) |W|!(d-|W|)!/(d+1)!.

    Vertices with degree above ``degree_cap`` are sampled instead.
    """
    settings = get_settings()
    degree_cap = settings.curvature_degree_cap if degree_cap is None else degree_cap
    seed = settings.seed if seed is None else seed
    masks = graph.masks()
    n = graph.order
    entries: List[Optional[CurvatureEntry]] = [None] * n
    sampled = []
    for x in range(n):
        neighbours = bit_positions(masks[x])
        d = len(neighbours)
        if d > degree_cap:
            sampled.append(x)
            continue
        total = Fraction(0)
        for chosen in range(1 << d):
            within = 0
            size = 0
            for i, p in enumerate(neighbours):
                if chosen >> i & 1:
                    within |= 1 << p
                    size += 1
            index = 1 - alternating_clique_count(masks, within) if within else 1
            if index:
                total += index * Fraction(factorial(size) * factorial(d - size), factorial(d + 1))
        entries[x] = CurvatureEntry(vertex=graph.vertices[x], method=EXACT, value=total)
    if sampled:
        logger.warning("Sampling Euler curvature at %d vertices above degree %d", len(sampled), degree_cap)
        orderings = _sample_orderings(n, samples, seed)
        for x in sampled:
            values = []
            for positions in orderings:
                rank = {p: r for r, p in enumerate(positions)}
                below = 0
                for p in bit_positions(masks[x]):
                    if rank[p] < rank[x]:
                        below |= 1 << p
                values.append(1 - alternating_clique_count(masks, below) if below else 1)
            mean, radius = _summary(values)
            entries[x] = CurvatureEntry(vertex=graph.vertices[x], method=MONTE_CARLO, mean=mean, radius=radius)
    return CurvatureReport(
        kind="euler",
        method=_report_method(entries),
        entries=entries,
        samples=samples if sampled else None,
        seed=seed if sampled else None,
    )


# ============================================================================
# Order-type reduction for global quantities
# ============================================================================

SubsetValue = Callable[[int], Tuple[Fraction, Fraction]]


def _exact_expectation(graph: SimpleGraph, value: SubsetValue, kind: str) -> CurvatureReport:
    n = graph.order
    entries = []
    full = (1 << n) - 1
    for x in range(n):
        lower = upper = Fraction(0)
        rest = full & ~(1 << x)
        subset = rest
        while True:
            size = bin(subset).count("1")
            w = _weight(size, n)
            above, below = value(subset | 1 << x), value(subset)
            lower += w * (above[0] - below[1])
            upper += w * (above[1] - below[0])
            if subset == 0:
                break
            subset = (subset - 1) & rest
        vertex = graph.vertices[x]
        if lower == upper:
            entries.append(CurvatureEntry(vertex=vertex, method=EXACT, value=lower))
        else:
            entries.append(CurvatureEntry(vertex=vertex, method=BRACKET, lower=lower, upper=upper))
    return CurvatureReport(kind=kind, method=_report_method(entries), entries=entries)


class _BettiValue:
    """b_k of an induced subgraph, as a degenerate (lower, upper) pair."""

    def __init__(self, masks, k: int):
        self.masks = masks
        self.k = k
        self.memo: Dict[int, Tuple[Fraction, Fraction]] = {}

    def __call__(self, subset: int) -> Tuple[Fraction, Fraction]:
        cached = self.memo.get(subset)
        if cached is None:
            numbers = betti(SimpleGraph.from_masks(induced_masks(self.masks, subset))) if subset else ()
            b = Fraction(numbers[self.k] if self.k < len(numbers) else 0)
            cached = self.memo[subset] = (b, b)
        return cached


class _CategoryValue:
    """Category bracket of an induced subgraph."""

    def __init__(self, masks, evaluator: CategoryEvaluator):
        self.masks = masks
        self.evaluator = evaluator
        self.memo: Dict[int, Tuple[Fraction, Fraction]] = {}

    def __call__(self, subset: int) -> Tuple[Fraction, Fraction]:
        cached = self.memo.get(subset)
        if cached is None:
            bracket: CategoryBracket = self.evaluator.evaluate(SimpleGraph.from_masks(induced_masks(self.masks, subset)))
            cached = self.memo[subset] = (Fraction(bracket.lower), Fraction(bracket.upper))
        return cached


def _sample_chunk(job: Tuple[SubsetValue, int, int, np.random.SeedSequence]) -> Tuple[List[List[float]], List[List[float]]]:
    value, n, count, stream = job
    lows: List[List[float]] = [[] for _ in range(n)]
    highs: List[List[float]] = [[] for _ in range(n)]
    for positions in _chunk_orderings(n, count, stream):
        placed = 0
        previous = value(0)
        for x in positions:
            placed |= 1 << x
            current = value(placed)
            lows[x].append(float(current[0] - previous[1]))
            highs[x].append(float(current[1] - previous[0]))
            previous = current
    return lows, highs


def _sampled_expectation(
    graph: SimpleGraph, value: SubsetValue, kind: str, samples: int, seed: int, threads: Optional[int] = None
) -> CurvatureReport:
    n = graph.order
    sizes = _chunk_sizes(samples)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = [(value, n, count, stream) for count, stream in zip(sizes, streams)]
    threads = pool_threads(threads)
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_sample_chunk, jobs))
    else:
        chunks = [_sample_chunk(job) for job in jobs]
    lows = [[v for chunk, _ in chunks for v in chunk[x]] for x in range(n)]
    highs = [[v for _, chunk in chunks for v in chunk[x]] for x in range(n)]
    entries = []
    for x in range(n):
        mean, radius = _summary(lows[x])
        entry = CurvatureEntry(vertex=graph.vertices[x], method=MONTE_CARLO, mean=mean, radius=radius)
        if lows[x] != highs[x]:
            high_mean, high_radius = _summary(highs[x])
            entry.lower = Fraction(mean).limit_denominator(10**6)
            entry.upper = Fraction(high_mean).limit_denominator(10**6)
            entry.radius = max(radius, high_radius)
        entries.append(entry)
    return CurvatureReport(kind=kind, method=MONTE_CARLO, entries=entries, samples=samples, seed=seed)


def _resolve_method(method: Optional[str], n: int, limit: int) -> Tuple[str, Optional[int]]:
    """Parse ``exact``, ``mc`` or ``mc:SAMPLES``; None picks exact when small enough."""
    if method is None:
        return (EXACT, None) if n <= limit else (MONTE_CARLO, DEFAULT_SAMPLES)
    if method == EXACT:
        if n > limit:
            raise SizeLimitError("exact curvature", n, limit, "use --method mc:SAMPLES")
        return EXACT, None
    if method.startswith("mc"):
        _, _, count = method.partition(":")
        return MONTE_CARLO, int(count) if count else DEFAULT_SAMPLES
    raise ValueError(f"unknown curvature method {method!r}")


def betti_curvature(
    graph: SimpleGraph,
    k: int,
    method: Optional[str] = None,
    seed: Optional[int] = None,
    exact_limit: Optional[int] = None,
    threads: Optional[int] = None,
) -> CurvatureReport:
    """B_k(x) = E[change of b_k when x enters the filtration].

    Raises:
        SizeLimitError: exact requested above ``exact_limit`` vertices
    """
    settings = get_settings()
    exact_limit = settings.betti_exact_limit if exact_limit is None else exact_limit
    seed = settings.seed if seed is None else seed
    mode, samples = _resolve_method(method, graph.order, exact_limit)
    value = _BettiValue(graph.masks(), k)
    kind = f"betti:{k}"
    if mode == EXACT:
        return _exact_expectation(graph, value, kind)
    return _sampled_expectation(graph, value, kind, samples, seed, threads)


def category_curvature(
    graph: SimpleGraph,
    evaluator: CategoryEvaluator,
    method: Optional[str] = None,
    seed: Optional[int] = None,
    exact_limit: Optional[int] = None,
    threads: Optional[int] = None,
) -> CurvatureReport:
    """C(x) = E[k_f(x)], where k_f(x) is the jump of cat at x.

    Where the evaluator only brackets a sublevel category, entries carry the
    lower and upper expectations instead of a value. Sampled runs hand the
    evaluator to worker processes, so it must pickle.

    Raises:
        SizeLimitError: exact requested above ``exact_limit`` vertices
    """
    settings = get_settings()
    exact_limit = settings.betti_exact_limit if exact_limit is None else exact_limit
    seed = settings.seed if seed is None else seed
    mode, samples = _resolve_method(method, graph.order, exact_limit)
    value = _CategoryValue(graph.masks(), evaluator)
    if mode == EXACT:
        report = _exact_expectation(graph, value, "category")
    else:
        report = _sampled_expectation(graph, value, "category", samples, seed, threads)
    if report.method != EXACT:
        logger.warning("Category curvature is %s for %d vertices", report.method, graph.order)
    return report
