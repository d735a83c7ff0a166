"""Minimal number of critical points over all orderings.

The exact value comes from a dynamic program over vertex subsets: building
the ordering from the bottom, dp(S) is the fewest critical points of an
ordering of S, and adding x on top of S costs 1 exactly when its lower
neighbourhood inside S is empty or not contractible.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel

from core import brackets
from core.config import get_settings, pool_threads
from core.errors import SizeLimitError
from core.graph import Masks, SimpleGraph, bit_positions, induced_masks
from homotopy.contractibility import ContractibilityCache, masks_contractible
from morse.filtration import Ordering

logger = logging.getLogger(__name__)


class CritResult(BaseModel):
    """``value`` critical points are achieved by ``witness``.

    ``exact`` is False for heuristic results, which are only upper bounds.
    """

    value: int
    witness: Ordering
    exact: bool = True
    method: str = brackets.CRIT

    model_config = {"arbitrary_types_allowed": True}


class _CostTable:
    """Memo of 'is adding x on top of this lower neighbourhood critical'."""

    def __init__(self, masks, cache: Optional[ContractibilityCache]):
        self.masks = masks
        self.cache = cache
        self._memo: Dict[int, int] = {0: 1}

    def __call__(self, lower: int) -> int:
        cost = self._memo.get(lower)
        if cost is None:
            cost = 0 if masks_contractible(induced_masks(self.masks, lower), self.cache) else 1
            self._memo[lower] = cost
        return cost

    def missing(self, lowers: Iterable[int]) -> List[int]:
        return sorted(set(lowers).difference(self._memo))

    def update(self, costs: Iterable[Tuple[int, int]]) -> None:
        self._memo.update(costs)


_worker_masks: Optional[Masks] = None


def _init_worker(masks: Masks) -> None:
    global _worker_masks
    _worker_masks = masks


def _lower_cost(lower: int) -> int:
    return 0 if masks_contractible(induced_masks(_worker_masks, lower)) else 1


def _levels(n: int) -> List[List[int]]:
    """Nonempty subsets of n positions grouped by cardinality."""
    levels: List[List[int]] = [[] for _ in range(n + 1)]
    for subset in range(1, 1 << n):
        levels[bin(subset).count("1")].append(subset)
    return levels[1:]


def _fill(dp: List[int], subsets: Iterable[int], masks: Masks, cost: _CostTable, n: int) -> None:
    for subset in subsets:
        best = n + 1
        rest = subset
        while rest:
            low = rest & -rest
            rest ^= low
            x = low.bit_length() - 1
            below = subset ^ low
            value = dp[below] + cost(masks[x] & below)
            if value < best:
                best = value
        dp[subset] = best


def crit_exact(
    graph: SimpleGraph,
    dp_limit: Optional[int] = None,
    cache: Optional[ContractibilityCache] = None,
    threads: Optional[int] = None,
) -> CritResult:
    """Exact crit(G) with a witness ordering.

    With several threads the DP runs level by level over subsets of equal
    size: the pool decides contractibility of every new lower neighbourhood
    of a level, then the parent takes the minima. Costs are the same either
    way, so value and witness do not depend on the thread count.

    Raises:
        SizeLimitError: more vertices than ``dp_limit``
    """
    dp_limit = get_settings().dp_limit if dp_limit is None else dp_limit
    n = graph.order
    if n > dp_limit:
        raise SizeLimitError("crit dynamic program", n, dp_limit, "use the heuristic mode for an upper bound")
    if n == 0:
        return CritResult(value=0, witness=Ordering(()))
    threads = pool_threads(threads)
    masks = graph.masks()
    cost = _CostTable(masks, cache)
    size = 1 << n
    dp = [0] * size
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=(masks,)) as pool:
            for level in _levels(n):
                pending = cost.missing(masks[x] & (subset ^ (1 << x)) for subset in level for x in bit_positions(subset))
                cost.update(zip(pending, pool.map(_lower_cost, pending, chunksize=64)))
                _fill(dp, level, masks, cost, n)
    else:
        _fill(dp, range(1, size), masks, cost, n)

    # Walk back from the full set, taking the top vertex at each step
    order = []
    subset = size - 1
    while subset:
        for x in bit_positions(subset):
            below = subset & ~(1 << x)
            if dp[below] + cost(masks[x] & below) == dp[subset]:
                order.append(x)
                subset = below
                break
    order.reverse()
    vertices = graph.vertices
    logger.debug("crit DP on %d vertices: %d critical points", n, dp[size - 1])
    return CritResult(value=dp[size - 1], witness=Ordering(tuple(vertices[p] for p in order)))


def crit_heuristic(
    graph: SimpleGraph,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    cache: Optional[ContractibilityCache] = None,
) -> CritResult:
    """Upper bound on crit(G) from randomised greedy orderings.

    Each restart grows the ordering from the bottom, preferring a random
    vertex whose addition is regular.
    """
    settings = get_settings()
    restarts = settings.heuristic_restarts if restarts is None else restarts
    seed = settings.seed if seed is None else seed
    n = graph.order
    if n == 0:
        return CritResult(value=0, witness=Ordering(()), exact=False, method=brackets.CRIT_HEURISTIC)
    masks = graph.masks()
    cost = _CostTable(masks, cache)
    rng = random.Random(seed)
    best_value = n + 1
    best_order = None
    for _ in range(max(1, restarts)):
        placed = 0
        order = []
        critical = 0
        remaining = list(range(n))
        while remaining:
            regular = [x for x in remaining if masks[x] & placed and cost(masks[x] & placed) == 0]
            pool = regular or remaining
            x = rng.choice(pool)
            critical += cost(masks[x] & placed)
            remaining.remove(x)
            placed |= 1 << x
            order.append(x)
            if critical >= best_value:
                break
        else:
            if critical < best_value:
                best_value, best_order = critical, order
    vertices = graph.vertices
    logger.warning("crit for %d vertices is a heuristic upper bound: %d", n, best_value)
    return CritResult(
        value=best_value,
        witness=Ordering(tuple(vertices[p] for p in best_order)),
        exact=False,
        method=brackets.CRIT_HEURISTIC,
    )


@lru_cache(maxsize=256)
def _shared_exact(graph: SimpleGraph, dp_limit: int) -> CritResult:
    return crit_exact(graph, dp_limit)


def crit(graph: SimpleGraph, dp_limit: Optional[int] = None, cache: Optional[ContractibilityCache] = None) -> CritResult:
    """Exact crit when the DP is allowed, otherwise the heuristic upper bound.

    Results on the default contractibility cache are memoized per graph.
    """
    dp_limit = get_settings().dp_limit if dp_limit is None else dp_limit
    if graph.order <= dp_limit:
        if cache is None:
            return _shared_exact(graph, dp_limit)
        return crit_exact(graph, dp_limit, cache)
    return crit_heuristic(graph, cache=cache)
