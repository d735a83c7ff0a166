"""Geometric category: fewest in-themselves contractible subgraphs covering G."""

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from category.covers import Cover
from core.config import get_settings
from core.errors import SizeLimitError
from core.graph import SimpleGraph, bit_positions, induced_masks
from homotopy.contractibility import ContractibilityCache, masks_contractible
from tools.set_cover import SetCoverSolver

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GcatResult:
    value: int
    cover: Cover


def _edge_bits(masks: Sequence[int]) -> Dict[Tuple[int, int], int]:
    """Universe positions of the edges, numbered after the vertices."""
    n = len(masks)
    edge_bit: Dict[Tuple[int, int], int] = {}
    for u in range(n):
        for v in bit_positions(masks[u]):
            if u < v:
                edge_bit[(u, v)] = n + len(edge_bit)
    return edge_bit


def _with_edges(subset: int, masks: Sequence[int], edge_bit: Dict[Tuple[int, int], int]) -> int:
    mask = subset
    for u in bit_positions(subset):
        for v in bit_positions(masks[u] & subset):
            if u < v:
                mask |= 1 << edge_bit[(u, v)]
    return mask


def _solve(graph: SimpleGraph, masks: Sequence[int], subsets: Sequence[int]) -> GcatResult:
    n = graph.order
    edge_bit = _edge_bits(masks)
    universe = (1 << (n + len(edge_bit))) - 1
    chosen = SetCoverSolver([_with_edges(s, masks, edge_bit) for s in subsets], universe).run()
    vertex_part = (1 << n) - 1
    members: List[List[int]] = [list(graph.vertices_of(c & vertex_part)) for c in chosen]
    return GcatResult(value=len(members), cover=Cover.from_vertex_sets(members))


def gcat_exact(
    graph: SimpleGraph,
    limit: Optional[int] = None,
    cache: Optional[ContractibilityCache] = None,
) -> GcatResult:
    """Exact gcat(G) with an optimal cover of induced members.

    Raises:
        SizeLimitError: more vertices than ``limit``
    """
    limit = get_settings().gcat_limit if limit is None else limit
    n = graph.order
    if n > limit:
        raise SizeLimitError("exact gcat", n, limit, "use the category bracket instead")
    if n == 0:
        return GcatResult(value=0, cover=Cover(members=[]))
    masks = graph.masks()
    candidates = [s for s in range(1, 1 << n) if masks_contractible(induced_masks(masks, s), cache)]
    result = _solve(graph, masks, candidates)
    logger.debug("gcat of %d vertices: %d from %d contractible subsets", n, result.value, len(candidates))
    return result


def _grow(masks: Sequence[int], start: int, order: Sequence[int], cache: Optional[ContractibilityCache]) -> int:
    """Add neighbours in ``order`` while the induced subgraph stays contractible."""
    current = start
    grown = True
    while grown:
        grown = False
        for v in order:
            bit = 1 << v
            if current & bit or not masks[v] & current:
                continue
            if masks_contractible(induced_masks(masks, current | bit), cache):
                current |= bit
                grown = True
    return current


def search_cover(
    graph: SimpleGraph,
    restarts: Optional[int] = None,
    seed: Optional[int] = None,
    cache: Optional[ContractibilityCache] = None,
) -> GcatResult:
    """Upper bound on gcat(G) for graphs too large for ``gcat_exact``.

    Every closed star is a cone, so it is contractible; each one is grown
    ``restarts`` times in random vertex orders into a maximal contractible
    induced subgraph, and an optimal cover is chosen among those.
    """
    settings = get_settings()
    restarts = settings.cover_search_restarts if restarts is None else restarts
    seed = settings.seed if seed is None else seed
    n = graph.order
    if n == 0:
        return GcatResult(value=0, cover=Cover(members=[]))
    masks = graph.masks()
    rng = random.Random(seed)
    grown: Set[int] = set()
    for v in range(n):
        star = masks[v] | (1 << v)
        for _ in range(max(1, restarts)):
            order = list(range(n))
            rng.shuffle(order)
            grown.add(_grow(masks, star, order, cache))
    # Sorted so the solver sees the same candidate order for every run
    result = _solve(graph, masks, sorted(grown))
    logger.info("Cover search on %d vertices: %d members from %d grown subgraphs", n, result.value, len(grown))
    return result
