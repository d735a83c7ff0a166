"""Contractibility by backtracking over removable vertices.

A graph is contractible when it collapses to one vertex by repeatedly
removing a vertex whose unit sphere is contractible. Failure of one removal
order does not refute contractibility, so every removable vertex is tried.
Results are memoized by canonical certificate.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Sequence, Tuple

from core.canonical import canonical_order
from core.cliques import alternating_clique_count
from core.graph import Masks, SimpleGraph, bit_positions, induced_masks, is_connected_mask

logger = logging.getLogger(__name__)

# Witnesses are removal orders in canonical positions; None marks a refutation.
Witness = Optional[Tuple[int, ...]]


class ContractibilityCache:
    """Certificate -> witness map shared by every search in the process.

    Reads and writes take a lock; an entry is written once and never changed.
    """

    def __init__(self):
        self._entries: Dict[bytes, Witness] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        self.greedy_misses = 0

    def lookup(self, certificate: bytes) -> Tuple[bool, Witness]:
        with self._lock:
            if certificate in self._entries:
                self.hits += 1
                return True, self._entries[certificate]
            self.misses += 1
            return False, None

    def store(self, certificate: bytes, witness: Witness) -> None:
        with self._lock:
            self._entries.setdefault(certificate, witness)

    def record_greedy_miss(self) -> None:
        with self._lock:
            self.greedy_misses += 1

    def clear(self) -> None:
        with self._lock:
            self._entries.clear()
            self.hits = self.misses = self.greedy_misses = 0

    def __len__(self) -> int:
        return len(self._entries)

    # Worker processes receive a copy with a fresh lock
    def __getstate__(self) -> Dict:
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state: Dict) -> None:
        self.__dict__.update(state)
        self._lock = threading.Lock()


_DEFAULT_CACHE = ContractibilityCache()


def default_cache() -> ContractibilityCache:
    return _DEFAULT_CACHE


@dataclass(frozen=True)
class ContractibilityResult:
    """Outcome of a contractibility test.

    Attributes:
        contractible: whether the graph collapses to a point
        witness: removal order ending with the surviving vertex, when contractible
    """

    contractible: bool
    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.contractible


def _relabel_masks(masks: Sequence[int], order: Sequence[int]) -> Masks:
    """Masks with position i holding vertex ``order[i]`` of the input."""
    inverse = {p: i for i, p in enumerate(order)}
    result = []
    for p in order:
        m = 0
        for q in bit_positions(masks[p]):
            m |= 1 << inverse[q]
        result.append(m)
    return tuple(result)


def _search(canon: Masks, cache: ContractibilityCache) -> Witness:
    n = len(canon)
    full = (1 << n) - 1
    if not is_connected_mask(canon, full):
        return None
    if alternating_clique_count(canon) != 1:
        return None
    failed_removable = False
    for x in range(n):
        if contract_masks(induced_masks(canon, canon[x]), cache) is None:
            continue
        rest_mask = full & ~(1 << x)
        rest = contract_masks(induced_masks(canon, rest_mask), cache)
        if rest is None:
            failed_removable = True
            continue
        if failed_removable:
            cache.record_greedy_miss()
            logger.debug("Greedy removal failed on a %d-vertex graph, later choice succeeded", n)
        positions = bit_positions(rest_mask)
        return (x,) + tuple(positions[p] for p in rest)
    return None


def contract_masks(masks: Masks, cache: Optional[ContractibilityCache] = None) -> Witness:
    """Removal order (input positions) collapsing ``masks`` to a point, or None."""
    n = len(masks)
    if n == 0:
        return None
    if n == 1:
        return (0,)
    if cache is None:
        cache = _DEFAULT_CACHE
    order, certificate = canonical_order(masks)
    found, witness = cache.lookup(certificate)
    if not found:
        witness = _search(_relabel_masks(masks, order), cache)
        cache.store(certificate, witness)
    if witness is None:
        return None
    return tuple(order[p] for p in witness)


def masks_contractible(masks: Masks, cache: Optional[ContractibilityCache] = None) -> bool:
    return contract_masks(masks, cache) is not None


def is_contractible(graph: SimpleGraph, cache: Optional[ContractibilityCache] = None) -> ContractibilityResult:
    """Decide contractibility; the witness is a full removal order.

    The empty graph is not contractible, a single vertex is.
    """
    witness = contract_masks(graph.masks(), cache)
    if witness is None:
        return ContractibilityResult(False)
    vertices = graph.vertices
    return ContractibilityResult(True, tuple(vertices[p] for p in witness))


def removable_vertices(graph: SimpleGraph, cache: Optional[ContractibilityCache] = None) -> FrozenSet[int]:
    """Vertices whose unit sphere is contractible."""
    masks = graph.masks()
    return frozenset(
        v for i, v in enumerate(graph.vertices) if masks_contractible(induced_masks(masks, masks[i]), cache)
    )
