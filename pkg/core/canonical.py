"""Exact canonical labeling by individualization-refinement.

The search tree is built from label-invariant choices only (refine to an
equitable ordered partition, then individualize each vertex of the first
non-singleton cell), and the certificate is the minimum adjacency string over
all leaves. Certificates are therefore equal exactly for isomorphic graphs.
No hashing is involved.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from core.graph import Masks, SimpleGraph

Partition = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical relabeling and isomorphism certificate of a graph.

    Attributes:
        relabeling: original vertex -> canonical position (0..n-1)
        certificate: byte string equal for isomorphic graphs only
    """

    relabeling: Dict[int, int]
    certificate: bytes

    @property
    def inverse(self) -> Dict[int, int]:
        return {c: v for v, c in self.relabeling.items()}


def _refine(masks: Sequence[int], partition: Partition) -> Partition:
    """Split cells by neighbour counts into each cell until stable."""
    cells = [tuple(c) for c in partition]
    changed = True
    while changed:
        changed = False
        cell_masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            cell_masks.append(m)
        refined: List[Tuple[int, ...]] = []
        for cell in cells:
            if len(cell) == 1:
                refined.append(cell)
                continue
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                signature = tuple(bin(masks[v] & cm).count("1") for cm in cell_masks)
                groups.setdefault(signature, []).append(v)
            if len(groups) > 1:
                changed = True
            for signature in sorted(groups):
                refined.append(tuple(groups[signature]))
        cells = refined
    return tuple(cells)


def _is_uniform(masks: Sequence[int], partition: Partition) -> bool:
    """True when every leaf below this node yields the same adjacency string.

    That holds if each cell is a clique or independent set and each pair of
    cells is completely joined or not joined at all.
    """
    cell_masks = []
    for cell in partition:
        m = 0
        for v in cell:
            m |= 1 << v
        cell_masks.append(m)
    for i, cell in enumerate(partition):
        if len(cell) == 1:
            continue
        for j, other in enumerate(cell_masks):
            size = len(partition[j]) - (1 if i == j else 0)
            first = bin(masks[cell[0]] & other).count("1")
            if first not in (0, size):
                return False
            for v in cell[1:]:
                if bin(masks[v] & other).count("1") != first:
                    return False
    return True


def _leaf_code(masks: Sequence[int], order: Sequence[int]) -> int:
    code = 0
    n = len(order)
    for i in range(n):
        row = masks[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | ((row >> order[j]) & 1)
    return code


@lru_cache(maxsize=1 << 18)
def canonical_order(masks: Masks) -> Tuple[Tuple[int, ...], bytes]:
    """Canonical vertex order (positions) and certificate for a mask tuple."""
    n = len(masks)
    if n == 0:
        return (), b"\x00\x00"
    degrees: Dict[int, List[int]] = {}
    for v in range(n):
        degrees.setdefault(bin(masks[v]).count("1"), []).append(v)
    start = _refine(masks, tuple(tuple(degrees[d]) for d in sorted(degrees)))

    best_code = -1
    best_order: Tuple[int, ...] = ()
    stack = [start]
    while stack:
        partition = stack.pop()
        target = next((i for i, c in enumerate(partition) if len(c) > 1), None)
        if target is None or _is_uniform(masks, partition):
            order = tuple(v for cell in partition for v in cell)
            code = _leaf_code(masks, order)
            if best_code < 0 or code < best_code:
                best_code, best_order = code, order
            continue
        cell = partition[target]
        for v in reversed(cell):
            rest = tuple(u for u in cell if u != v)
            child = partition[:target] + ((v,), rest) + partition[target + 1:]
            stack.append(_refine(masks, child))

    width = (n * (n - 1) // 2 + 7) // 8
    certificate = n.to_bytes(2, "big") + best_code.to_bytes(width, "big")
    return best_order, certificate


def canonical_form(graph: SimpleGraph) -> CanonicalForm:
    order, certificate = canonical_order(graph.masks())
    vertices = graph.vertices
    return CanonicalForm(
        relabeling={vertices[p]: i for i, p in enumerate(order)},
        certificate=certificate,
    )


def certificate(graph: SimpleGraph) -> bytes:
    return canonical_order(graph.masks())[1]


def canonical_graph(graph: SimpleGraph) -> SimpleGraph:
    """The graph relabeled to its canonical positions 0..n-1."""
    return graph.relabel(canonical_form(graph).relabeling)


def are_isomorphic(first: SimpleGraph, second: SimpleGraph) -> bool:
    return certificate(first) == certificate(second)
