"""Clique (Whitney) complexes and the Euler characteristic.

Dimensions are 0-based: ``strata[k]`` holds the K_{k+1} subgraphs, so
``fvector[0]`` is the vertex count.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from core.graph import SimpleGraph

Simplex = Tuple[int, ...]


@dataclass(frozen=True)
class CliqueComplex:
    """All complete subgraphs of a graph, graded by dimension."""

    strata: Tuple[Tuple[Simplex, ...], ...]

    @property
    def fvector(self) -> Tuple[int, ...]:
        return tuple(len(s) for s in self.strata)

    @property
    def dimension(self) -> int:
        return len(self.strata) - 1

    def simplices(self, k: int) -> Tuple[Simplex, ...]:
        if 0 <= k < len(self.strata):
            return self.strata[k]
        return ()

    @cached_property
    def _positions(self) -> Tuple[Dict[Simplex, int], ...]:
        return tuple({s: i for i, s in enumerate(stratum)} for stratum in self.strata)

    def position(self, simplex: Simplex) -> Optional[int]:
        k = len(simplex) - 1
        if 0 <= k < len(self.strata):
            return self._positions[k].get(simplex)
        return None

    def __contains__(self, simplex: object) -> bool:
        return isinstance(simplex, tuple) and self.position(simplex) is not None

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * v for k, v in enumerate(self.fvector))


def cliques(graph: SimpleGraph, max_dim: Optional[int] = None) -> CliqueComplex:
    """Enumerate every complete subgraph exactly once.

    Each clique is only ever extended by higher-numbered common neighbours,
    so no deduplication is needed and strata come out sorted.

    Args:
        graph: The host graph
        max_dim: Largest dimension to enumerate (``None`` for all)

    Returns:
        CliqueComplex: strata sorted lexicographically
    """
    strata: List[List[Simplex]] = []

    def extend(clique: Simplex, candidates: Sequence[int]) -> None:
        k = len(clique) - 1
        while len(strata) <= k:
            strata.append([])
        strata[k].append(clique)
        if max_dim is not None and k >= max_dim:
            return
        for i, v in enumerate(candidates):
            nbrs = graph.neighbors(v)
            extend(clique + (v,), [w for w in candidates[i + 1:] if w in nbrs])

    for v in graph.vertices:
        extend((v,), sorted(w for w in graph.neighbors(v) if w > v))
    return CliqueComplex(tuple(tuple(sorted(s)) for s in strata))


def fvector(graph: SimpleGraph) -> Tuple[int, ...]:
    return cliques(graph).fvector


def alternating_clique_count(masks: Sequence[int], within: Optional[int] = None) -> int:
    """Euler characteristic of the subgraph on ``within`` computed from masks.

    Counts cliques with alternating signs without materialising them.
    """
    total = 0
    stack = [((1 << len(masks)) - 1 if within is None else within, 1)]
    while stack:
        candidates, sign = stack.pop()
        while candidates:
            low = candidates & -candidates
            candidates ^= low
            total += sign
            rest = candidates & masks[low.bit_length() - 1]
            if rest:
                stack.append((rest, -sign))
    return total


def euler_characteristic(graph: SimpleGraph) -> int:
    """chi(G) = sum_k (-1)^k v_k over the clique complex."""
    return alternating_clique_count(graph.masks())
