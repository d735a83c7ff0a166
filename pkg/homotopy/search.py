"""Reduction, bounded homotopy search and the contractible-in-G checker.

Searches never claim more than they prove: ``Distinct`` comes from a
homotopy invariant or an exhausted finite search, ``Equivalent`` always
carries a certificate that replays, everything else is ``Unknown``.
"""

import logging
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Deque, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from pydantic import BaseModel

from core.canonical import canonical_form, canonical_order
from core.cliques import euler_characteristic
from core.config import SearchBudget, get_settings
from core.errors import GraphInputError, UnknownVertexError
from core.graph import SimpleGraph, bit_positions, induced_masks
from homotopy.contractibility import (
    ContractibilityCache,
    contract_masks,
    is_contractible,
    masks_contractible,
)
from homotopy.moves import (
    AddEdge,
    AddVertex,
    HomotopyCertificate,
    Move,
    RemoveEdge,
    RemoveVertex,
    apply_unchecked,
    inverse_move,
    relabel_move,
)

logger = logging.getLogger(__name__)


class VerdictStatus(str, Enum):
    EQUIVALENT = "equivalent"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


class InvariantWitness(BaseModel):
    """Which invariant separates two graphs, and its two values."""

    invariant: str
    left: Any
    right: Any


class Verdict(BaseModel):
    status: VerdictStatus
    certificate: Optional[HomotopyCertificate] = None
    witness: Optional[InvariantWitness] = None
    states_explored: int = 0
    reason: str = ""

    @property
    def equivalent(self) -> bool:
        return self.status == VerdictStatus.EQUIVALENT

    @property
    def distinct(self) -> bool:
        return self.status == VerdictStatus.DISTINCT


def _budget(budget: Optional[SearchBudget]) -> SearchBudget:
    return budget if budget is not None else get_settings().budget


# ============================================================================
# Reduction
# ============================================================================

@dataclass(frozen=True)
class Reduction:
    graph: SimpleGraph
    certificate: HomotopyCertificate


def reduction_moves(graph: SimpleGraph, cache: Optional[ContractibilityCache] = None) -> Tuple[SimpleGraph, List[Move]]:
    current = graph
    moves: List[Move] = []
    while current.order > 1:
        relabeling = canonical_form(current).relabeling
        masks = current.masks()
        candidates = [
            v for i, v in enumerate(current.vertices) if masks_contractible(induced_masks(masks, masks[i]), cache)
        ]
        if not candidates:
            break
        chosen = min(candidates, key=lambda v: relabeling[v])
        moves.append(RemoveVertex(vertex=chosen))
        current = current.without([chosen])
    return current, moves


def reduce(graph: SimpleGraph, cache: Optional[ContractibilityCache] = None) -> Reduction:
    """Remove the removable vertex with the smallest canonical label until none is left.

    The result is homotopic to ``graph``; the certificate records the removals.
    """
    reduced, moves = reduction_moves(graph, cache)
    logger.debug("Reduced %d -> %d vertices", graph.order, reduced.order)
    return Reduction(graph=reduced, certificate=HomotopyCertificate.build(graph, moves))


# ============================================================================
# Invariants
# ============================================================================

def trimmed_betti(graph: SimpleGraph) -> Tuple[int, ...]:
    from cohomology.betti import betti

    values = list(betti(graph))
    while len(values) > 1 and values[-1] == 0:
        values.pop()
    return tuple(values)


def separating_invariant(first: SimpleGraph, second: SimpleGraph) -> Optional[InvariantWitness]:
    """The first of chi, Betti vector, cup length that tells the graphs apart."""
    from cohomology.cup_length import cup_length

    chi = (euler_characteristic(first), euler_characteristic(second))
    if chi[0] != chi[1]:
        return InvariantWitness(invariant="euler_characteristic", left=chi[0], right=chi[1])
    betti = (trimmed_betti(first), trimmed_betti(second))
    if betti[0] != betti[1]:
        return InvariantWitness(invariant="betti", left=list(betti[0]), right=list(betti[1]))
    cups = (cup_length(first), cup_length(second))
    if cups[0].upper < cups[1].lower or cups[1].upper < cups[0].lower:
        return InvariantWitness(
            invariant="cup_length",
            left=[cups[0].lower, cups[0].upper],
            right=[cups[1].lower, cups[1].upper],
        )
    return None


# ============================================================================
# Bounded bidirectional search
# ============================================================================

# parent certificate, move in the parent's canonical labels, child relabeling
Parent = Optional[Tuple[bytes, Move, Dict[int, int]]]


def successors(
    state: SimpleGraph, cap: int, cache: Optional[ContractibilityCache]
) -> Iterator[Tuple[Move, SimpleGraph]]:
    """All single moves out of a canonical state (vertices 0..k-1)."""
    masks = state.masks()
    k = state.order
    if k > 1:
        for x in range(k):
            if masks_contractible(induced_masks(masks, masks[x]), cache):
                yield RemoveVertex(vertex=x), state.without([x])
    for u, v in combinations(range(k), 2):
        common = masks[u] & masks[v]
        if not common or not masks_contractible(induced_masks(masks, common), cache):
            continue
        if state.has_edge(u, v):
            yield RemoveEdge(u=u, v=v), state.without_edge(u, v)
        else:
            yield AddEdge(u=u, v=v), state.with_edge(u, v)
    if k < cap:
        for subset in range(1, 1 << k):
            if masks_contractible(induced_masks(masks, subset), cache):
                over = bit_positions(subset)
                yield AddVertex(vertex=k, over=over), state.with_vertex(k, over)


class _Side:
    """One direction of the bidirectional search."""

    def __init__(self, root: SimpleGraph):
        form = canonical_form(root)
        self.root = root
        self.root_relabeling = form.relabeling
        self.parents: Dict[bytes, Parent] = {form.certificate: None}
        self.frontier: List[Tuple[bytes, SimpleGraph]] = [(form.certificate, root.relabel(form.relabeling))]

    def path(self, certificate: bytes) -> List[Tuple[Move, Dict[int, int]]]:
        steps = []
        entry = self.parents[certificate]
        while entry is not None:
            parent, move, relabeling = entry
            steps.append((move, relabeling))
            entry = self.parents[parent]
        steps.reverse()
        return steps

    def realize(self, certificate: bytes, fresh: Iterator[int]) -> Tuple[List[Move], List[SimpleGraph], Dict[int, int]]:
        """Replay the path to ``certificate`` on the real root graph.

        Returns the real moves, the real graphs before each move plus the
        final one, and the map from canonical labels of the end state to
        real labels.
        """
        real = self.root
        to_real = {c: v for v, c in self.root_relabeling.items()}
        moves: List[Move] = []
        graphs = [real]
        for move, relabeling in self.path(certificate):
            if isinstance(move, AddVertex):
                to_real = dict(to_real)
                to_real[move.vertex] = next(fresh)
            real_move = relabel_move(move, to_real)
            real = apply_unchecked(real, real_move)
            moves.append(real_move)
            graphs.append(real)
            to_real = {relabeling[c]: to_real[c] for c in relabeling}
        return moves, graphs, to_real


def _fresh_labels(start: int) -> Iterator[int]:
    label = start
    while True:
        yield label
        label += 1


def homotopic_bounded(
    first: SimpleGraph,
    second: SimpleGraph,
    budget: Optional[SearchBudget] = None,
    cache: Optional[ContractibilityCache] = None,
    check_invariants: bool = True,
) -> Verdict:
    """Decide homotopy between two graphs within a search budget.

    Args:
        first: Start graph G
        second: Target graph H
        budget: Extra vertices allowed above max(|G|, |H|) and a state cap
        cache: Contractibility cache for side conditions
        check_invariants: Compare chi, Betti and cup length before searching

    Returns:
        Verdict: ``Equivalent`` with a certificate from G to a copy of H,
        ``Distinct`` with the separating invariant, or ``Unknown``
    """
    budget = _budget(budget)
    if check_invariants:
        witness = separating_invariant(first, second)
        if witness is not None:
            return Verdict(status=VerdictStatus.DISTINCT, witness=witness)

    reduced_first, first_moves = reduction_moves(first, cache)
    reduced_second, second_moves = reduction_moves(second, cache)
    cap = max(first.order, second.order) + budget.max_extra_vertices

    sides = (_Side(reduced_first), _Side(reduced_second))
    explored = 2
    meeting: Optional[bytes] = next((c for c in sides[0].parents if c in sides[1].parents), None)
    while meeting is None:
        active = [s for s in sides if s.frontier]
        if not active:
            logger.debug("Search space below %d vertices exhausted after %d states", cap, explored)
            return Verdict(
                status=VerdictStatus.UNKNOWN,
                states_explored=explored,
                reason=f"no link found among graphs with at most {cap} vertices",
            )
        side = min(active, key=lambda s: len(s.frontier))
        other = sides[1] if side is sides[0] else sides[0]
        next_frontier: List[Tuple[bytes, SimpleGraph]] = []
        for certificate, state in side.frontier:
            for move, child in successors(state, cap, cache):
                form = canonical_form(child)
                if form.certificate in side.parents:
                    continue
                side.parents[form.certificate] = (certificate, move, form.relabeling)
                explored += 1
                if form.certificate in other.parents:
                    meeting = form.certificate
                    break
                next_frontier.append((form.certificate, child.relabel(form.relabeling)))
                if explored >= budget.max_states:
                    logger.debug("State budget %d exhausted", budget.max_states)
                    return Verdict(
                        status=VerdictStatus.UNKNOWN,
                        states_explored=explored,
                        reason=f"state budget {budget.max_states} exhausted",
                    )
            if meeting is not None:
                break
        side.frontier = next_frontier

    used = set(first.vertices) | set(second.vertices)
    fresh = _fresh_labels(max(used, default=-1) + 1)
    moves = list(first_moves)
    forward, _, first_labels = sides[0].realize(meeting, fresh)
    moves.extend(forward)
    back, back_graphs, second_labels = sides[1].realize(meeting, fresh)
    # Graph at the meeting point on the first side, relabeled into second-side terms
    rho = {second_labels[c]: first_labels[c] for c in first_labels}
    back_moves = list(back)
    for before, move in zip(reversed(back_graphs[:-1]), reversed(back_moves)):
        undo = inverse_move(before, move)
        if isinstance(undo, AddVertex):
            rho[undo.vertex] = next(fresh)
        moves.append(relabel_move(undo, rho))
    # Undo the reduction of the second graph
    replay_graphs = [second]
    for move in second_moves:
        replay_graphs.append(apply_unchecked(replay_graphs[-1], move))
    for before, move in zip(reversed(replay_graphs[:-1]), reversed(second_moves)):
        undo = inverse_move(before, move)
        if isinstance(undo, AddVertex):
            rho[undo.vertex] = next(fresh)
        moves.append(relabel_move(undo, rho))
    logger.debug("Linked graphs with %d moves after %d states", len(moves), explored)
    return Verdict(
        status=VerdictStatus.EQUIVALENT,
        certificate=HomotopyCertificate.build(first, moves),
        states_explored=explored,
    )


# ============================================================================
# Contractible in G
# ============================================================================

def _member_graph(graph: SimpleGraph, vertices: FrozenSet[int], edges: Optional[Iterable[Sequence[int]]]) -> SimpleGraph:
    missing = vertices.difference(graph.vertices)
    if missing:
        raise UnknownVertexError(missing)
    if edges is None:
        return graph.induced_subgraph(vertices)
    edge_list = [tuple(e) for e in edges]
    for u, v in edge_list:
        if u not in vertices or v not in vertices or not graph.has_edge(u, v):
            raise GraphInputError(f"member edge {u}-{v} is not an edge of the graph inside the member")
    return SimpleGraph.from_edges(edge_list, vertices)


def contractible_in(
    member: Iterable[int],
    graph: SimpleGraph,
    budget: Optional[SearchBudget] = None,
    cache: Optional[ContractibilityCache] = None,
    edges: Optional[Iterable[Sequence[int]]] = None,
) -> Verdict:
    """Decide whether a subgraph is contractible in ``graph``.

    Either the member is contractible in itself, or some sequence of vertex
    removals of ``graph`` shrinks its image (restriction under removal) to a
    single vertex. Only contractions of ``graph`` are searched, never
    expansions.

    Args:
        member: Vertex set of the subgraph
        graph: Ambient graph
        budget: State cap for the removal search
        cache: Contractibility cache
        edges: Explicit member edges; induced edges when omitted

    Raises:
        UnknownVertexError: the member is not inside ``graph``
    """
    budget = _budget(budget)
    vertices = frozenset(member)
    subgraph = _member_graph(graph, vertices, edges)
    itself = is_contractible(subgraph, cache)
    if itself:
        removals = [RemoveVertex(vertex=v) for v in itself.witness[:-1]]
        return Verdict(
            status=VerdictStatus.EQUIVALENT,
            certificate=HomotopyCertificate.build(subgraph, removals, marked=vertices),
            reason="contractible in itself",
        )
    if not vertices:
        return Verdict(status=VerdictStatus.DISTINCT, reason="empty member",
                       witness=InvariantWitness(invariant="empty", left=0, right=1))

    ambient = graph.vertices
    seen: Set[Tuple[bytes, FrozenSet[int]]] = set()
    explored = 0
    # Depth-first over removal sequences: (alive mask, image mask, moves so far)
    stack: Deque[Tuple[int, int, Tuple[int, ...]]] = deque()
    full_masks = graph.masks()
    stack.append(((1 << len(ambient)) - 1, graph.mask_of(vertices), ()))
    while stack:
        alive, image, removed = stack.pop()
        if bin(image).count("1") == 1:
            moves = [RemoveVertex(vertex=ambient[p]) for p in removed]
            return Verdict(
                status=VerdictStatus.EQUIVALENT,
                certificate=HomotopyCertificate.build(graph, moves, marked=vertices),
                states_explored=explored,
                reason="image shrinks to a vertex",
            )
        if image == 0:
            continue
        masks = induced_masks(full_masks, alive)
        order, certificate = canonical_order(masks)
        positions = bit_positions(alive)
        local = {p: i for i, p in enumerate(positions)}
        inverse = {p: i for i, p in enumerate(order)}
        key = (certificate, frozenset(inverse[local[p]] for p in bit_positions(image)))
        if key in seen:
            continue
        seen.add(key)
        explored += 1
        if explored > budget.max_states:
            return Verdict(
                status=VerdictStatus.UNKNOWN,
                states_explored=explored,
                reason=f"state budget {budget.max_states} exhausted",
            )
        for i in reversed(range(len(positions))):
            if contract_masks(induced_masks(masks, masks[i]), cache) is None:
                continue
            p = positions[i]
            stack.append((alive & ~(1 << p), image & ~(1 << p), removed + (p,)))
    logger.debug("Removal search exhausted after %d states", explored)
    return Verdict(
        status=VerdictStatus.DISTINCT,
        states_explored=explored,
        reason="every removal sequence of the ambient graph exhausted",
        witness=InvariantWitness(invariant="exhaustive-removal-search", left=sorted(vertices), right=explored),
    )
