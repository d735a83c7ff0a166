"""Certified brackets for tcat, gcat, cat, Cat and cri.

Lower bounds come from homotopy invariants (cup length, components,
non-contractibility). Upper bounds come from objects that can be replayed:
orderings with few critical points, verified covers, and homotopic
representatives reached by reduction, certificates or a short search.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from category.covers import Cover, CoverMode, verify_cover
from category.gcat import gcat_exact, search_cover
from cohomology.cup_length import cup_length
from core import brackets
from core.brackets import CategoryBracket
from core.canonical import are_isomorphic, canonical_graph, certificate
from core.cliques import euler_characteristic
from core.config import SearchBudget, get_settings
from core.errors import CertificateError, CoverageError
from core.graph import SimpleGraph
from homotopy.contractibility import ContractibilityCache, is_contractible
from homotopy.moves import HomotopyCertificate, verify_certificate
from homotopy.search import successors, reduce, trimmed_betti
from morse.crit import crit
from tools.set_cover import SetCoverSolver

logger = logging.getLogger(__name__)

# Neighbourhood states above this order are too costly to bound by crit
NEIGHBOURHOOD_ORDER_LIMIT = 12


@dataclass
class _Upper:
    value: int
    method: str
    certificates: Dict[str, Any] = field(default_factory=dict)

    def improve(self, value: int, method: str, **certificates: Any) -> None:
        if value < self.value:
            self.value, self.method, self.certificates = value, method, certificates


def _by_components(
    graph: SimpleGraph, evaluate: Callable[[SimpleGraph], CategoryBracket]
) -> Optional[CategoryBracket]:
    parts = graph.components()
    if len(parts) < 2:
        return None
    total = None
    for part in parts:
        bracket = evaluate(graph.induced_subgraph(part))
        total = bracket if total is None else total + bracket
    if total.lower < len(parts):
        total = total.tightened(lower=len(parts), lower_method=brackets.COMPONENTS)
    return total


def _lower(graph: SimpleGraph, homotopy_invariant: bool) -> Tuple[int, str, Dict[str, Any]]:
    """Cup-length lower bound, raised to 2 for graphs that cannot be contractible.

    With ``homotopy_invariant`` the raise needs invariants differing from a
    point, so it holds for every homotopic graph too.
    """
    cup = cup_length(graph)
    lower, method, certificates = cup.lower, cup.lower_method, dict(cup.certificates)
    if lower >= 2:
        return lower, method, certificates
    if homotopy_invariant:
        if euler_characteristic(graph) != 1 or trimmed_betti(graph) != (1,):
            return 2, brackets.HOMOTOPY_INVARIANT, certificates
    elif not is_contractible(graph):
        return 2, brackets.CONTRACTIBILITY, certificates
    return lower, method, certificates


def _tcat_upper(
    graph: SimpleGraph,
    covers: Sequence[Cover] = (),
    budget: Optional[SearchBudget] = None,
    cache: Optional[ContractibilityCache] = None,
    dp_limit: Optional[int] = None,
    gcat_limit: Optional[int] = None,
    with_gcat: bool = True,
) -> _Upper:
    settings = get_settings()
    gcat_limit = settings.gcat_limit if gcat_limit is None else gcat_limit
    contraction = is_contractible(graph, cache)
    if contraction:
        return _Upper(1, brackets.CONTRACTIBILITY, {"contraction": list(contraction.witness)})
    best = crit(graph, dp_limit, cache)
    upper = _Upper(best.value, best.method, {"ordering": list(best.witness.sequence)})
    if with_gcat and graph.order <= gcat_limit:
        result = gcat_exact(graph, gcat_limit, cache)
        upper.improve(result.value, brackets.GCAT, cover=result.cover.model_dump(exclude_none=True))
    for cover in covers:
        try:
            report = verify_cover(graph, cover, CoverMode.IN_G, budget, cache=cache)
        except CoverageError as e:
            logger.warning("Skipping cover of %d members: %s", len(cover), e)
            continue
        if report.verified:
            upper.improve(report.bound, brackets.COVER, cover=cover.model_dump(exclude_none=True))
    return upper


def tcat_bracket(
    graph: SimpleGraph,
    budget: Optional[SearchBudget] = None,
    covers: Sequence[Cover] = (),
    cache: Optional[ContractibilityCache] = None,
    dp_limit: Optional[int] = None,
    gcat_limit: Optional[int] = None,
) -> CategoryBracket:
    """cup(G) <= tcat(G) <= min(crit, gcat, verified covers).

    tcat(G) = 1 exactly when G is contractible, so non-contractible graphs
    get a lower bound of at least 2.
    """
    if graph.order == 0:
        return CategoryBracket.point(0, brackets.TRIVIAL)
    split = _by_components(graph, lambda part: tcat_bracket(part, budget, (), cache, dp_limit, gcat_limit))
    if split is not None:
        upper = _Upper(split.upper, split.upper_method)
        for cover in covers:
            try:
                report = verify_cover(graph, cover, CoverMode.IN_G, budget, cache=cache)
            except CoverageError:
                continue
            if report.verified:
                upper.improve(report.bound, brackets.COVER, cover=cover.model_dump(exclude_none=True))
        return split.tightened(upper=upper.value, upper_method=upper.method, **upper.certificates)
    upper = _tcat_upper(graph, covers, budget, cache, dp_limit, gcat_limit)
    if upper.value == 1:
        return CategoryBracket.point(1, brackets.CONTRACTIBILITY, **upper.certificates)
    lower, lower_method, certificates = _lower(graph, homotopy_invariant=False)
    bracket = CategoryBracket(
        lower=lower,
        upper=upper.value,
        lower_method=lower_method,
        upper_method=upper.method,
        certificates={**certificates, **upper.certificates},
    )
    if not bracket.exact:
        logger.warning("tcat bracket not closed: %s", bracket)
    return bracket


def _star_cover(graph: SimpleGraph) -> Cover:
    """Smallest cover by closed vertex stars, each a cone and so contractible."""
    masks = graph.masks()
    n = graph.order
    isolated = [i for i in range(n) if not masks[i]]
    edge_index = {}
    for u in range(n):
        for v in graph.vertices_of(masks[u]):
            w = graph.index[v]
            if u < w:
                edge_index[(u, w)] = len(edge_index)
    stars = []
    for u in range(n):
        bits = 0
        for (a, b), i in edge_index.items():
            if u in (a, b):
                bits |= 1 << i
        stars.append(bits)
    chosen = SetCoverSolver(stars, (1 << len(edge_index)) - 1).run() or []
    members = []
    for bits in chosen:
        u = stars.index(bits)
        members.append([graph.vertices[u], *graph.vertices_of(masks[u])])
    members.extend([graph.vertices[i]] for i in isolated)
    return Cover.from_vertex_sets(members)


def gcat_bracket(
    graph: SimpleGraph,
    covers: Sequence[Cover] = (),
    cache: Optional[ContractibilityCache] = None,
    gcat_limit: Optional[int] = None,
) -> CategoryBracket:
    """Exact gcat for small graphs, otherwise tcat-lower to best in-itself cover.

    Above the limit the candidates are the star cover, a searched cover of
    maximal contractible induced subgraphs and the supplied covers, which may
    have non-induced members.
    """
    gcat_limit = get_settings().gcat_limit if gcat_limit is None else gcat_limit
    if graph.order <= gcat_limit:
        result = gcat_exact(graph, gcat_limit, cache)
        return CategoryBracket(
            lower=result.value,
            upper=result.value,
            lower_method=brackets.EXHAUSTIVE,
            upper_method=brackets.GCAT,
            certificates={"cover": result.cover.model_dump(exclude_none=True)},
        )
    stars = _star_cover(graph)
    upper = _Upper(len(stars), brackets.STAR_COVER, {"cover": stars.model_dump(exclude_none=True)})
    searched = search_cover(graph, cache=cache)
    upper.improve(searched.value, brackets.COVER_SEARCH, cover=searched.cover.model_dump(exclude_none=True))
    for cover in covers:
        try:
            report = verify_cover(graph, cover, CoverMode.IN_ITSELF, cache=cache)
        except CoverageError:
            continue
        if report.verified:
            upper.improve(report.bound, brackets.COVER, cover=cover.model_dump(exclude_none=True))
    lower = tcat_bracket(graph, cache=cache)
    return CategoryBracket(
        lower=lower.lower,
        upper=max(upper.value, lower.lower),
        lower_method=lower.lower_method,
        upper_method=upper.method,
        certificates=upper.certificates,
    )


# ============================================================================
# Homotopic representatives
# ============================================================================

@dataclass(frozen=True)
class Representative:
    source: str
    graph: SimpleGraph


def representatives(
    graph: SimpleGraph,
    certificates: Iterable[HomotopyCertificate] = (),
    search_states: Optional[int] = None,
    budget: Optional[SearchBudget] = None,
    cache: Optional[ContractibilityCache] = None,
) -> List[Representative]:
    """Graphs homotopic to ``graph``: itself, its reduction, certificate end
    graphs, then a breadth-first neighbourhood of the reduction.

    Raises:
        CertificateError: a certificate does not start at ``graph`` or fails replay
    """
    settings = get_settings()
    search_states = settings.category_search_states if search_states is None else search_states
    budget = budget if budget is not None else settings.budget
    reduced = reduce(graph, cache).graph
    found = [Representative("input", graph), Representative("reduced", reduced)]
    for i, cert in enumerate(certificates):
        if not are_isomorphic(cert.start.to_graph(), graph):
            raise CertificateError(0, "certificate does not start at this graph")
        found.append(Representative(f"certificate[{i}]", verify_certificate(cert, cache)))

    root = canonical_graph(reduced)
    seen = {certificate(root)}
    queue = deque([root])
    cap = reduced.order + budget.max_extra_vertices
    if cap > NEIGHBOURHOOD_ORDER_LIMIT:
        logger.debug("Skipping neighbourhood search: %d vertices allowed", cap)
        queue.clear()
    while queue and len(seen) < search_states:
        state = queue.popleft()
        for _, child in successors(state, cap, cache):
            child = canonical_graph(child)
            key = certificate(child)
            if key in seen:
                continue
            seen.add(key)
            queue.append(child)
            found.append(Representative("neighbourhood", child))
            if len(seen) >= search_states:
                break
    logger.debug("Collected %d homotopic representatives", len(found))
    return found


def _homotopy_bracket(
    graph: SimpleGraph,
    upper_of: Callable[[Representative], _Upper],
    extra_lower: Callable[[SimpleGraph], Optional[Tuple[int, str]]],
    certificates: Sequence[HomotopyCertificate],
    budget: Optional[SearchBudget],
    cache: Optional[ContractibilityCache],
    search_states: Optional[int],
    recurse: Callable[[SimpleGraph], CategoryBracket],
) -> CategoryBracket:
    if graph.order == 0:
        return CategoryBracket.point(0, brackets.TRIVIAL)
    if not certificates:
        split = _by_components(graph, recurse)
        if split is not None:
            return split
    if is_contractible(graph, cache):
        return CategoryBracket.point(1, brackets.CONTRACTIBILITY)
    lower, lower_method, lower_certificates = _lower(graph, homotopy_invariant=True)
    parts = len(graph.components())
    if parts > lower:
        lower, lower_method = parts, brackets.COMPONENTS
    extra = extra_lower(graph)
    if extra is not None and extra[0] > lower:
        lower, lower_method = extra

    upper: Optional[_Upper] = None
    reps = representatives(graph, certificates, 0, budget, cache)
    searched = False
    while True:
        for rep in reps:
            candidate = upper_of(rep)
            if upper is None or candidate.value < upper.value:
                upper = candidate
                upper.certificates = {**candidate.certificates, "representative": rep.source}
            if upper.value <= lower:
                break
        if upper.value <= lower or searched:
            break
        # Widen to the neighbourhood only when the cheap representatives leave a gap
        reps = [r for r in representatives(graph, (), search_states, budget, cache) if r.source == "neighbourhood"]
        searched = True
    bracket = CategoryBracket(
        lower=lower,
        upper=max(upper.value, lower),
        lower_method=lower_method,
        upper_method=upper.method,
        certificates={**lower_certificates, **upper.certificates},
    )
    if not bracket.exact:
        logger.warning("Bracket not closed: %s", bracket)
    return bracket


def cat_bracket(
    graph: SimpleGraph,
    budget: Optional[SearchBudget] = None,
    certificates: Sequence[HomotopyCertificate] = (),
    cache: Optional[ContractibilityCache] = None,
    search_states: Optional[int] = None,
) -> CategoryBracket:
    """cat(G) = min tcat(H) over H homotopic to G.

    Input, reduction and certificate end graphs get the full tcat upper
    bound; neighbourhood states are bounded by crit only.
    """
    def upper_of(rep: Representative) -> _Upper:
        full = rep.source != "neighbourhood"
        return _tcat_upper(rep.graph, budget=budget, cache=cache, with_gcat=full)

    return _homotopy_bracket(
        graph,
        upper_of,
        lambda _: None,
        certificates,
        budget,
        cache,
        search_states,
        lambda part: cat_bracket(part, budget, (), cache, search_states),
    )


def _poincare_hopf_lower(graph: SimpleGraph) -> Optional[Tuple[int, str]]:
    # Every minimum has index 1 and indices sum to chi
    if euler_characteristic(graph) != 1:
        return 2, brackets.POINCARE_HOPF
    return None


def cri_bracket(
    graph: SimpleGraph,
    budget: Optional[SearchBudget] = None,
    certificates: Sequence[HomotopyCertificate] = (),
    cache: Optional[ContractibilityCache] = None,
    search_states: Optional[int] = None,
) -> CategoryBracket:
    """cri(G) = min crit(H) over H homotopic to G."""
    def upper_of(rep: Representative) -> _Upper:
        best = crit(rep.graph, cache=cache)
        return _Upper(best.value, best.method, {"ordering": list(best.witness.sequence)})

    return _homotopy_bracket(
        graph,
        upper_of,
        _poincare_hopf_lower,
        certificates,
        budget,
        cache,
        search_states,
        lambda part: cri_bracket(part, budget, (), cache, search_states),
    )


def strong_category_bracket(
    graph: SimpleGraph,
    certificates: Sequence[HomotopyCertificate] = (),
    covers: Sequence[Cover] = (),
    cache: Optional[ContractibilityCache] = None,
    gcat_limit: Optional[int] = None,
) -> CategoryBracket:
    """Cat(G) = min gcat(H) over H homotopic to G.

    Bounded below by cat(G); above by gcat of the input (with ``covers``), its
    reduction and certificate end graphs.
    """
    if graph.order == 0:
        return CategoryBracket.point(0, brackets.TRIVIAL)
    if is_contractible(graph, cache):
        return CategoryBracket.point(1, brackets.CONTRACTIBILITY)
    lower = cat_bracket(graph, certificates=certificates, cache=cache, search_states=0)
    upper = None
    for rep in representatives(graph, certificates, 0, cache=cache):
        supplied = covers if rep.source == "input" else ()
        bracket = gcat_bracket(rep.graph, supplied, cache=cache, gcat_limit=gcat_limit)
        if upper is None or bracket.upper < upper.upper:
            upper = bracket
            upper_source = rep.source
    return CategoryBracket(
        lower=lower.lower,
        upper=max(upper.upper, lower.lower),
        lower_method=lower.lower_method,
        upper_method=upper.upper_method,
        certificates={**upper.certificates, "representative": upper_source},
    )
