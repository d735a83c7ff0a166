"""Homotopy types among connected graphs of a given order.

Graphs are first split into cells by (chi, Betti vector), which are homotopy
invariants, so different cells are proven distinct. Inside a cell every graph
is reduced to a core and cores are linked pairwise by the bounded homotopy
search. Cup length separates two cores only when both brackets are exact;
an inexact bracket is no invariant and never splits a cell. A class is
proven distinct when every other class of its cell carries a different
exact cup length. Otherwise it stays unresolved and widens the reported
bracket on h(n).
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel
from tqdm import tqdm

from census.enumeration import enumerate_connected
from cohomology.cup_length import cup_length
from core.canonical import canonical_graph, certificate
from core.cliques import euler_characteristic, fvector
from core.config import SearchBudget, get_settings, pool_threads
from core.graph_io import parse_graph6, serialize_graph6
from homotopy.contractibility import is_contractible
from homotopy.moves import HomotopyCertificate
from homotopy.search import homotopic_bounded, reduce, trimmed_betti
from morse.crit import crit_exact

logger = logging.getLogger(__name__)

# Published h(n); see DESIGN.md for the values this census actually finds
PUBLISHED_HOMOTOPY_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 2, 6: 4, 7: 4}

CENSUS_BUDGET = SearchBudget(max_extra_vertices=2, max_states=50_000)

PROVEN_EQUIVALENT = "proven-equivalent"
PROVEN_DISTINCT = "proven-distinct"
UNRESOLVED = "unresolved"

CellKey = Tuple[int, Tuple[int, ...]]


class CensusRecord(BaseModel):
    graph6: str
    certificate: str
    fvector: List[int]
    euler_characteristic: int
    betti: List[int]
    cup: Tuple[int, int]
    crit: int
    contractible: bool
    core: str
    class_id: int = -1
    confidence: str = UNRESOLVED

    @property
    def cell(self) -> CellKey:
        return (self.euler_characteristic, tuple(self.betti))

    @property
    def exact_cup(self) -> Optional[int]:
        return self.cup[0] if self.cup[0] == self.cup[1] else None


class LinkRecord(BaseModel):
    first: str
    second: str
    certificate: HomotopyCertificate


class HomotopyClass(BaseModel):
    class_id: int
    euler_characteristic: int
    betti: List[int]
    cup: Optional[int]
    representative: str
    cores: List[str]
    members: int
    confidence: str


class CensusReport(BaseModel):
    order: int
    graphs: int
    h_lower: int
    h_upper: int
    published: Optional[int] = None
    discrepancy: bool = False
    unresolved_cells: int = 0
    classes: List[HomotopyClass]
    links: List[LinkRecord] = []
    records: List[CensusRecord] = []

    @property
    def exact(self) -> bool:
        return self.h_lower == self.h_upper

    @property
    def h(self) -> Optional[int]:
        return self.h_lower if self.exact else None


def profile(graph6: str) -> CensusRecord:
    """Invariants and core of one graph."""
    graph = parse_graph6(graph6)
    cup = cup_length(graph)
    core = canonical_graph(reduce(graph).graph)
    return CensusRecord(
        graph6=graph6,
        certificate=certificate(graph).hex(),
        fvector=list(fvector(graph)),
        euler_characteristic=euler_characteristic(graph),
        betti=list(trimmed_betti(graph)),
        cup=(cup.lower, cup.upper),
        crit=crit_exact(graph).value,
        contractible=bool(is_contractible(graph)),
        core=serialize_graph6(core),
    )


class _UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {item: item for item in items}

    def find(self, item: str) -> str:
        while self.parent[item] != item:
            self.parent[item] = self.parent[self.parent[item]]
            item = self.parent[item]
        return item

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def resolve_cell(
    cores: List[str], budget: SearchBudget, cups: Optional[Dict[str, Optional[int]]] = None
) -> Tuple[Dict[str, str], List[LinkRecord]]:
    """Link the distinct cores of one cell.

    ``cups`` maps a core to its exact cup length, or None when the bracket
    stayed open. Cores with different exact cup lengths are never searched.

    Returns each core's class root and the certificates that linked them.
    """
    cups = cups or {}
    groups = _UnionFind(cores)
    links = []
    for i, first in enumerate(cores):
        for second in cores[:i]:
            if groups.find(first) == groups.find(second):
                continue
            if _separated(cups.get(first), cups.get(second)):
                continue
            verdict = homotopic_bounded(parse_graph6(first), parse_graph6(second), budget, check_invariants=False)
            if verdict.equivalent:
                groups.union(first, second)
                links.append(LinkRecord(first=first, second=second, certificate=verdict.certificate))
            else:
                logger.debug("No link between cores %s and %s: %s", first, second, verdict.reason)
    return {core: groups.find(core) for core in cores}, links


def _separated(first: Optional[int], second: Optional[int]) -> bool:
    return first is not None and second is not None and first != second


def _resolve(args: Tuple[List[str], SearchBudget, Dict[str, Optional[int]]]) -> Tuple[Dict[str, str], List[LinkRecord]]:
    return resolve_cell(*args)


def _pinned_cup(records: Iterable[CensusRecord]) -> Optional[int]:
    """Exact cup length shared by homotopic records, if any record pinned it."""
    return next((r.exact_cup for r in records if r.exact_cup is not None), None)


def classify_homotopy(
    n: int,
    budget: Optional[SearchBudget] = None,
    threads: Optional[int] = None,
    long: bool = False,
    progress: Optional[bool] = None,
    keep_records: bool = False,
) -> CensusReport:
    """h(n) for connected graphs on n vertices, exact or as a bracket.

    The lower end counts classes that invariants tell apart: one per cell
    plus each further exact cup length found in it. The upper end counts
    linked core classes.

    Raises:
        SizeLimitError: ``n`` above the census limit
    """
    settings = get_settings()
    budget = CENSUS_BUDGET if budget is None else budget
    threads = pool_threads(threads)
    progress = settings.progress if progress is None else progress
    codes = [serialize_graph6(g) for g in enumerate_connected(n, long, progress)]

    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            records = list(tqdm(pool.map(profile, codes, chunksize=16), total=len(codes), desc="profiles", disable=not progress))
    else:
        records = [profile(c) for c in tqdm(codes, desc="profiles", disable=not progress)]

    cells: Dict[CellKey, List[CensusRecord]] = {}
    for record in records:
        cells.setdefault(record.cell, []).append(record)
    keys = sorted(cells)
    jobs = []
    for key in keys:
        cores = sorted({r.core for r in cells[key]})
        cups = {core: _pinned_cup(r for r in cells[key] if r.core == core) for core in cores}
        jobs.append((cores, budget, cups))
    logger.info("Order %d: %d graphs in %d invariant cells", n, len(records), len(keys))

    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            resolved = list(pool.map(_resolve, jobs))
    else:
        resolved = [_resolve(job) for job in tqdm(jobs, desc="cells", disable=not progress)]

    classes: List[HomotopyClass] = []
    links: List[LinkRecord] = []
    h_lower = 0
    unresolved = 0
    for key, (roots, cell_links) in zip(keys, resolved):
        links.extend(cell_links)
        members = cells[key]
        grouped = {root: [r for r in members if roots[r.core] == root] for root in sorted(set(roots.values()))}
        cups = {root: _pinned_cup(in_class) for root, in_class in grouped.items()}
        h_lower += max(1, len({c for c in cups.values() if c is not None}))
        cell_open = False
        for root, in_class in grouped.items():
            settled = all(_separated(cups[root], cups[other]) for other in grouped if other != root)
            cell_open = cell_open or not settled
            class_id = len(classes)
            for r in in_class:
                r.class_id = class_id
                r.confidence = PROVEN_EQUIVALENT if settled else UNRESOLVED
            smallest = min(in_class, key=lambda r: (sum(r.fvector[:2]), r.graph6))
            classes.append(
                HomotopyClass(
                    class_id=class_id,
                    euler_characteristic=key[0],
                    betti=list(key[1]),
                    cup=cups[root],
                    representative=smallest.graph6,
                    cores=sorted(c for c, rt in roots.items() if rt == root),
                    members=len(in_class),
                    confidence=PROVEN_DISTINCT if settled else UNRESOLVED,
                )
            )
        if cell_open:
            unresolved += 1
            logger.warning("Cell chi=%d betti=%s left %d core classes unseparated", key[0], list(key[1]), len(grouped))

    published = PUBLISHED_HOMOTOPY_COUNTS.get(n)
    report = CensusReport(
        order=n,
        graphs=len(records),
        h_lower=h_lower,
        h_upper=len(classes),
        published=published,
        unresolved_cells=unresolved,
        classes=classes,
        links=links,
        records=records if keep_records else [],
    )
    if published is not None:
        report.discrepancy = not report.h_lower <= published <= report.h_upper
        if report.discrepancy:
            logger.warning("h(%d): computed [%d, %d], published %d", n, report.h_lower, report.h_upper, published)
    return report
