"""Exact minimum set cover by branch and bound over bitmasks.

The search splits on the sets covering the first branching element. Each
top-level branch runs on its own, in-process or in a worker, and prunes
against a shared incumbent size. A branch is cut only when it cannot even
match the incumbent, so every branch still finds its own first optimal
cover and the answer (the earliest branch reaching the optimum) does not
depend on how branches were scheduled.
"""

import logging
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from core.config import pool_threads

logger = logging.getLogger(__name__)

_worker_solver: Optional["SetCoverSolver"] = None


class _Incumbent:
    """Best cover size seen so far; ``shared`` is a multiprocessing.Value when branches run in workers."""

    def __init__(self, size: int, shared=None):
        self.shared = shared
        self.local = size

    def get(self) -> int:
        return self.shared.value if self.shared is not None else self.local

    def offer(self, size: int) -> None:
        if self.shared is None:
            self.local = min(self.local, size)
            return
        with self.shared.get_lock():
            if size < self.shared.value:
                self.shared.value = size


class SetCoverSolver:
    """Minimum number of candidate sets whose union is the universe.

    Args:
        candidates: Bitmasks of the available sets
        universe: Bitmask of the elements to cover
    """

    def __init__(self, candidates: Sequence[int], universe: int):
        self.universe = universe
        # Drop duplicates and sets contained in another candidate
        unique = sorted(set(c & universe for c in candidates if c & universe), key=lambda c: (-bin(c).count("1"), c))
        self.candidates: List[int] = [
            c for i, c in enumerate(unique) if not any(c | d == d for d in unique[:i])
        ]
        self.best: Optional[List[int]] = None
        self.incumbent = _Incumbent(len(self.candidates) + 1)
        self.nodes = 0

    def greedy(self) -> Optional[List[int]]:
        """Largest-gain greedy cover, used as the first incumbent."""
        chosen: List[int] = []
        covered = 0
        while covered != self.universe:
            gain, pick = max(((bin(c & ~covered).count("1"), c) for c in self.candidates), default=(0, 0))
            if gain == 0:
                return None
            chosen.append(pick)
            covered |= pick
        return chosen

    def bound(self, covered: int, depth: int) -> bool:
        """True when this branch cannot beat the local best or match the incumbent."""
        missing = bin(self.universe & ~covered).count("1")
        widest = max((bin(c & ~covered).count("1") for c in self.candidates), default=0)
        if widest == 0:
            return True
        needed = depth + -(-missing // widest)
        if self.best is not None and needed >= len(self.best):
            return True
        return needed > self.incumbent.get()

    def options(self, covered: int) -> List[int]:
        """Sets covering the uncovered element with the fewest covering sets, widest first."""
        uncovered = self.universe & ~covered
        options = None
        while uncovered:
            low = uncovered & -uncovered
            uncovered ^= low
            covering = [c for c in self.candidates if c & low]
            if options is None or len(covering) < len(options):
                options = covering
                if len(options) <= 1:
                    break
        return sorted(options or [], key=lambda c: -bin(c & ~covered).count("1"))

    def branch(self, covered: int, path: List[int]) -> None:
        self.nodes += 1
        if covered == self.universe:
            if self.best is None or len(path) < len(self.best):
                self.best = list(path)
                self.incumbent.offer(len(path))
            return
        if self.bound(covered, len(path)):
            return
        for c in self.options(covered):
            path.append(c)
            self.branch(covered | c, path)
            path.pop()

    def solve_branch(self, first: int) -> Optional[List[int]]:
        """Best cover that starts with ``first``, or None when pruned."""
        self.best = None
        self.branch(first, [first])
        return self.best

    def run(self, threads: Optional[int] = None) -> Optional[List[int]]:
        """An optimal cover as a list of masks, or None when none exists."""
        if self.universe == 0:
            return []
        greedy = self.greedy()
        if greedy is None:
            return None
        threads = pool_threads(threads)
        firsts = self.options(0)
        if threads > 1 and len(firsts) > 1:
            shared = multiprocessing.Value("i", len(greedy))
            with ProcessPoolExecutor(
                max_workers=threads, initializer=_init_worker, initargs=(self.candidates, self.universe, shared)
            ) as pool:
                found = list(pool.map(_solve_branch, firsts))
        else:
            self.incumbent = _Incumbent(len(greedy))
            found = [self.solve_branch(first) for first in firsts]
        covers = [cover for cover in found if cover is not None]
        self.best = min(covers, key=len) if covers else greedy
        logger.debug(
            "Set cover: %d candidates, optimum %d over %d branches on %d threads",
            len(self.candidates), len(self.best), len(firsts), threads,
        )
        return self.best


def _init_worker(candidates: List[int], universe: int, shared) -> None:
    global _worker_solver
    _worker_solver = SetCoverSolver(candidates, universe)
    _worker_solver.incumbent = _Incumbent(shared.value, shared)


def _solve_branch(first: int) -> Optional[List[int]]:
    return _worker_solver.solve_branch(first)
