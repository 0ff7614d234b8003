"""Isomorph-free generation of admissible arrangements.

Graphs are grown one vertex at a time by canonical augmentation: a child is
kept only if the new vertex lies in the automorphism orbit of the child's
canonical deletion vertex (the minimal-invariant vertex with the smallest
canonical position), and neighbourhoods are taken one per orbit of the
parent's automorphism group.  Each isomorphism class is therefore produced
exactly once.

Up to ``n - 1`` vertices the class grown is closed under taking induced
subgraphs: no five pairwise meeting lines, no induced diamond, degrees at
most ``n - 2`` and at most ``max(k)`` edges.  The last vertex is forced: it
must meet exactly the odd-degree vertices, since every degree of an even
arrangement is even.  Every even graph arises this way because deleting any
vertex of it leaves a member of the hereditary class.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from evenlines.arrangement import Arrangement, encode_graph6
from evenlines.canon import Labeling, canonical_labeling, orbits
from evenlines.filters import FilterReport, run_pipeline

log = logging.getLogger(__name__)

QUADRIC_CUT = {10: 18}


class ResourceLimit(RuntimeError):
    """Raised when the node budget is exhausted before the search finishes."""

    def __init__(self, used: int, budget: int):
        super().__init__(f"node budget {budget} exhausted ({used} nodes)")
        self.used = used
        self.budget = budget


def admissible_k(n: int) -> tuple[int, ...]:
    """k values allowed by the k bound and the modulo 4 condition.

    For ten lines the quadric argument additionally caps k at 18.
    """
    top = n * (n - 2) // 2 if n >= 2 else 0
    top = min(top, QUADRIC_CUT.get(n, top))
    return tuple(k for k in range(0, top + 1) if (k - n) % 4 == 0)


@dataclass(frozen=True)
class EnumerationTask:
    n: int
    ks: tuple[int, ...]
    budget: int | None = None
    clique_bound: int = 4

    @classmethod
    def for_n(cls, n: int, k: int | None = None, budget: int | None = None) -> "EnumerationTask":
        ks = admissible_k(n)
        if k is not None:
            ks = tuple(x for x in ks if x == k)
        return cls(n, ks, budget)

    @property
    def max_degree(self) -> int:
        return max(self.n - 2, 0)

    @property
    def max_edges(self) -> int:
        return max(self.ks) if self.ks else -1


@dataclass
class Survivor:
    graph6: str
    k: int
    report: FilterReport

    @property
    def arrangement(self) -> Arrangement:
        from evenlines.arrangement import decode_graph6

        return decode_graph6(self.graph6)


@dataclass
class SurvivorSet:
    n: int
    ks: tuple[int, ...]
    survivors: list[Survivor] = field(default_factory=list)
    complete: bool = True
    nodes: int = 0
    candidates: int = 0
    seconds: float = 0.0

    def by_k(self) -> dict[int, list[Survivor]]:
        out: dict[int, list[Survivor]] = {k: [] for k in self.ks}
        for s in self.survivors:
            out.setdefault(s.k, []).append(s)
        return out

    @property
    def graph6_set(self) -> set[str]:
        return {s.graph6 for s in self.survivors}

    def __len__(self) -> int:
        return len(self.survivors)

    def summary(self) -> dict:
        counts = {str(k): len(v) for k, v in sorted(self.by_k().items())}
        return {
            "n": self.n,
            "ks": list(self.ks),
            "classes": len(self.survivors),
            "count_by_k": counts,
            "complete": self.complete,
            "node_budget_used": self.nodes,
        }


# -- search ------------------------------------------------------------------

def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _invariant(rows: tuple[int, ...], v: int) -> tuple:
    return (rows[v].bit_count(), sorted(rows[u].bit_count() for u in _bits(rows[v])))


def _has_k4(rows: tuple[int, ...], mask: int) -> bool:
    for a in _bits(mask):
        c1 = mask & rows[a] & ~((1 << (a + 1)) - 1)
        for b in _bits(c1):
            c2 = c1 & rows[b] & ~((1 << (b + 1)) - 1)
            for c in _bits(c2):
                if c2 & rows[c] & ~((1 << (c + 1)) - 1):
                    return True
    return False


def _has_clique(rows: tuple[int, ...], mask: int, size: int) -> bool:
    if size <= 0:
        return True
    for a in _bits(mask):
        if _has_clique(rows, mask & rows[a] & ~((1 << (a + 1)) - 1), size - 1):
            return True
    return False


def _extension_ok(rows: tuple[int, ...], s: int, task: EnumerationTask) -> bool:
    """Hereditary checks for adding a vertex adjacent to ``s``."""
    if s.bit_count() > task.max_degree:
        return False
    for a in _bits(s):
        if rows[a].bit_count() + 1 > task.max_degree:
            return False
    if _has_clique(rows, s, task.clique_bound):
        return False
    for a in _bits(s):
        # new edge (v, a): common neighbours S & N(a) must be pairwise adjacent
        common = s & rows[a]
        for p in _bits(common):
            if common & ~rows[p] & ~(1 << p):
                return False
        # old edge (a, b) inside S gains v as common neighbour
        for b in _bits(s & rows[a] & ~((1 << (a + 1)) - 1)):
            if rows[a] & rows[b] & ~s:
                return False
    return True


def _child_rows(rows: tuple[int, ...], s: int) -> tuple[int, ...]:
    m = len(rows)
    out = list(rows)
    for a in _bits(s):
        out[a] |= 1 << m
    out.append(s)
    return tuple(out)


def _accept(child: tuple[int, ...], lab: Labeling) -> bool:
    """Is the last vertex in the orbit of the canonical deletion vertex?"""
    v = len(child) - 1
    inv = [_invariant(child, u) for u in range(len(child))]
    best = min(inv)
    if inv[v] != best:
        return False
    pos = lab.position
    cands = [u for u in range(len(child)) if inv[u] == best]
    star = min(cands, key=lambda u: pos[u])
    if star == v:
        return True
    rep = orbits(len(child), lab.generators)
    return rep[star] == rep[v]


def _subset_reps(m: int, gens, max_size: int, min_size: int = 0) -> Iterator[int]:
    """One subset of ``range(m)`` per orbit under ``gens``, sizes in range."""
    for size in range(min_size, max_size + 1):
        seen: set[int] = set()
        for combo in combinations(range(m), size):
            s = 0
            for x in combo:
                s |= 1 << x
            if s in seen:
                continue
            yield s
            if not gens:
                continue
            stack = [s]
            seen.add(s)
            while stack:
                t = stack.pop()
                for g in gens:
                    img = 0
                    for x in _bits(t):
                        img |= 1 << g[x]
                    if img not in seen:
                        seen.add(img)
                        stack.append(img)


class _Counter:
    def __init__(self, budget: int | None):
        self.budget = budget
        self.nodes = 0
        self.candidates = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise ResourceLimit(self.nodes, self.budget)


def _children(rows: tuple[int, ...], lab: Labeling, task: EnumerationTask, counter: _Counter):
    """Accepted children of an intermediate graph (fewer than n - 1 vertices)."""
    m = len(rows)
    edges = sum(r.bit_count() for r in rows) // 2
    mindeg = min((r.bit_count() for r in rows), default=0)
    max_size = min(mindeg + 1, task.max_degree, task.max_edges - edges)
    if max_size < 0:
        return
    for s in _subset_reps(m, lab.generators, max_size):
        size = s.bit_count()
        # new vertex must have minimal degree in the child
        if any(rows[u].bit_count() < size for u in range(m) if not (s >> u) & 1):
            continue
        if not _extension_ok(rows, s, task):
            continue
        counter.candidates += 1
        child = _child_rows(rows, s)
        clab = canonical_labeling(child)
        if _accept(child, clab):
            counter.tick()
            yield child, clab


def _complete(rows: tuple[int, ...], task: EnumerationTask, counter: _Counter) -> tuple[int, ...] | None:
    """The forced last vertex: joined to every odd-degree vertex."""
    odd = 0
    for u, r in enumerate(rows):
        if r.bit_count() & 1:
            odd |= 1 << u
    size = odd.bit_count()
    edges = sum(r.bit_count() for r in rows) // 2
    if edges + size not in task.ks:
        return None
    if any(r.bit_count() < size for u, r in enumerate(rows) if not (odd >> u) & 1):
        return None
    if not _extension_ok(rows, odd, task):
        return None
    counter.candidates += 1
    child = _child_rows(rows, odd)
    clab = canonical_labeling(child)
    if not _accept(child, clab):
        return None
    counter.tick()
    return clab.certificate


def _descend(rows, lab, task: EnumerationTask, counter: _Counter, out: list) -> None:
    if len(rows) == task.n - 1:
        cert = _complete(rows, task, counter)
        if cert is not None:
            out.append(cert)
        return
    for child, clab in _children(rows, lab, task, counter):
        _descend(child, clab, task, counter, out)


def _roots(task: EnumerationTask) -> list[tuple[tuple[int, ...], Labeling]]:
    rows = (0,)
    return [(rows, canonical_labeling(rows))]


def _expand_to(task: EnumerationTask, level: int, counter: _Counter):
    frontier = _roots(task)
    while frontier and len(frontier[0][0]) < level:
        nxt = []
        for rows, lab in frontier:
            nxt.extend(_children(rows, lab, task, counter))
        frontier = nxt
    return frontier


def _worker(args):
    task, batch = args
    counter = _Counter(None)
    out: list = []
    for rows in batch:
        _descend(rows, canonical_labeling(rows), task, counter, out)
    return out, counter.nodes, counter.candidates


def generate_even(task: EnumerationTask, jobs: int = 1) -> tuple[list[tuple[int, ...]], int, int, bool]:
    """Canonical row tuples of every even graph in the hereditary class.

    Returns ``(certificates, nodes, candidates, complete)``.
    """
    n = task.n
    counter = _Counter(task.budget)
    out: list[tuple[int, ...]] = []
    if not task.ks or n < 1:
        return [], 0, 0, True
    if n == 1:
        if 0 in task.ks:
            out.append((0,))
        return out, 1, 1, True
    if jobs <= 1 or n < 7:
        for rows, lab in _roots(task):
            _descend(rows, lab, task, counter, out)
        return out, counter.nodes, counter.candidates, True
    split = min(n - 2, 6)
    frontier = _expand_to(task, split, counter)
    batches = [[rows for rows, _ in frontier[i::jobs * 4]] for i in range(jobs * 4)]
    nodes, cands = counter.nodes, counter.candidates
    merged: set[tuple[int, ...]] = set()
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for certs, nd, cd in ex.map(_worker, [(task, b) for b in batches if b]):
            merged.update(certs)
            nodes += nd
            cands += cd
            if task.budget is not None and nodes > task.budget:
                raise ResourceLimit(nodes, task.budget)
    return sorted(merged), nodes, cands, True


def enumerate_survivors(task: EnumerationTask, jobs: int = 1) -> SurvivorSet:
    """Every isomorphism class on ``task.n`` lines passing the full pipeline."""
    t0 = time.perf_counter()
    result = SurvivorSet(task.n, task.ks)
    try:
        certs, nodes, cands, _ = generate_even(task, jobs)
    except ResourceLimit as exc:
        result.complete = False
        result.nodes = exc.used
        result.seconds = time.perf_counter() - t0
        raise ResourceLimit(exc.used, exc.budget) from exc
    result.nodes, result.candidates = nodes, cands
    survivors = []
    for rows in certs:
        a = Arrangement(task.n, rows)
        report = run_pipeline(a)
        if report.overall:
            survivors.append(Survivor(encode_graph6(a), a.k, report))
    survivors.sort(key=lambda s: (s.k, s.graph6))
    result.survivors = survivors
    result.seconds = time.perf_counter() - t0
    log.info("n=%d: %d survivors, %d nodes, %.1fs", task.n, len(survivors), nodes, result.seconds)
    return result


def enumerate_partial(task: EnumerationTask, jobs: int = 1) -> SurvivorSet:
    """Like :func:`enumerate_survivors` but returns an incomplete set instead of raising."""
    try:
        return enumerate_survivors(task, jobs)
    except ResourceLimit as exc:
        s = SurvivorSet(task.n, task.ks, complete=False, nodes=exc.used)
        return s


# -- oracles -----------------------------------------------------------------

def brute_force_oracle(n: int) -> SurvivorSet:
    """All labeled graphs on ``n <= 6`` vertices, filtered and deduplicated."""
    if n > 6:
        raise ValueError("brute force oracle is limited to n <= 6")
    from evenlines.arrangement import canonical_form

    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    found: dict[bytes, Arrangement] = {}
    ks = set(admissible_k(n))
    for code in range(1 << len(pairs)):
        rows = [0] * n
        for b, (i, j) in enumerate(pairs):
            if code >> b & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        # a failing cheap rule already decides the overall verdict
        if any(r.bit_count() & 1 for r in rows):
            continue
        a = Arrangement(n, tuple(rows))
        if a.k not in ks:
            continue
        c = canonical_form(a)
        if c in found:
            continue
        found[c] = a
    result = SurvivorSet(n, admissible_k(n))
    for c, a in found.items():
        report = run_pipeline(a)
        if report.overall:
            result.survivors.append(Survivor(c.decode(), a.k, report))
    result.survivors.sort(key=lambda s: (s.k, s.graph6))
    return result
