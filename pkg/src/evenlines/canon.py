"""Canonical labeling of small graphs by partition refinement and backtracking.

Graphs are given as a tuple of row bitmasks: bit ``j`` of ``rows[i]`` is set
iff vertices ``i`` and ``j`` are adjacent.  The search tree is the usual
individualize-and-refine tree; leaves are compared by the relabeled row
tuple and the minimal one wins.  Automorphisms found at equal leaves are used
for orbit pruning and for jumping back to the first path, so the generators
collected along the way generate the full automorphism group.
"""

from __future__ import annotations

from dataclasses import dataclass

Perm = tuple[int, ...]


@dataclass(frozen=True)
class Labeling:
    """Result of a canonical labeling run.

    ``order[p]`` is the vertex placed at canonical position ``p``;
    ``certificate`` is the relabeled row tuple (the canonical graph itself);
    ``generators`` generate the automorphism group.
    """

    order: tuple[int, ...]
    certificate: tuple[int, ...]
    generators: tuple[Perm, ...]

    @property
    def position(self) -> tuple[int, ...]:
        pos = [0] * len(self.order)
        for p, v in enumerate(self.order):
            pos[v] = p
        return tuple(pos)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def refine(rows: tuple[int, ...], cells: list[int], queue: list[int]) -> list[int]:
    """Refine the ordered partition ``cells`` (list of vertex masks) to equitable.

    ``queue`` holds the splitter masks still to be processed.  Split pieces
    are ordered by increasing neighbour count, which keeps the result
    invariant under relabeling.
    """
    cells = list(cells)
    queue = list(queue)
    head = 0
    while head < len(queue):
        splitter = queue[head]
        head += 1
        i = 0
        while i < len(cells):
            cell = cells[i]
            if cell & (cell - 1) == 0:
                i += 1
                continue
            groups: dict[int, int] = {}
            for v in _bits(cell):
                c = (rows[v] & splitter).bit_count()
                groups[c] = groups.get(c, 0) | (1 << v)
            if len(groups) == 1:
                i += 1
                continue
            pieces = [groups[c] for c in sorted(groups)]
            cells[i:i + 1] = pieces
            queue.extend(pieces)
            i += len(pieces)
        if all(c & (c - 1) == 0 for c in cells):
            break
    return cells


def _certificate(rows: tuple[int, ...], order: list[int]) -> tuple[int, ...]:
    pos = [0] * len(order)
    for p, v in enumerate(order):
        pos[v] = p
    out = []
    for v in order:
        m = 0
        for u in _bits(rows[v]):
            m |= 1 << pos[u]
        out.append(m)
    return tuple(out)


def _orbit(v: int, gens: list[Perm]) -> set[int]:
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def orbits(n: int, gens) -> list[int]:
    """Return ``rep`` with ``rep[v]`` the smallest vertex in the orbit of ``v``."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(x) for x in range(n)]


class _Search:
    def __init__(self, rows: tuple[int, ...]):
        self.rows = rows
        self.n = len(rows)
        self.first_path: list[int] | None = None
        self.first_order: list[int] | None = None
        self.first_cert: tuple[int, ...] | None = None
        self.best_order: list[int] | None = None
        self.best_cert: tuple[int, ...] | None = None
        self.gens: list[Perm] = []

    def _leaf(self, cells: list[int], path: list[int]) -> int | None:
        order = [c.bit_length() - 1 for c in cells]
        cert = _certificate(self.rows, order)
        if self.first_cert is None:
            self.first_path = list(path)
            self.first_order = order
            self.first_cert = cert
            self.best_order = order
            self.best_cert = cert
            return None
        if cert == self.first_cert:
            self._record(self.first_order, order)
            # first index where path leaves the first path
            d = 0
            while path[d] == self.first_path[d]:
                d += 1
            return d
        if cert == self.best_cert:
            self._record(self.best_order, order)
        elif cert < self.best_cert:
            self.best_cert = cert
            self.best_order = order
        return None

    def _record(self, a: list[int], b: list[int]) -> None:
        g = [0] * self.n
        for x, y in zip(a, b):
            g[x] = y
        perm = tuple(g)
        if any(perm[i] != i for i in range(self.n)):
            self.gens.append(perm)

    def run(self, cells: list[int], path: list[int]) -> int | None:
        target = None
        for idx, c in enumerate(cells):
            if c & (c - 1):
                if target is None or c.bit_count() < cells[target].bit_count():
                    target = idx
        if target is None:
            return self._leaf(cells, path)
        depth = len(path)
        cell = cells[target]
        tried: list[int] = []
        for v in _bits(cell):
            if tried:
                stab = [g for g in self.gens if all(g[u] == u for u in path)]
                if stab and _orbit(v, stab) & set(tried):
                    continue
            tried.append(v)
            single = 1 << v
            child = cells[:target] + [single, cell ^ single] + cells[target + 1:]
            child = refine(self.rows, child, [single])
            path.append(v)
            jump = self.run(child, path)
            path.pop()
            if jump is not None and jump < depth:
                return jump
        return None


def canonical_labeling(rows: tuple[int, ...], cells: list[int] | None = None) -> Labeling:
    """Compute the canonical labeling of the graph given by ``rows``.

    ``cells`` optionally supplies an initial ordered colouring (list of vertex
    masks); the result is then canonical for coloured graphs.
    """
    n = len(rows)
    if n == 0:
        return Labeling((), (), ())
    if cells is None:
        cells = [(1 << n) - 1]
    start = refine(rows, cells, list(cells))
    s = _Search(rows)
    s.run(start, [])
    return Labeling(tuple(s.best_order), s.best_cert, tuple(s.gens))
