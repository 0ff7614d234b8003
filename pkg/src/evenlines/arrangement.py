"""Line arrangements as incidence graphs.

An arrangement of ``n`` lines is stored as a simple graph on ``0..n-1``:
two vertices are adjacent iff the lines meet.  Rows are kept as integer
bitmasks, which is what the enumerator and the canonical labeling work on.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from evenlines.canon import canonical_labeling


class ArrangementError(ValueError):
    """Base class for invalid arrangement input."""


class AsymmetricMatrix(ArrangementError):
    def __init__(self, i: int, j: int):
        super().__init__(f"adjacency not symmetric at ({i}, {j})")
        self.pair = (i, j)


class NonBinaryEntry(ArrangementError):
    def __init__(self, i: int, j: int, value):
        super().__init__(f"entry ({i}, {j}) is {value!r}, expected 0 or 1")
        self.pair = (i, j)


class NonzeroDiagonal(ArrangementError):
    def __init__(self, i: int):
        super().__init__(f"diagonal entry ({i}, {i}) is nonzero")
        self.pair = (i, i)


class MalformedGraph6(ArrangementError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Arrangement:
    """Symmetric 0/1 incidence graph of ``n`` lines with zero diagonal."""

    n: int
    rows: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Arrangement":
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise NonzeroDiagonal(i)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Arrangement":
        return cls(n, (0,) * n)

    @property
    def adj(self) -> list[list[int]]:
        return [[(self.rows[i] >> j) & 1 for j in range(self.n)] for i in range(self.n)]

    def meets(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(_bits(self.rows[i]))

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in _bits(self.rows[i] >> (i + 1) << (i + 1))]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    @property
    def k(self) -> int:
        return sum(self.degrees) // 2

    def induced(self, vertices: Sequence[int]) -> "Arrangement":
        """Sub-arrangement on ``vertices``, relabeled ``0..m-1`` in the given order."""
        index = {v: p for p, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            m = 0
            for u in _bits(self.rows[v]):
                p = index.get(u)
                if p is not None:
                    m |= 1 << p
            rows.append(m)
        return Arrangement(len(vertices), tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Arrangement":
        """Arrangement with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for v in range(self.n):
            m = 0
            for u in _bits(self.rows[v]):
                m |= 1 << perm[u]
            rows[perm[v]] = m
        return Arrangement(self.n, tuple(rows))

    def disjoint_union(self, other: "Arrangement") -> "Arrangement":
        shift = self.n
        rows = self.rows + tuple(r << shift for r in other.rows)
        return Arrangement(self.n + other.n, rows)

    @cached_property
    def canonical(self) -> bytes:
        return canonical_form(self)

    def graph6(self) -> str:
        return encode_graph6(self)

    def __repr__(self) -> str:
        return f"Arrangement(n={self.n}, g6={encode_graph6(self)!r})"


def validate(raw: Sequence[Sequence[int]]) -> Arrangement:
    """Check an ``n x n`` integer matrix and turn it into an :class:`Arrangement`."""
    n = len(raw)
    for i, row in enumerate(raw):
        if len(row) != n:
            raise ArrangementError(f"row {i} has length {len(row)}, expected {n}")
    rows = []
    for i in range(n):
        m = 0
        for j in range(n):
            x = raw[i][j]
            if x not in (0, 1):
                raise NonBinaryEntry(i, j, x)
            if i == j:
                if x:
                    raise NonzeroDiagonal(i)
                continue
            if x != raw[j][i]:
                raise AsymmetricMatrix(i, j)
            if x:
                m |= 1 << j
        rows.append(m)
    return Arrangement(n, tuple(rows))


# -- degree statistics -------------------------------------------------------

@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    k: int
    type_vector: dict[int, int]

    @property
    def n(self) -> int:
        return len(self.degrees)

    def count(self, l: int) -> int:
        """Number of ``l``-lines."""
        return self.type_vector.get(l, 0)


def degree_profile(a: Arrangement) -> DegreeProfile:
    degrees = a.degrees
    total = sum(degrees)
    tv = Counter(degrees)
    profile = DegreeProfile(degrees, total // 2, {l: tv[l] for l in sorted(tv)})
    assert 2 * profile.k == total
    return profile


# -- components --------------------------------------------------------------

ISOLATED = "isolated"
CYCLE = "chordless-cycle"
OTHER = "other"


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    shape: str

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def is_cycle(self) -> bool:
        return self.shape == CYCLE


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[Component, ...]

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    @property
    def cycles(self) -> list[Component]:
        return [c for c in self.components if c.is_cycle]


def is_chordless_cycle(a: Arrangement, mask: int) -> bool:
    """True iff the subgraph induced on ``mask`` is a single cycle of length >= 3."""
    size = mask.bit_count()
    if size < 3:
        return False
    for v in _bits(mask):
        if (a.rows[v] & mask).bit_count() != 2:
            return False
    # 2-regular: connected iff one cycle
    start = mask & -mask
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= a.rows[v] & mask
        frontier = nxt & ~seen
        seen |= frontier
    return seen == mask


def component_masks(a: Arrangement) -> list[int]:
    left = (1 << a.n) - 1
    out = []
    while left:
        seen = left & -left
        frontier = seen
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= a.rows[v]
            frontier = nxt & ~seen
            seen |= frontier
        out.append(seen)
        left &= ~seen
    return out


def components(a: Arrangement) -> ComponentDecomposition:
    comps = []
    for mask in component_masks(a):
        if mask & (mask - 1) == 0:
            shape = ISOLATED
        elif is_chordless_cycle(a, mask):
            shape = CYCLE
        else:
            shape = OTHER
        comps.append(Component(tuple(_bits(mask)), shape))
    return ComponentDecomposition(tuple(comps))


# -- canonical form ----------------------------------------------------------

def canonical_arrangement(a: Arrangement) -> Arrangement:
    lab = canonical_labeling(a.rows)
    return Arrangement(a.n, lab.certificate)


def canonical_form(a: Arrangement) -> bytes:
    """graph6 bytes of the canonically relabeled arrangement.

    Equal for two arrangements iff they are isomorphic.
    """
    return encode_graph6(canonical_arrangement(a)).encode("ascii")


def is_isomorphic(a: Arrangement, b: Arrangement) -> bool:
    if a.n != b.n or a.k != b.k or sorted(a.degrees) != sorted(b.degrees):
        return False
    return canonical_form(a) == canonical_form(b)


# -- graph6 ------------------------------------------------------------------

_HEADER = ">>graph6<<"


def encode_graph6(a: Arrangement) -> str:
    """Standard graph6 text (no header) for ``n <= 62``."""
    n = a.n
    if n > 62:
        raise ValueError("graph6 short form supports n <= 62")
    out = [chr(63 + n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        row = a.rows[j]
        for i in range(j):
            acc = (acc << 1) | ((row >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def decode_graph6(text: str | bytes) -> Arrangement:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    s = text.strip()
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
    if not s:
        raise MalformedGraph6("empty graph6 string")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise MalformedGraph6(f"character {ch!r} outside graph6 range")
    n = ord(s[0]) - 63
    if n > 62:
        raise MalformedGraph6("only the short graph6 header (n <= 62) is supported")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = s[1:]
    if len(payload) != need:
        raise MalformedGraph6(
            f"payload has {len(payload)} bytes, expected {need} for n={n}"
        )
    bits = []
    for ch in payload:
        v = ord(ch) - 63
        bits.extend((v >> (5 - b)) & 1 for b in range(6))
    if any(bits[nbits:]):
        raise MalformedGraph6("nonzero padding bits")
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Arrangement(n, tuple(rows))


def read_graph6_lines(lines: Iterable[str]):
    """Yield ``(lineno, Arrangement | MalformedGraph6)`` for non-blank lines."""
    for no, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            yield no, decode_graph6(line)
        except MalformedGraph6 as exc:
            yield no, exc
