"""Exact intersection arithmetic on the classes H, L_1..L_n of a quartic.

Classes are integer vectors over the basis {H, L_1, ..., L_n}.  Coefficients
are stored doubled so that the half class (with twice it equal to the sum of
the lines) is an ordinary integer vector; every pairing comes back as an
exact :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from evenlines.arrangement import Arrangement, decode_graph6, encode_graph6


class AmbientMismatch(ValueError):
    pass


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class GramData:
    """Intersection matrix on {H, L_1..L_n}: H^2 = 4, H.L = 1, L^2 = -2."""

    matrix: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.matrix)


def gram(a: Arrangement) -> GramData:
    n = a.n
    top = (4,) + (1,) * n
    body = []
    for i in range(n):
        row = [1] + [0] * n
        for j in range(n):
            row[1 + j] = -2 if i == j else (a.rows[i] >> j) & 1
        body.append(tuple(row))
    return GramData((top, *body))


@dataclass(frozen=True)
class DivisorClass:
    doubled_coeffs: tuple[int, ...]
    ambient: Arrangement

    def __post_init__(self):
        if len(self.doubled_coeffs) != self.ambient.n + 1:
            raise ValueError(
                f"expected {self.ambient.n + 1} coefficients, got {len(self.doubled_coeffs)}"
            )

    @classmethod
    def from_coeffs(cls, ambient: Arrangement, h: int | Fraction, lines: Sequence[int | Fraction]) -> "DivisorClass":
        vals = [Fraction(h)] + [Fraction(c) for c in lines]
        doubled = []
        for v in vals:
            d = 2 * v
            if d.denominator != 1:
                raise ValueError(f"coefficient {v} is not a half-integer")
            doubled.append(int(d))
        return cls(tuple(doubled), ambient)

    @property
    def n(self) -> int:
        return self.ambient.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.doubled_coeffs)

    @property
    def is_integral(self) -> bool:
        return all(c % 2 == 0 for c in self.doubled_coeffs)

    def _check(self, other: "DivisorClass") -> None:
        if self.ambient != other.ambient:
            raise AmbientMismatch("classes live over different arrangements")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(
            tuple(x + y for x, y in zip(self.doubled_coeffs, other.doubled_coeffs)), self.ambient
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(
            tuple(x - y for x, y in zip(self.doubled_coeffs, other.doubled_coeffs)), self.ambient
        )

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-x for x in self.doubled_coeffs), self.ambient)

    def __mul__(self, m: int) -> "DivisorClass":
        return DivisorClass(tuple(m * x for x in self.doubled_coeffs), self.ambient)

    __rmul__ = __mul__

    def degree(self) -> Fraction:
        return pair(self, hyperplane(self.ambient))

    def self_intersection(self) -> Fraction:
        return pair(self, self)

    def dot_line(self, i: int) -> Fraction:
        """Pairing with the line class L_i (0-based)."""
        d = self.doubled_coeffs
        rows = self.ambient.rows
        total = d[0] - 2 * d[1 + i]
        m = rows[i]
        j = 0
        while m:
            if m & 1:
                total += d[1 + j]
            m >>= 1
            j += 1
        return Fraction(total, 2)

    def support(self) -> list[int]:
        """Indices of lines with nonzero coefficient."""
        return [i for i, c in enumerate(self.doubled_coeffs[1:]) if c]

    def to_json(self) -> dict:
        return {"doubled_coeffs": list(self.doubled_coeffs), "ambient": encode_graph6(self.ambient)}

    @classmethod
    def from_json(cls, obj: dict) -> "DivisorClass":
        return cls(tuple(int(x) for x in obj["doubled_coeffs"]), decode_graph6(obj["ambient"]))

    def describe(self) -> str:
        """Human readable form such as ``1/2(L1+...+L8) - L5``."""
        parts = []
        names = ["H"] + [f"L{i + 1}" for i in range(self.n)]
        for name, c in zip(names, self.coeffs):
            if c == 0:
                continue
            if c == 1:
                parts.append(f"+{name}")
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{'+' if c > 0 else '-'}{abs(c)}{name}")
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def pair(c1: DivisorClass, c2: DivisorClass) -> Fraction:
    """Intersection number, bilinear in both arguments."""
    c1._check(c2)
    a = c1.ambient
    x, y = c1.doubled_coeffs, c2.doubled_coeffs
    n = a.n
    total = 4 * x[0] * y[0]
    sx = sum(x[1:])
    sy = sum(y[1:])
    total += x[0] * sy + y[0] * sx
    for i in range(n):
        xi = x[1 + i]
        if not xi:
            continue
        acc = -2 * y[1 + i]
        m = a.rows[i]
        j = 0
        while m:
            if m & 1:
                acc += y[1 + j]
            m >>= 1
            j += 1
        total += xi * acc
    return Fraction(total, 4)


def hyperplane(a: Arrangement) -> DivisorClass:
    return DivisorClass((2,) + (0,) * a.n, a)


def line(a: Arrangement, i: int) -> DivisorClass:
    d = [0] * (a.n + 1)
    d[1 + i] = 2
    return DivisorClass(tuple(d), a)


def lines_sum(a: Arrangement, indices: Iterable[int]) -> DivisorClass:
    d = [0] * (a.n + 1)
    for i in indices:
        d[1 + i] += 2
    return DivisorClass(tuple(d), a)


def zero_class(a: Arrangement) -> DivisorClass:
    return DivisorClass((0,) * (a.n + 1), a)


def total_class(a: Arrangement) -> DivisorClass:
    """The class of the whole arrangement, sum of all lines."""
    return lines_sum(a, range(a.n))


def half_class(a: Arrangement) -> DivisorClass:
    """Half of the arrangement class: doubled coefficients (0; 1, ..., 1)."""
    return DivisorClass((0,) + (1,) * a.n, a)


def chi(c: DivisorClass) -> Fraction:
    """Riemann-Roch on a K3: chi = 2 + C^2/2."""
    return 2 + pair(c, c) / 2


def chi_twist(m: int, a: Arrangement) -> int:
    """Euler characteristic of O(m) twisted by minus the arrangement."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    n = a.n
    return 2 + 2 * m * m + a.k - (m + 1) * n


def chi_twist_profile(m: int, n: int, k: int) -> int:
    return 2 + 2 * m * m + k - (m + 1) * n


def half_class_effective_by_rr(n: int, k: int) -> bool:
    """chi of the half class is positive, which makes it effective."""
    return k > n - 8


# -- GF(2) even-set codes ----------------------------------------------------

@dataclass(frozen=True)
class EvenSetCode:
    """Binary code given by independent generator rows (bitmasks of length ``length``)."""

    generators: tuple[int, ...]
    length: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], length: int | None = None) -> "EvenSetCode":
        if length is None:
            length = len(rows[0]) if rows else 0
        gens = []
        for r in rows:
            if len(r) != length:
                raise CodeError("generator rows have inconsistent length")
            m = 0
            for i, b in enumerate(r):
                if b not in (0, 1):
                    raise CodeError(f"non-binary entry {b!r}")
                m |= b << i
            gens.append(m)
        return cls.checked(gens, length)

    @classmethod
    def checked(cls, gens: Sequence[int], length: int) -> "EvenSetCode":
        if gf2_rank(gens) != len(gens):
            raise CodeError("generator rows are linearly dependent over GF(2)")
        return cls(tuple(gens), length)

    @property
    def dimension(self) -> int:
        return len(self.generators)


def gf2_rank(rows: Sequence[int]) -> int:
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top in basis:
                r ^= basis[top]
            else:
                basis[top] = r
                break
    return len(basis)


def weight_distribution(code: EvenSetCode) -> dict[int, int]:
    """Weight enumerator by a full Gray-code pass over all 2^d codewords."""
    d = code.dimension
    if d > 20:
        raise CodeError("dimension above 20 is not supported by the full traversal")
    counts: dict[int, int] = {0: 1}
    word = 0
    for step in range(1, 1 << d):
        # flip the generator at the lowest set bit of step
        g = (step & -step).bit_length() - 1
        word ^= code.generators[g]
        w = word.bit_count()
        counts[w] = counts.get(w, 0) + 1
    return dict(sorted(counts.items()))


def reed_muller_1(m: int) -> EvenSetCode:
    """First-order Reed-Muller code RM(1, m): length 2^m, dimension m + 1."""
    length = 1 << m
    gens = [(1 << length) - 1]
    for bit in range(m):
        row = 0
        for x in range(length):
            if (x >> bit) & 1:
                row |= 1 << x
        gens.append(row)
    return EvenSetCode.checked(gens, length)
