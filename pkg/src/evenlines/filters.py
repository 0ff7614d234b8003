"""Admissibility pipeline for even arrangements of lines.

Every rule is a necessary condition for the sum of the lines to be divisible
by two in the Picard group.  ``run_pipeline`` runs all of them and reports
every verdict; nothing short-circuits.

The plane rule has two halves.  No five lines are coplanar, so cliques have
at most four vertices.  And if lines ``i`` and ``j`` meet, any line meeting
both either passes through their common point (then it lies in their plane,
concurrent lines being coplanar) or meets them in two distinct points of
their plane (then it lies in the plane too).  Hence the common neighbours of
an edge together with the edge span a clique; equivalently the graph has no
induced diamond.

The deduction engine starts from the half class, which is effective once
``k > n - 8``, and applies four rules to a fixpoint:

* R-split: an effective class meeting a line negatively contains that line.
* R-deg0: an effective class of degree 0 is the zero class.
* R-bound: effective classes of degree 1, 2, 3, 4 have self-intersection at
  most -2, -2, 0, 4 (a line; two lines or a conic; a plane cubic; a plane
  section).
* R-plane: an effective class of degree 4 with square at least 2 is the
  hyperplane class, so it has square 4 and meets every line once.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable

from evenlines.arrangement import (
    Arrangement,
    CYCLE,
    canonical_form,
    components,
    encode_graph6,
)
from evenlines.lattice import (
    DivisorClass,
    half_class,
    half_class_effective_by_rr,
    lines_sum,
    pair,
)

PASS = "pass"
FAIL = "fail"
INAPPLICABLE = "inapplicable"

RULE_ORDER = (
    "planes",
    "lambda3",
    "lambda4",
    "lambda5",
    "lambda6",
    "pi1",
    "pi2_pi3",
    "complement_reduction",
    "deduce",
    "counting",
)

# maximal self-intersection of an effective class of small degree
DEGREE_BOUND = {1: -2, 2: -2, 3: 0, 4: 4}


@lru_cache(maxsize=None)
def citations() -> dict[str, dict[str, str]]:
    with resources.files("evenlines").joinpath("data/citations.json").open(encoding="utf-8") as fh:
        return json.load(fh)


def cite(rule: str) -> str:
    c = citations()[rule]
    return f"§{c['section']}: \"{c['quote']}\""


@dataclass(frozen=True)
class Verdict:
    rule: str
    status: str
    detail: str
    cite: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "status": self.status, "detail": self.detail, "cite": self.cite}


def _verdict(rule: str, status: str, detail: str) -> Verdict:
    return Verdict(rule, status, detail, cite(rule))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _names(vs: Iterable[int]) -> str:
    return ",".join(f"L{v + 1}" for v in vs)


# -- plane rules -------------------------------------------------------------

def find_clique(a: Arrangement, size: int) -> list[int] | None:
    """Return some clique of the given size, or None."""

    def grow(clique: list[int], cand: int) -> list[int] | None:
        if len(clique) == size:
            return clique
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            found = grow(clique + [v], cand & a.rows[v])
            if found:
                return found
        return None

    return grow([], (1 << a.n) - 1)


def find_diamond(a: Arrangement) -> tuple[int, int, int, int] | None:
    """Edge (i, j) with non-adjacent common neighbours (p, q), if any."""
    for i in range(a.n):
        for j in _bits(a.rows[i] >> (i + 1) << (i + 1)):
            common = a.rows[i] & a.rows[j]
            for p in _bits(common):
                bad = common & ~a.rows[p] & ~(1 << p)
                if bad:
                    q = (bad & -bad).bit_length() - 1
                    return i, j, min(p, q), max(p, q)
    return None


def check_planes(a: Arrangement) -> Verdict:
    k5 = find_clique(a, 5)
    if k5:
        return _verdict("planes", FAIL, f"five coplanar lines {_names(k5)}")
    d = find_diamond(a)
    if d:
        i, j, p, q = d
        return _verdict(
            "planes",
            FAIL,
            f"L{i + 1},L{j + 1} meet and both meet L{p + 1},L{q + 1}, which do not meet each other",
        )
    return _verdict("planes", PASS, "cliques of size <= 4, common neighbours of every edge coplanar")


# -- arithmetic conditions ---------------------------------------------------

def check_parity(a: Arrangement) -> Verdict:
    if a.n % 2:
        return _verdict("lambda3", FAIL, f"odd number of lines n={a.n}")
    return _verdict("lambda3", PASS, f"n={a.n} even")


def check_degrees_even(a: Arrangement) -> Verdict:
    odd = [i for i, d in enumerate(a.degrees) if d % 2]
    if odd:
        return _verdict("lambda4", FAIL, f"lines meeting an odd number of others: {_names(odd)}")
    return _verdict("lambda4", PASS, "every line meets an even number of others")


def check_k_bound(a: Arrangement) -> Verdict:
    k, n = a.k, a.n
    if 2 * k > n * (n - 2):
        return _verdict("lambda5", FAIL, f"k={k} exceeds n(n-2)/2={n * (n - 2) / 2:g}")
    return _verdict("lambda5", PASS, f"k={k} <= n(n-2)/2")


def check_mod4(a: Arrangement) -> Verdict:
    k, n = a.k, a.n
    if (k - n) % 4:
        return _verdict("lambda6", FAIL, f"k-n={k - n} not divisible by 4")
    return _verdict("lambda6", PASS, f"k-n={k - n} divisible by 4")


# -- structural principles ---------------------------------------------------

def check_pi1(a: Arrangement) -> Verdict:
    if a.n == 0 or a.k:
        return _verdict("pi1", INAPPLICABLE, "arrangement is not a set of disjoint lines")
    if a.n in (8, 16):
        return _verdict("pi1", PASS, f"{a.n} disjoint lines")
    return _verdict("pi1", FAIL, f"{a.n} disjoint lines, an even set must have 8 or 16")


def check_pi2_pi3(a: Arrangement) -> Verdict:
    comps = components(a)
    if len(comps) == 1 and comps.components[0].shape == CYCLE:
        c = comps.components[0]
        return _verdict("pi2_pi3", FAIL, f"the whole arrangement is one cycle of length {c.length}")
    if len(comps) == 2 and all(c.shape == CYCLE for c in comps):
        l1, l2 = (c.length for c in comps)
        if l1 != l2:
            return _verdict("pi2_pi3", FAIL, f"two disjoint cycles of unequal lengths {l1} and {l2}")
        return _verdict("pi2_pi3", PASS, f"two disjoint cycles of equal length {l1}")
    return _verdict("pi2_pi3", INAPPLICABLE, "not one cycle or two cycles")


def chordless_cycles(a: Arrangement, min_len: int = 3, max_len: int | None = None) -> list[int]:
    """Vertex masks of all induced cycles with length in ``[min_len, max_len]``."""
    if max_len is None:
        max_len = a.n
    rows = a.rows
    found: set[int] = set()

    for s in range(a.n):
        higher = -(1 << (s + 1))

        # path s, p1, ..., last; blocked = neighbours of the interior vertices
        def extend(last: int, path: int, blocked: int, size: int) -> None:
            for v in _bits(rows[last] & higher & ~path & ~blocked):
                if rows[v] >> s & 1:
                    if size + 1 >= min_len:
                        found.add(path | (1 << v))
                    continue
                if size + 1 < max_len:
                    extend(v, path | (1 << v), blocked | rows[last], size + 1)

        for p1 in _bits(rows[s] & higher):
            extend(p1, (1 << s) | (1 << p1), 0, 2)
    return sorted(found, key=lambda m: (m.bit_count(), m))


def equal_cycle_pairs(a: Arrangement) -> list[tuple[int, int]]:
    """Pairs of vertex-disjoint, mutually non-adjacent induced cycles of equal length."""
    cycles = chordless_cycles(a, 3, a.n // 2)
    out = []
    for x in range(len(cycles)):
        c1 = cycles[x]
        reach = 0
        for v in _bits(c1):
            reach |= a.rows[v]
        for y in range(x + 1, len(cycles)):
            c2 = cycles[y]
            if c2.bit_count() != c1.bit_count():
                continue
            if c1 & c2 or reach & c2:
                continue
            out.append((c1, c2))
    return out


@lru_cache(maxsize=200_000)
def _passes_by_canon(canon: bytes, n: int, rows: tuple[int, ...]) -> bool:
    return run_pipeline(Arrangement(n, rows)).overall


def sub_arrangement_passes(a: Arrangement) -> bool:
    if a.n == 0:
        return True
    from evenlines.arrangement import canonical_arrangement

    c = canonical_arrangement(a)
    return _passes_by_canon(canonical_form(c), c.n, c.rows)


def complement_reduction(a: Arrangement) -> Verdict:
    pairs = equal_cycle_pairs(a)
    if not pairs:
        return _verdict("complement_reduction", INAPPLICABLE, "no pair of disjoint equal cycles")
    full = (1 << a.n) - 1
    seen: set[int] = set()
    for c1, c2 in pairs:
        rest = full & ~c1 & ~c2
        if rest in seen:
            continue
        seen.add(rest)
        sub = a.induced(list(_bits(rest)))
        if not sub_arrangement_passes(sub):
            return _verdict(
                "complement_reduction",
                FAIL,
                f"removing cycles {_names(_bits(c1))} and {_names(_bits(c2))} leaves "
                f"{_names(_bits(rest)) or 'nothing'}, which is not admissible",
            )
    return _verdict("complement_reduction", PASS, f"{len(seen)} complement(s) admissible")


# -- deduction engine --------------------------------------------------------

CONTRADICTION = "contradiction"
EXHAUSTED = "exhausted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class DeductionStep:
    current: DivisorClass
    rule: str
    justification: str

    def to_json(self) -> dict:
        return {"class": self.current.to_json(), "rule": self.rule, "justification": self.justification}


@dataclass(frozen=True)
class DeductionTrace:
    steps: tuple[DeductionStep, ...]
    outcome: str
    split_lines: tuple[int, ...] = ()

    @property
    def rules(self) -> list[str]:
        return [s.rule for s in self.steps]

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "split_lines": [i + 1 for i in self.split_lines],
            "steps": [s.to_json() for s in self.steps],
        }


def _fmt(x: Fraction) -> str:
    return str(x) if x.denominator != 1 else str(x.numerator)


def deduce(a: Arrangement) -> DeductionTrace:
    n, k = a.n, a.k
    start = half_class(a)
    if not half_class_effective_by_rr(n, k):
        return DeductionTrace(
            (DeductionStep(start, "R-start", f"k={k} <= n-8={n - 8}: effectivity not available"),),
            INCONCLUSIVE,
        )
    half_sq = pair(start, start)
    steps = [
        DeductionStep(
            start,
            "R-start",
            f"chi = 2 + (k-n)/4 = {_fmt(2 + Fraction(k - n, 4))} > 0, half class effective "
            f"(degree {_fmt(start.degree())}, square {_fmt(half_sq)})",
        )
    ]
    current = start
    split: list[int] = []
    while True:
        deg = current.degree()
        sq = pair(current, current)
        if deg < 0:
            steps.append(DeductionStep(current, "R-deg0", f"effective class of negative degree {_fmt(deg)}"))
            return DeductionTrace(tuple(steps), CONTRADICTION, tuple(split))
        if deg == 0:
            lines = lines_sum(a, split)
            lsq = pair(lines, lines)
            desc = "+".join(f"L{i + 1}" for i in split) or "0"
            bad = [i for i in range(n) if current.dot_line(i) != 0]
            if sq != 0 or bad:
                why = f"half class ~ {desc} with ({desc})^2 = {_fmt(lsq)} but half class^2 = {_fmt(half_sq)}"
                if sq == 0:
                    why = f"half class ~ {desc} but the remainder meets {_names(bad)}"
                steps.append(DeductionStep(current, "R-deg0", why))
                return DeductionTrace(tuple(steps), CONTRADICTION, tuple(split))
            steps.append(DeductionStep(current, "R-deg0", f"half class ~ {desc}, consistent"))
            return DeductionTrace(tuple(steps), EXHAUSTED, tuple(split))
        neg = next((i for i in range(n) if current.dot_line(i) < 0), None)
        if neg is not None:
            dot = current.dot_line(neg)
            current = current - lines_sum(a, [neg])
            split.append(neg)
            steps.append(
                DeductionStep(current, "R-split", f"C.L{neg + 1} = {_fmt(dot)} < 0, so L{neg + 1} splits off")
            )
            continue
        d = int(deg) if deg.denominator == 1 else None
        if d == 4 and sq >= 2:
            bad = [i for i in range(n) if current.dot_line(i) != 1]
            if sq != 4 or bad:
                why = f"degree 4 with C^2 = {_fmt(sq)} >= 2 forces C ~ H"
                why += ", but C^2 != 4" if sq != 4 else f", but C.L != 1 for {_names(bad)}"
                steps.append(DeductionStep(current, "R-plane", why))
                return DeductionTrace(tuple(steps), CONTRADICTION, tuple(split))
            steps.append(DeductionStep(current, "R-plane", "degree 4, C^2 = 4 and C pairs as H"))
            return DeductionTrace(tuple(steps), EXHAUSTED, tuple(split))
        if d in DEGREE_BOUND and sq > DEGREE_BOUND[d]:
            steps.append(
                DeductionStep(
                    current,
                    "R-bound",
                    f"effective of degree {d} needs C^2 <= {DEGREE_BOUND[d]}, got {_fmt(sq)}",
                )
            )
            return DeductionTrace(tuple(steps), CONTRADICTION, tuple(split))
        return DeductionTrace(tuple(steps), EXHAUSTED, tuple(split))


def check_deduce(a: Arrangement, trace: DeductionTrace | None = None) -> Verdict:
    if trace is None:
        trace = deduce(a)
    if trace.outcome == CONTRADICTION:
        return _verdict("deduce", FAIL, trace.steps[-1].justification)
    if trace.outcome == INCONCLUSIVE:
        return _verdict("deduce", INAPPLICABLE, trace.steps[-1].justification)
    return _verdict("deduce", PASS, f"fixpoint after {len(trace.steps) - 1} step(s), no contradiction")


# -- counting ----------------------------------------------------------------

def type_vector_solutions(n: int, k: int, excluded: Iterable[int] = ()) -> list[dict[int, int]]:
    """Nonnegative (n_0, n_2, ...) with sum n_l = n and sum l*n_l = 2k.

    Only even degrees up to n - 2 are allowed, minus ``excluded``.
    """
    excl = set(excluded)
    degs = [l for l in range(0, max(n - 1, 1), 2) if l not in excl]
    out = []

    def rec(idx: int, left: int, need: int, acc: list[int]) -> None:
        if idx == len(degs):
            if left == 0 and need == 0:
                out.append({l: c for l, c in zip(degs, acc) if c})
            return
        l = degs[idx]
        top = left if l == 0 else min(left, need // l)
        for c in range(top + 1):
            rec(idx + 1, left - c, need - c * l, acc + [c])

    rec(0, n, 2 * k, [])
    return out


def excluded_degrees(n: int, k: int) -> set[int]:
    """Line degrees a single split already rules out in the (n, k) stratum.

    A 0-line pairs with the half class as -1 and splits off, leaving degree
    n/2 - 1 and square (k - n)/2; if that violates a degree bound no 0-line
    can occur.
    """
    out: set[int] = set()
    if n % 2 or not half_class_effective_by_rr(n, k):
        return out
    d = n // 2 - 1
    sq = Fraction(k - n, 2)
    if d < 0 or (d == 0 and sq != 0) or (d in DEGREE_BOUND and sq > DEGREE_BOUND[d]) or (d == 4 and sq in (2, 3)):
        out.add(0)
    return out


def check_counting_profile(n: int, k: int, excluded: Iterable[int] = ()) -> Verdict:
    sols = type_vector_solutions(n, k, excluded)
    if not sols:
        ex = sorted(set(excluded))
        return _verdict("counting", FAIL, f"no nonnegative type vector for n={n}, k={k} without degrees {ex}")
    return _verdict("counting", PASS, f"{len(sols)} admissible type vector(s)")


def check_counting(a: Arrangement) -> Verdict:
    n, k = a.n, a.k
    if n % 2 or any(d % 2 for d in a.degrees):
        return _verdict("counting", INAPPLICABLE, "odd line count or odd degrees")
    excl = excluded_degrees(n, k)
    sols = type_vector_solutions(n, k, excl)
    tv: dict[int, int] = {}
    for d in a.degrees:
        tv[d] = tv.get(d, 0) + 1
    if tv not in sols:
        bad = sorted(set(tv) & excl)
        return _verdict(
            "counting",
            FAIL,
            f"type vector {dict(sorted(tv.items()))} outside the admissible solutions (excluded degrees {bad})",
        )
    return _verdict("counting", PASS, f"type vector among {len(sols)} admissible solution(s)")


# -- pipeline ----------------------------------------------------------------

@dataclass(frozen=True)
class FilterReport:
    graph6: str
    verdicts: tuple[Verdict, ...]
    trace: DeductionTrace = field(compare=False)

    @property
    def overall(self) -> bool:
        return all(v.status != FAIL for v in self.verdicts)

    def verdict(self, rule: str) -> Verdict:
        for v in self.verdicts:
            if v.rule == rule:
                return v
        raise KeyError(rule)

    @property
    def failed(self) -> list[str]:
        return [v.rule for v in self.verdicts if v.status == FAIL]

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "verdicts": [v.to_json() for v in self.verdicts],
            "overall": "pass" if self.overall else "fail",
        }


def run_pipeline(a: Arrangement) -> FilterReport:
    trace = deduce(a)
    verdicts = (
        check_planes(a),
        check_parity(a),
        check_degrees_even(a),
        check_k_bound(a),
        check_mod4(a),
        check_pi1(a),
        check_pi2_pi3(a),
        complement_reduction(a),
        check_deduce(a, trace),
        check_counting(a),
    )
    return FilterReport(encode_graph6(a), verdicts, trace)


def passes(a: Arrangement) -> bool:
    return run_pipeline(a).overall
