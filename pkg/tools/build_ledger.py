"""Regenerate src/evenlines/data/ledger.json.

Runs the enumerator for n = 8 and n = 10, drops catalog matches, and routes
every remaining survivor through an ordered table of case predicates.  Each
predicate pins down the branch of the hand classification the graph falls
into; the attached quote is the sentence that closes that branch.  A survivor
that no predicate claims aborts the build.

    python tools/build_ledger.py [--check] [--paper PATH]

``--check`` compares against the shipped file instead of writing it.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from pathlib import Path

from evenlines.arrangement import Arrangement, decode_graph6
from evenlines.catalog import ExclusionEntry, ledger_json, match
from evenlines.enumerator import EnumerationTask, enumerate_survivors

ROOT = Path(__file__).resolve().parent.parent
LEDGER = ROOT / "src" / "evenlines" / "data" / "ledger.json"


def lines_of(a: Arrangement, deg: int) -> list[int]:
    return [v for v in range(a.n) if a.degrees[v] == deg]


def two_line_degrees(a: Arrangement) -> list[int]:
    """For each 2-line, how many other 2-lines it meets."""
    two = lines_of(a, 2)
    return [sum(a.meets(v, w) for w in two) for v in two]


def meeting_two_pairs_share(a: Arrangement, deg: int) -> bool:
    """Two meeting 2-lines that both meet one line of degree ``deg``."""
    two = lines_of(a, 2)
    for u, v in combinations(two, 2):
        if a.meets(u, v):
            for w in lines_of(a, deg):
                if a.meets(u, w) and a.meets(v, w):
                    return True
    return False


def high_graph(a: Arrangement, deg: int) -> Arrangement:
    return a.induced(lines_of(a, deg))


def shape(g: Arrangement) -> str:
    """Name of a graph on four vertices, enough for the 4-line cases."""
    degs = sorted(g.degrees)
    e = g.k
    if 0 in degs:
        return "isolated"
    if e == 2:
        return "matching"
    if e == 3:
        return "star" if degs == [1, 1, 1, 3] else "path"
    if e == 4:
        return "cycle" if degs == [2, 2, 2, 2] else "paw"
    return "dense"


def triangles(a: Arrangement):
    return [t for t in combinations(range(a.n), 3)
            if a.meets(t[0], t[1]) and a.meets(t[1], t[2]) and a.meets(t[0], t[2])]


def has_isolated_star(a: Arrangement) -> bool:
    """A 4-line whose four neighbours are pairwise skew."""
    for v in lines_of(a, 4):
        nb = a.neighbors(v)
        if not any(a.meets(x, y) for x, y in combinations(nb, 2)):
            return True
    return False


EIGHT = "5.4"
TEN = "5.5"

# (n, k, predicate, section, quote, tag, note); first match wins.
RULES = [
    (8, 8, lambda a: True, EIGHT,
     "would meet at most the line $L_8$ from $\\Lambda$. Contradiction!",
     "fibration-component",
     "the pencil has a fixed 0-line; the 2-lines are fibre components that cannot fill a fibre"),

    (10, 10, lambda a: a.degrees.count(0) == 1, TEN,
     "and ${\\cal L}$ would be linearly equivalent to the sum",
     "h0-splitting",
     "one 0-line: a member of |L| through a 2-line splits off a string, the 4-line and too many lines"),
    (10, 10, lambda a: a.degrees.count(6) == 1, TEN,
     "Then $C.L_{10}=3$, a contradiction.",
     "fibration-component",
     "two 0-lines: the 6-line would be residual to a cubic elliptic fibration"),
    (10, 10, lambda a: max(two_line_degrees(a)) >= 2, TEN,
     "There cannot be three $2$-lines in a fibre",
     "fibration-component",
     "two 0-lines: a 2-line meeting two 2-lines puts three 2-lines in one fibre"),
    (10, 10, lambda a: meeting_two_pairs_share(a, 4), TEN,
     "then they cannot both meet the same",
     "fibration-component",
     "two 0-lines: a meeting pair of 2-lines both meet a 4-line that is a section"),

    (10, 14, lambda a: max(two_line_degrees(a)) >= 2, TEN,
     "it is impossible, that a $2$-line, say $L_2$, meets two other",
     "h0-splitting",
     "a 2-line meets two 2-lines; the residual conic gives L^2 <= 0"),
    (10, 14, lambda a: a.degrees.count(8) == 1 and high_graph(a, 4).n == 1
     and not any(a.meets(u, v) for u in lines_of(a, 4) for v in lines_of(a, 8)), TEN,
     "$L_1,...,L_5$ too and consists of six lines, contradiction.",
     "h0-splitting",
     "one 8-line skew to the 4-line"),
    (10, 14, lambda a: a.degrees.count(8) == 1, TEN,
     "Then $L_1$ and $L_2$, being coplanar,",
     "planar-count",
     "one 8-line meeting the 4-line"),
    (10, 14, lambda a: a.degrees.count(6) == 2
     and a.meets(*lines_of(a, 6)), TEN,
     "lie in this plane, contradiction!",
     "planar-count",
     "two meeting 6-lines"),
    (10, 14, lambda a: a.degrees.count(6) == 2, TEN,
     "Only two more points",
     "h0-splitting",
     "two skew 6-lines; the line through both 2-line strings must be auxiliary"),
    (10, 14, lambda a: a.degrees.count(6) == 1 and any(
        not any(a.meets(v, w) for w in lines_of(a, 4) + lines_of(a, 6) if w != v)
        for v in lines_of(a, 4)), TEN,
     "But this causes the contradiction $\\Lambda.L_9=\\Lambda.L_{10}=0$.",
     "h0-splitting",
     "one 6-line, a 4-line skew to both other lines of degree at least four"),
    (10, 14, lambda a: a.degrees.count(6) == 1 and a.meets(*lines_of(a, 4))
     and sum(a.meets(v, lines_of(a, 6)[0]) for v in lines_of(a, 4)) == 2, TEN,
     "because this plane would have to contain a",
     "planar-count",
     "one 6-line, the three lines of degree at least four form a triangle"),
    (10, 14, lambda a: a.degrees.count(6) == 1 and a.meets(*lines_of(a, 4))
     and sum(a.meets(v, lines_of(a, 6)[0]) for v in lines_of(a, 4)) == 1, TEN,
     "So the plane of $L_9$ and $L_{10}$ contains two $2$-lines,",
     "planar-count",
     "one 6-line meeting exactly one of two meeting 4-lines"),
    (10, 14, lambda a: a.degrees.count(6) == 1 and not a.meets(*lines_of(a, 4)), TEN,
     "because then a divisor $D \\sim {\\cal L}$ would split off $L_8+L_{10}$ and",
     "h0-splitting",
     "one 6-line meeting both skew 4-lines; only the pattern with a meeting pair of 2-lines on the 6-line survives"),
    (10, 14, lambda a: a.degrees.count(6) == 1 and a.meets(*lines_of(a, 4)), TEN,
     "splitting off $L_8+L_9$ as well as the at least five $2$-lines meeting them,",
     "h0-splitting",
     "one 6-line skew to two meeting 4-lines"),
    (10, 14, lambda a: a.degrees.count(4) == 4 and shape(high_graph(a, 4)) == "isolated", TEN,
     "If a $4$-line doesn't meet another $4$-line, it",
     "h0-splitting",
     "four 4-lines, one of them skew to the other three"),
    (10, 14, lambda a: a.degrees.count(4) == 4 and shape(high_graph(a, 4)) == "matching", TEN,
     "Hence $L_1,L_2,L_3$ join points on $L_7$ with points on",
     "h0-splitting",
     "four 4-lines meeting in two pairs; only the pattern joining L7 to L9 survives"),
    (10, 14, lambda a: a.degrees.count(4) == 4 and high_graph(a, 4).k >= 5, TEN,
     "of meeting $2$-lines. By the observation above, $d \\leq 4$.",
     "h0-splitting",
     "four 4-lines with at least five mutual intersection points"),
    (10, 14, lambda a: a.degrees.count(4) == 4 and shape(high_graph(a, 4)) == "path", TEN,
     "${\\cal L}^2=0$ unless $L_2.L_3=1$. This is type $\\Lambda_8(10)$.",
     "h0-splitting",
     "four 4-lines forming a string"),
    (10, 14, lambda a: a.degrees.count(4) == 4 and shape(high_graph(a, 4)) == "cycle", TEN,
     "${\\cal L}$ would split off all ten lines, contradiction.",
     "h0-splitting",
     "four 4-lines forming a spatial quadrangle"),
    (10, 14, lambda a: a.degrees.count(4) == 4 and shape(high_graph(a, 4)) == "paw", TEN,
     "all the lines, contradiction!",
     "h0-splitting",
     "four 4-lines forming a triangle with one pendant line"),
    (10, 14, lambda a: a.degrees.count(4) == 4 and shape(high_graph(a, 4)) == "star", TEN,
     "As $L_8$ meets all other $4$-lines,",
     "h0-splitting",
     "four 4-lines forming a star; not treated separately in the source, which lists only the "
     "string for three intersection points. The splitting argument for a 4-line meeting all "
     "other 4-lines is applied to the centre by analogy (unverified)"),

    (10, 18, lambda a: a.degrees.count(2) > 0, TEN,
     "But $\\Lambda$ will not contain any $2$-line either: If",
     "h0-splitting",
     "no 0-line; a 2-line forces the residual quartic to be a plane section"),
    (10, 18, lambda a: a.degrees.count(0) == 1 and has_isolated_star(a), TEN,
     "one triangle of $4$-lines. Indeed, if",
     "planar-count",
     "0-line; a 4-line lies in no triangle of 4-lines"),
]


def classify(n: int, a: Arrangement):
    for rn, rk, pred, section, quote, tag, note in RULES:
        if rn == n and rk == a.k and pred(a):
            return section, quote, tag, note
    return None


def build(jobs: int = 1) -> list[ExclusionEntry]:
    entries = []
    missing = []
    for n in (8, 10):
        s = enumerate_survivors(EnumerationTask.for_n(n), jobs=jobs)
        for x in s.survivors:
            a = decode_graph6(x.graph6)
            if match(a) is not None:
                continue
            hit = classify(n, a)
            if hit is None:
                missing.append(x.graph6)
                continue
            section, quote, tag, note = hit
            entries.append(ExclusionEntry(x.graph6, n, a.k, section, quote, tag, note))
    if missing:
        raise SystemExit(f"no case predicate claims: {missing}")
    entries.sort(key=lambda e: (e.n, e.k, e.graph6))
    return entries


def check_quotes(entries, paper: Path) -> list[str]:
    text = paper.read_text(encoding="utf-8")
    return sorted({e.quote for e in entries if e.quote not in text})


def main(argv=None) -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--check", action="store_true")
    ap.add_argument("--paper", type=Path, default=ROOT / "paper.md")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)
    entries = build(args.jobs)
    if args.paper.exists():
        bad = check_quotes(entries, args.paper)
        if bad:
            print("quotes not found verbatim:", *bad, sep="\n  ", file=sys.stderr)
            return 1
    text = json.dumps(ledger_json(entries), indent=1, sort_keys=True, ensure_ascii=False) + "\n"
    if args.check:
        same = LEDGER.exists() and LEDGER.read_text(encoding="utf-8") == text
        print("ledger up to date" if same else "ledger differs")
        return 0 if same else 1
    LEDGER.write_text(text, encoding="utf-8")
    counts: dict[tuple, int] = {}
    for e in entries:
        counts[(e.n, e.k, e.note)] = counts.get((e.n, e.k, e.note), 0) + 1
    for key, c in sorted(counts.items()):
        print(c, *key)
    print(len(entries), "entries")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
