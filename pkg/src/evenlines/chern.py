"""Chern invariants of the minimal double cover branched along an arrangement.

Everything is closed form in (n, k, n0), n0 being the number of lines that
meet no other line.  Blowing up the k intersection points and taking the
double cover gives c1^2 = k - n and c2 = 48 + 2(k - n); contracting the
n0 exceptional curves over the isolated lines adds n0 to c1^2 and removes
n0 from c2.

The formulas assume no three lines pass through one point.  An incidence
graph cannot tell a concurrent triple from a triangle, so every report
carries that assumption instead of checking it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable

from evenlines.arrangement import Arrangement, canonical_form

ASSUMPTION = "no three lines of the arrangement are concurrent"

# double covers that are not of general type; the Noether bound does not apply
NOT_GENERAL_TYPE = frozenset({"Λ(6)", "Λ_1(8)", "Λ_2(8)", "Λ_1(10)", "Λ_2(10)"})


@dataclass(frozen=True)
class ChernReport:
    n: int
    k: int
    n0: int
    c1sq_Ytilde: int
    c2_Ytilde: int
    c1sq_Y: int
    c2_Y: int
    chi_OY: int | None
    my_slack: int
    noether_slack: int | None
    assumption: str = ASSUMPTION

    @property
    def divisible(self) -> bool:
        return (self.c1sq_Y + self.c2_Y) % 12 == 0

    def to_json(self) -> dict:
        return asdict(self)


def chern_profile(n: int, k: int, n0: int, general_type: bool = True) -> ChernReport:
    c1t = k - n
    c2t = 48 + 2 * (k - n)
    c1 = c1t + n0
    c2 = c2t - n0
    total = c1 + c2
    return ChernReport(
        n=n,
        k=k,
        n0=n0,
        c1sq_Ytilde=c1t,
        c2_Ytilde=c2t,
        c1sq_Y=c1,
        c2_Y=c2,
        chi_OY=total // 12 if total % 12 == 0 else None,
        my_slack=144 + 5 * k - (5 * n + 4 * n0),
        noether_slack=3 * (k - n) + 6 * n0 - 12 if general_type else None,
    )


def _general_type(a: Arrangement) -> bool:
    # local import: the catalog pulls in the enumerator
    from evenlines.catalog import matches

    return not (set(matches(a)) & NOT_GENERAL_TYPE)


def chern_numbers(a: Arrangement) -> ChernReport:
    return chern_profile(a.n, a.k, a.degrees.count(0), _general_type(a))


def miyaoka_yau(a: Arrangement) -> int:
    """Slack in 3 c2 >= c1^2, rewritten as 144 + 5k - (5n + 4 n0) >= 0."""
    return chern_numbers(a).my_slack


def noether_inequality(a: Arrangement) -> int | None:
    """Slack in c1^2 >= 2 chi - 6; None when the cover is not of general type."""
    return chern_numbers(a).noether_slack


TABLE_COLUMNS = ("graph6", "n", "k", "n0", "c1sq_Y", "c2_Y", "chi_OY", "my_slack", "noether_slack")


def chern_table(arrangements: Iterable[Arrangement]) -> str:
    """Aligned plain-text table, one row per arrangement."""
    rows = [TABLE_COLUMNS]
    for a in arrangements:
        r = chern_numbers(a)
        rows.append((
            canonical_form(a).decode(), str(r.n), str(r.k), str(r.n0), str(r.c1sq_Y), str(r.c2_Y),
            "-" if r.chi_OY is None else str(r.chi_OY), str(r.my_slack),
            "-" if r.noether_slack is None else str(r.noether_slack),
        ))
    widths = [max(len(row[i]) for row in rows) for i in range(len(TABLE_COLUMNS))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n" + f"# assumes {ASSUMPTION}\n"
