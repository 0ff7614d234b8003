"""Known even arrangements, the exclusion ledger, and survivor reconciliation.

The catalog lists the classified types with their incidence data and the
argument that makes each one even.  The ledger pairs every filter survivor
that is *not* a catalog type with the manual contradiction that removes it;
those arguments (fixed components of elliptic pencils, choosing members of
a linear system through given points, point counts on lines) are not
mechanized by the filters.

Matched survivors are only candidates: whether the types with ten lines
actually occur on a smooth quartic is not settled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import permutations
from pathlib import Path
from typing import Iterable

from evenlines.arrangement import Arrangement, canonical_form, decode_graph6, encode_graph6
from evenlines.enumerator import SurvivorSet

ARGUMENT_TAGS = ("fibration-component", "h0-splitting", "planar-count")


class InternalInconsistency(RuntimeError):
    pass


@dataclass(frozen=True)
class Certificate:
    kind: str
    sketch: str
    section: str
    quote: str
    gap: bool = False

    def to_json(self) -> dict:
        d = {"kind": self.kind, "sketch": self.sketch, "section": self.section, "quote": self.quote}
        if self.gap:
            d["gap"] = True
        return d


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    n: int
    k: int
    graphs: tuple[Arrangement, ...]
    certificate: Certificate
    auxiliary_lines: int = 0
    surface: str = "general"

    @property
    def graph6(self) -> tuple[str, ...]:
        return tuple(canonical_form(g).decode() for g in self.graphs)

    @property
    def general_type(self) -> bool:
        """False for the types whose double cover is elliptic or abelian."""
        return self.surface == "general"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "n": self.n,
            "k": self.k,
            "graph6": list(self.graph6),
            "certificate": self.certificate.to_json(),
            "auxiliary_lines": self.auxiliary_lines,
            "status": "candidate" if self.n == 10 else "classified",
        }


@dataclass(frozen=True)
class ExclusionEntry:
    graph6: str
    n: int
    k: int
    section: str
    quote: str
    argument_tag: str
    note: str = ""

    @property
    def stratum(self) -> tuple[int, int]:
        return (self.n, self.k)

    def to_json(self) -> dict:
        return {
            "graph6": self.graph6,
            "stratum": [self.n, self.k],
            "citation": {"section": self.section, "quote": self.quote},
            "argument_tag": self.argument_tag,
            "note": self.note,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExclusionEntry":
        n, k = obj["stratum"]
        return cls(
            obj["graph6"],
            int(n),
            int(k),
            obj["citation"]["section"],
            obj["citation"]["quote"],
            obj["argument_tag"],
            obj.get("note", ""),
        )


def _data(name: str):
    return resources.files("evenlines").joinpath(f"data/{name}")


def _from_edges(n: int, edges: Iterable[Iterable[int]]) -> Arrangement:
    return Arrangement.from_edges(n, [(i - 1, j - 1) for i, j in edges])


def derive_lambda11_subcases() -> list[Arrangement]:
    """Three triangles, a 0-line, and every matching between the last two triangles.

    The first triangle L2, L3, L4 meets the others along L2.L5 = L2.L8 = 1,
    L3.L6 = L3.L9 = 1, L4.L7 = L4.L10 = 1; each line of L5, L6, L7 meets
    exactly one of L8, L9, L10.  The six bijections collapse to three
    isomorphism classes.
    """
    base = [(2, 3), (3, 4), (2, 4), (5, 6), (6, 7), (5, 7), (8, 9), (9, 10), (8, 10),
            (2, 5), (2, 8), (3, 6), (3, 9), (4, 7), (4, 10)]
    seen: dict[bytes, Arrangement] = {}
    for perm in permutations((8, 9, 10)):
        edges = base + [(5 + i, perm[i]) for i in range(3)]
        a = _from_edges(10, edges)
        seen.setdefault(canonical_form(a), a)
    out = [seen[c] for c in sorted(seen)]
    if len(out) != 3:
        raise InternalInconsistency(f"expected 3 subcases, found {len(out)}")
    return out


@lru_cache(maxsize=None)
def builtin_catalog() -> tuple[CatalogEntry, ...]:
    raw = json.loads(_data("catalog.json").read_text(encoding="utf-8"))
    out = []
    for e in raw["entries"]:
        if e.get("derive") == "lambda11":
            graphs = tuple(derive_lambda11_subcases())
        else:
            graphs = (_from_edges(e["n"], e["edges"]),)
        c = e["certificate"]
        cert = Certificate(c["kind"], c["sketch"], c["section"], c["quote"], c.get("gap", False))
        entry = CatalogEntry(e["id"], e["n"], e["k"], graphs, cert, e["auxiliary_lines"], e["surface"])
        for g in graphs:
            if g.k != entry.k:
                raise InternalInconsistency(f"{entry.id}: stored k={entry.k}, graph has k={g.k}")
        out.append(entry)
    return tuple(out)


def catalog_entry(entry_id: str) -> CatalogEntry:
    for e in builtin_catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


@lru_cache(maxsize=None)
def _catalog_index() -> dict[str, tuple[str, ...]]:
    # One graph class may carry two ids: the K_{3,3} description of the
    # ten-line type with a single triangle plane is isomorphic to one of
    # the three-triangle subcases.
    index: dict[str, tuple[str, ...]] = {}
    for e in builtin_catalog():
        for g6 in dict.fromkeys(e.graph6):
            index[g6] = index.get(g6, ()) + (e.id,)
    return index


def shared_classes() -> dict[str, tuple[str, ...]]:
    """Graph classes listed under more than one catalog id."""
    return {g: ids for g, ids in _catalog_index().items() if len(ids) > 1}


def matches(a: Arrangement) -> tuple[str, ...]:
    """Every catalog id whose graph class contains ``a``."""
    return _catalog_index().get(canonical_form(a).decode(), ())


def match(a: Arrangement) -> str | None:
    """First catalog id whose graph class contains ``a``, or None."""
    ids = matches(a)
    return ids[0] if ids else None


# -- ledger ------------------------------------------------------------------

def load_ledger(path: str | Path | None = None) -> list[ExclusionEntry]:
    if path is None:
        text = _data("ledger.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    raw = json.loads(text)
    return [ExclusionEntry.from_json(x) for x in raw["entries"]]


def ledger_json(entries: Iterable[ExclusionEntry]) -> dict:
    return {"version": 1, "entries": [e.to_json() for e in entries]}


@dataclass
class Classification:
    matched: dict[str, list[str]] = field(default_factory=dict)
    excluded: dict[str, ExclusionEntry] = field(default_factory=dict)
    unknown: list[str] = field(default_factory=list)

    @property
    def validated(self) -> bool:
        return not self.unknown

    @property
    def matched_ids(self) -> set[str]:
        return set(self.matched)

    def to_json(self) -> dict:
        return {
            "matched": {k: sorted(v) for k, v in sorted(self.matched.items())},
            "excluded": [
                {"graph6": g, "stratum": list(e.stratum), "argument_tag": e.argument_tag,
                 "citation": {"section": e.section, "quote": e.quote}}
                for g, e in sorted(self.excluded.items())
            ],
            "unknown": sorted(self.unknown),
            "counts": {
                "matched": sum(len(v) for v in self.matched.values()),
                "excluded": len(self.excluded),
                "unknown": len(self.unknown),
            },
        }


def classify_graphs(graphs: Iterable[Arrangement], ledger: Iterable[ExclusionEntry]) -> Classification:
    by_g6 = {e.graph6: e for e in ledger}
    out = Classification()
    for a in graphs:
        g6 = canonical_form(a).decode()
        ids = _catalog_index().get(g6, ())
        for cid in ids:
            out.matched.setdefault(cid, []).append(g6)
        if ids:
            continue
        if g6 in by_g6:
            out.excluded[g6] = by_g6[g6]
        else:
            out.unknown.append(g6)
    return out


def classify_survivors(s: SurvivorSet, ledger: Iterable[ExclusionEntry] | None = None) -> Classification:
    if ledger is None:
        ledger = load_ledger()
    return classify_graphs((decode_graph6(x.graph6) for x in s.survivors), ledger)


def catalog_json() -> dict:
    return {"version": 1, "entries": [e.to_json() for e in builtin_catalog()]}


def catalog_graph6_lines() -> list[str]:
    return [g for e in builtin_catalog() for g in e.graph6]


__all__ = [
    "ARGUMENT_TAGS",
    "CatalogEntry",
    "Certificate",
    "Classification",
    "ExclusionEntry",
    "InternalInconsistency",
    "builtin_catalog",
    "catalog_entry",
    "catalog_graph6_lines",
    "catalog_json",
    "classify_graphs",
    "classify_survivors",
    "derive_lambda11_subcases",
    "encode_graph6",
    "ledger_json",
    "load_ledger",
    "match",
    "matches",
    "shared_classes",
]
