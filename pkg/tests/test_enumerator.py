from itertools import combinations

import networkx as nx
import pytest

from evenlines.arrangement import Arrangement, canonical_form, decode_graph6
from evenlines.enumerator import (
    EnumerationTask,
    ResourceLimit,
    admissible_k,
    brute_force_oracle,
    enumerate_partial,
    enumerate_survivors,
    generate_even,
)
from evenlines.filters import run_pipeline


def test_admissible_k():
    assert admissible_k(2) == ()
    assert admissible_k(6) == (2, 6, 10)
    assert admissible_k(8) == (0, 4, 8, 12, 16, 20, 24)
    assert admissible_k(10) == (2, 6, 10, 14, 18)


@pytest.mark.parametrize("n", [2, 4])
def test_small_n_empty(n):
    assert len(enumerate_survivors(EnumerationTask.for_n(n))) == 0


def test_n6_single_class():
    s = enumerate_survivors(EnumerationTask.for_n(6))
    assert len(s) == 1
    a = decode_graph6(s.survivors[0].graph6)
    assert a.k == 6 and sorted(a.degrees) == [2] * 6
    assert canonical_form(a) == canonical_form(Arrangement.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))


@pytest.mark.parametrize("n", [2, 4, 6])
def test_matches_brute_force_oracle(n):
    ours = enumerate_survivors(EnumerationTask.for_n(n))
    oracle = brute_force_oracle(n)
    assert {canonical_form(decode_graph6(g)) for g in ours.graph6_set} == {
        canonical_form(decode_graph6(g)) for g in oracle.graph6_set
    }


def test_oracle_limit():
    with pytest.raises(ValueError):
        brute_force_oracle(7)


# -- independent naive generator ---------------------------------------------

def _nx(a: Arrangement) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(a.n))
    g.add_edges_from(a.edges)
    return g


def _allowed(g: nx.Graph, max_deg: int, max_edges: int) -> bool:
    if g.number_of_edges() > max_edges or any(d > max_deg for _, d in g.degree()):
        return False
    if any(len(c) >= 5 for c in nx.find_cliques(g)):
        return False
    # induced diamond: an edge whose endpoints share two non-adjacent neighbours
    for u, v in g.edges():
        common = set(g[u]) & set(g[v])
        if any(not g.has_edge(x, y) for x, y in combinations(common, 2)):
            return False
    return True


def naive_even_graphs(n: int, max_deg: int, max_edges: int, ks) -> list[Arrangement]:
    """Vertex-by-vertex growth with isomorphism dedupe done entirely by networkx."""
    level = [nx.empty_graph(1)]
    for m in range(1, n):
        buckets: dict[str, list[nx.Graph]] = {}
        nxt = []
        for g in level:
            for r in range(m + 1):
                for nb in combinations(range(m), r):
                    h = g.copy()
                    h.add_node(m)
                    h.add_edges_from((m, x) for x in nb)
                    if not _allowed(h, max_deg, max_edges):
                        continue
                    key = nx.weisfeiler_lehman_graph_hash(h)
                    bucket = buckets.setdefault(key, [])
                    if any(nx.is_isomorphic(h, x) for x in bucket):
                        continue
                    bucket.append(h)
                    nxt.append(h)
        level = nxt
    out = []
    for g in level:
        if all(d % 2 == 0 for _, d in g.degree()) and g.number_of_edges() in ks:
            out.append(Arrangement.from_edges(n, list(g.edges())))
    return out


@pytest.mark.slow
def test_n8_against_naive_generator(survivors8):
    task = EnumerationTask.for_n(8)
    naive = naive_even_graphs(8, task.max_degree, task.max_edges, set(task.ks))
    certs, *_ = generate_even(task)
    assert len(certs) == len(naive)
    naive_survivors = {canonical_form(a) for a in naive if run_pipeline(a).overall}
    ours = {canonical_form(decode_graph6(g)) for g in survivors8.graph6_set}
    assert ours == naive_survivors
    assert len(ours) == 6


def test_survivor_sets_pairwise_non_isomorphic(survivors10):
    graphs = [_nx(decode_graph6(g)) for g in sorted(survivors10.graph6_set)]
    by_key: dict = {}
    for g in graphs:
        key = (g.number_of_edges(), tuple(sorted(d for _, d in g.degree())))
        for h in by_key.get(key, []):
            assert not nx.is_isomorphic(g, h)
        by_key.setdefault(key, []).append(g)


def test_counts_by_k(survivors8, survivors10):
    assert {k: len(v) for k, v in survivors8.by_k().items() if v} == {0: 1, 8: 3, 16: 2}
    assert {k: len(v) for k, v in survivors10.by_k().items() if v} == {6: 1, 10: 12, 14: 72, 18: 28}


def test_deterministic_output():
    a = enumerate_survivors(EnumerationTask.for_n(8))
    b = enumerate_survivors(EnumerationTask.for_n(8))
    assert [s.graph6 for s in a.survivors] == [s.graph6 for s in b.survivors]
    assert a.summary() == b.summary()


def test_parallel_matches_serial(survivors10):
    par = enumerate_survivors(EnumerationTask.for_n(10), jobs=2)
    assert [s.graph6 for s in par.survivors] == [s.graph6 for s in survivors10.survivors]


def test_single_k_restriction(survivors10):
    only = enumerate_survivors(EnumerationTask.for_n(10, k=10))
    assert only.graph6_set == {s.graph6 for s in survivors10.survivors if s.k == 10}


def test_budget():
    with pytest.raises(ResourceLimit) as exc:
        enumerate_survivors(EnumerationTask.for_n(10, budget=50))
    assert exc.value.budget == 50 and exc.value.used > 50
    partial = enumerate_partial(EnumerationTask.for_n(10, budget=50))
    assert not partial.complete
    assert enumerate_survivors(EnumerationTask.for_n(6, budget=10_000)).complete


def test_summary_shape():
    s = enumerate_survivors(EnumerationTask.for_n(6)).summary()
    assert s["n"] == 6 and s["classes"] == 1 and s["complete"] is True
    assert set(s) == {"n", "ks", "classes", "count_by_k", "complete", "node_budget_used"}
