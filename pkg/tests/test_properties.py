"""Randomized and exhaustive invariance checks against independent oracles."""

import random
from fractions import Fraction
from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from evenlines.arrangement import Arrangement, canonical_form, decode_graph6, encode_graph6
from evenlines.canon import canonical_labeling, orbits
from evenlines.lattice import DivisorClass, half_class, hyperplane, line, pair, total_class


@st.composite
def arrangements(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Arrangement.from_edges(n, [p for p, b in zip(pairs, mask) if b])


def to_nx(a: Arrangement) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(a.n))
    g.add_edges_from(a.edges)
    return g


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        yield Arrangement.from_edges(n, [p for b, p in enumerate(pairs) if code >> b & 1])


@pytest.mark.parametrize("n", range(1, 6))
def test_canonical_form_exhaustive_small(n):
    """Every labeled graph on n <= 5 vertices: one canonical string per isomorphism class."""
    classes: dict[bytes, nx.Graph] = {}
    for a in all_graphs(n):
        c = canonical_form(a)
        if c in classes:
            assert nx.is_isomorphic(classes[c], to_nx(a))
        else:
            classes[c] = to_nx(a)
    reps = list(classes.values())
    for x, y in combinations(reps, 2):
        assert not nx.is_isomorphic(x, y)
    # number of unlabeled graphs on n vertices (OEIS A000088)
    assert len(classes) == [1, 1, 2, 4, 11, 34][n]


def test_canonical_form_exhaustive_six():
    classes = {canonical_form(a) for a in all_graphs(6)}
    assert len(classes) == 156


def test_relabel_invariance_every_permutation_n6():
    rng = random.Random(6)
    perms = list(permutations(range(6)))
    for _ in range(20):
        a = Arrangement.from_edges(6, [p for p in combinations(range(6), 2) if rng.random() < 0.5])
        c = canonical_form(a)
        assert all(canonical_form(a.relabel(p)) == c for p in perms)


@settings(max_examples=200, deadline=None)
@given(arrangements(12), st.randoms(use_true_random=False))
def test_relabel_invariance_random(a, rnd):
    perm = list(range(a.n))
    rnd.shuffle(perm)
    assert canonical_form(a.relabel(perm)) == canonical_form(a)


@settings(max_examples=150, deadline=None)
@given(arrangements(9), arrangements(9))
def test_canonical_agrees_with_networkx(a, b):
    if a.n != b.n:
        return
    assert (canonical_form(a) == canonical_form(b)) == nx.is_isomorphic(to_nx(a), to_nx(b))


def same_orbit(g: nx.Graph, v: int, w: int) -> bool:
    """Is there an automorphism sending v to w?  Decided by marking both ends."""
    g1, g2 = g.copy(), g.copy()
    nx.set_node_attributes(g1, {u: u == v for u in g1}, "mark")
    nx.set_node_attributes(g2, {u: u == w for u in g2}, "mark")
    return nx.is_isomorphic(g1, g2, node_match=lambda p, q: p["mark"] == q["mark"])


@settings(max_examples=60, deadline=None)
@given(arrangements(8))
def test_automorphism_generators_and_orbits(a):
    lab = canonical_labeling(a.rows)
    for gen in lab.generators:
        assert a.relabel(gen) == a
    g = to_nx(a)
    rep = orbits(a.n, lab.generators)
    for v in range(a.n):
        for w in range(v + 1, a.n):
            assert (rep[v] == rep[w]) == same_orbit(g, v, w)


@settings(max_examples=300, deadline=None)
@given(arrangements(20))
def test_graph6_round_trip(a):
    text = encode_graph6(a)
    assert decode_graph6(text) == a
    assert text == nx.to_graph6_bytes(to_nx(a), header=False).decode().strip()


# -- pairing -----------------------------------------------------------------

def gram_matrix(a: Arrangement) -> list[list[int]]:
    """Intersection matrix on (H, L1..Ln), built directly from the adjacency."""
    n = a.n
    m = [[0] * (n + 1) for _ in range(n + 1)]
    m[0][0] = 4
    for i in range(n):
        m[0][i + 1] = m[i + 1][0] = 1
        m[i + 1][i + 1] = -2
        for j in range(n):
            if i != j and a.meets(i, j):
                m[i + 1][j + 1] = 1
    return m


def bilinear(a, x, y) -> Fraction:
    g = gram_matrix(a)
    return sum(Fraction(x[i]) * g[i][j] * Fraction(y[j]) for i in range(len(x)) for j in range(len(y)))


def random_arrangement(rng, n):
    return Arrangement.from_edges(n, [p for p in combinations(range(n), 2) if rng.random() < rng.random()])


def test_pairing_identities_500():
    rng = random.Random(2024)
    for _ in range(500):
        n = rng.randint(1, 12)
        a = random_arrangement(rng, n)
        lam = total_class(a)
        assert pair(lam, lam) == 2 * (a.k - n)
        for i in range(n):
            assert pair(lam, line(a, i)) == -2 + a.degrees[i]
            assert half_class(a).dot_line(i) == Fraction(a.degrees[i] - 2, 2)
        assert pair(hyperplane(a), hyperplane(a)) == 4


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_pair_matches_matrix_and_is_bilinear(data):
    a = data.draw(arrangements(8))
    coef = st.lists(st.integers(-6, 6), min_size=a.n + 1, max_size=a.n + 1)
    x, y, z = (DivisorClass(tuple(data.draw(coef)), a) for _ in range(3))
    m = data.draw(st.integers(-3, 3))
    assert pair(x, y) == bilinear(a, [Fraction(c, 2) for c in x.doubled_coeffs],
                                  [Fraction(c, 2) for c in y.doubled_coeffs])
    assert pair(x, y) == pair(y, x)
    assert pair(x + z, y) == pair(x, y) + pair(z, y)
    assert pair(m * x, y) == m * pair(x, y)
    assert (pair(x, y) * 4).denominator == 1
    for i in range(a.n):
        assert x.dot_line(i) == pair(x, line(a, i))
