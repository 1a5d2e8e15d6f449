import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from generators import TRIANGLE, random_realizer
from oracles import dominance_brute
from polycolor.coloring import Coloring, degeneracy_order, planarity_check
from polycolor.dominance import (Realizer3D, build_Gk, color_k, dominated_set, enumerate_hyperedges,
                                 extreme_stats, negate, triangle_dual_realizer, verify_polychromatic)
from polycolor.dual import verify_dual
from polycolor.errors import GeometryError, GuardrailError, InstanceError
from polycolor.geometry import Homothet, contained_in
from generators import SQUARE

CYCLIC = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
CHAIN = [(0, 0, 0), (1, 1, 1), (2, 2, 2)]
realizers = st.lists(st.tuples(*(st.integers(0, 6),) * 3), min_size=1, max_size=14)


def test_dominated_set_examples():
    r = Realizer3D(CYCLIC)
    assert dominated_set(r, (0, 0, 0)) == frozenset()
    assert dominated_set(r, (3, 3, 3)) == {0, 1, 2}
    assert dominated_set(r, (2, 3, 3)) == {0, 1}


def test_enumerate_examples():
    assert enumerate_hyperedges([(5, 5, 5)]).hyperedges() == [frozenset({0})]
    hs = set(enumerate_hyperedges(CYCLIC).hyperedges())
    assert sorted(map(len, hs)) == [1, 1, 1, 2, 2, 2, 3]
    assert hs == dominance_brute(CYCLIC)
    assert set(enumerate_hyperedges(CHAIN).hyperedges()) == {
        frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2})}


def test_guardrail():
    with pytest.raises(GuardrailError):
        enumerate_hyperedges([(i, i, i) for i in range(401)])


def test_Gk_examples():
    g = build_Gk(CYCLIC, 2)
    assert g.edges == [(0, 1), (0, 2), (1, 2)]
    assert len(g.edges) == 3 * (2 - 1) * 3 - 6
    with pytest.raises(InstanceError):
        build_Gk(CYCLIC, 1)
    # the maximum of the first two dominates the third as well
    pts = [(0, 3, 3), (3, 0, 3), (2, 2, 2)]
    assert (0, 1) not in build_Gk(pts, 2).edges
    assert (0, 1) in build_Gk(pts, 3).edges


def test_extreme_examples():
    assert extreme_stats(enumerate_hyperedges(CHAIN[:2]), 2) == 1
    # a pair has only two members, so its x-, y- and z-lowest cannot all differ
    assert extreme_stats(enumerate_hyperedges(CYCLIC), 2) == 3
    assert extreme_stats(enumerate_hyperedges(CYCLIC), 3) == 0


def test_color_k_examples():
    c = color_k(CYCLIC, 2)
    assert c.num_colors == 3
    assert verify_polychromatic(enumerate_hyperedges(CYCLIC), c, 2)
    assert verify_polychromatic(enumerate_hyperedges(CHAIN), color_k(CHAIN, 5), 5)


def test_forty_points_k3():
    pts = random_realizer(random.Random(40), 40)
    c = color_k(pts, 3)
    assert c.num_colors <= 12 and verify_polychromatic(enumerate_hyperedges(pts), c, 3)


def test_verify_polychromatic_examples():
    hg = enumerate_hyperedges(CHAIN[:2])
    assert not verify_polychromatic(hg, Coloring({0: 0, 1: 0}), 2)
    assert verify_polychromatic(enumerate_hyperedges(CYCLIC), Coloring({0: 0, 1: 1, 2: 2}), 3)


@given(realizers)
def test_hyperedges_match_brute_force(pts):
    assert set(enumerate_hyperedges(pts).hyperedges()) == dominance_brute(pts)


@given(realizers, st.integers(2, 5))
def test_Gk_properties(pts, k):
    n = len(pts)
    gk = build_Gk(pts, k)
    if n >= 3:
        assert len(gk.edges) <= 3 * (k - 1) * n - 6
    if k > 2:
        assert set(build_Gk(pts, k - 1).edges) <= set(gk.edges)
    _, d = degeneracy_order(gk.graph)
    assert d <= 6 * (k - 1) - 1
    assert extreme_stats(enumerate_hyperedges(pts), k) <= 3 * n
    c = color_k(pts, k)
    assert c.num_colors <= 6 * (k - 1)
    assert verify_polychromatic(enumerate_hyperedges(pts), c, k)


@given(realizers)
def test_G2_planar(pts):
    assert planarity_check(build_Gk(pts, 2).graph)


@given(realizers)
def test_negate_reverses(pts):
    r, m = Realizer3D(pts), negate(pts)
    for i, j in combinations(range(len(pts)), 2):
        below = all(a <= b for a, b in zip(r.points[i], r.points[j]))
        assert below == all(a >= b for a, b in zip(m.points[i], m.points[j]))


tri_family = st.lists(st.tuples(st.integers(0, 8), st.integers(0, 8), st.integers(1, 4)),
                      min_size=1, max_size=15)


@given(tri_family, st.integers(-2, 10), st.integers(-2, 10))
def test_triangle_reduction(data, x, y):
    fam = [Homothet(TRIANGLE, (a, b), s) for a, b, s in data]
    tr = triangle_dual_realizer(fam)
    inside = {i for i, h in enumerate(fam) if (x, y) in h}
    assert set(dominated_set(tr.realizer, tr.image((x, y)))) == inside
    for i, j in combinations(range(len(fam)), 2):
        # a smaller homothet has smaller offsets, so its negated image is larger
        if contained_in(fam[i], fam[j]):
            assert all(a >= b for a, b in zip(tr.realizer.points[i], tr.realizer.points[j]))


def test_triangle_reduction_examples():
    assert len(triangle_dual_realizer([Homothet(TRIANGLE, (0, 0), 1)]).realizer) == 1
    with pytest.raises(GeometryError):
        triangle_dual_realizer([Homothet(SQUARE, (0, 0), 1)])
    with pytest.raises(InstanceError):
        triangle_dual_realizer([])


def test_triangle_coloring_end_to_end():
    rnd = random.Random(15)
    fam = [Homothet(TRIANGLE, (rnd.randint(0, 12), rnd.randint(0, 12)), rnd.randint(1, 4))
           for _ in range(15)]
    c = color_k(triangle_dual_realizer(fam).realizer, 3)
    assert verify_dual(fam, c)
