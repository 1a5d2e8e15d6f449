import random

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from generators import HEXAGON, RANGES, SQUARE, TRIANGLE, random_points
from oracles import parameter_grid_pair, primal_grid_oracle
from polycolor.coloring import Coloring, planarity_check
from polycolor.geometry import ConvexRange, Homothet
from polycolor.lowerbound import check_lowerbound, gen_lowerbound_primal
from polycolor.primal import build_delaunay, color_primal, edge_witness, verify_primal

ROW = [(0, 0), (1, 0), (2, 0)]
grid_points = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=0, max_size=12)
ranges = st.sampled_from(list(RANGES.values()))


def test_two_point_witness_always():
    h = edge_witness(TRIANGLE, [(0, 0), (5, 7)], 0, 1)
    assert h is not None and (0, 0) in h and (5, 7) in h


def test_row_witnesses_against_parameter_grid():
    assert edge_witness(SQUARE, ROW, 0, 2) is None
    assert not parameter_grid_pair(SQUARE, ROW, 0, 2)
    h = edge_witness(SQUARE, ROW, 0, 1)
    assert h is not None and [p in h for p in ROW] == [True, True, False]
    assert parameter_grid_pair(SQUARE, ROW, 0, 1)


def test_small_sets():
    assert build_delaunay(SQUARE, []).edges == []
    assert build_delaunay(SQUARE, [(3, 3)]).edges == []
    assert build_delaunay(HEXAGON, [(0, 0), (9, 2)]).edges == [(0, 1)]


def test_square_five_points_against_oracle():
    pts = [(0, 0), (4, 0), (0, 4), (4, 4), (2, 2)]
    dg = build_delaunay(SQUARE, pts)
    exact, tied = primal_grid_oracle(SQUARE, pts)
    got = {tuple(sorted(e)) for e in dg.edges}
    assert got == exact == {(0, 4), (1, 4), (2, 4), (3, 4), (0, 1), (0, 2), (1, 3), (2, 3)}
    assert {w.kind for w in dg.witness.values()} == {"exact"}


def test_color_primal_examples():
    assert color_primal(SQUARE, [(1, 1)]).num_colors == 1
    lb = gen_lowerbound_primal(HEXAGON, 2)
    c = color_primal(HEXAGON, lb.items)
    assert c.num_colors == 4 and verify_primal(HEXAGON, lb.items, c)
    assert check_lowerbound(lb, 3)


def test_random_thirty_points():
    rnd = random.Random(30)
    pts = random_points(rnd, 30)
    c = color_primal(SQUARE, pts)
    assert c.num_colors <= 4 and verify_primal(SQUARE, pts, c)


def test_verify_primal_examples():
    pts = [(0, 0), (3, 1), (1, 5)]
    rep = verify_primal(TRIANGLE, pts, Coloring({0: 0, 1: 0, 2: 0}))
    assert not rep and len(rep.members) >= 2
    inside = [i for i, p in enumerate(pts) if p in rep.witness]
    assert sorted(inside) == sorted(rep.members)
    assert verify_primal(SQUARE, [(0, 0), (1, 0)], Coloring({0: 0, 1: 1}))
    assert not verify_primal(SQUARE, [(0, 0), (0, 0)], Coloring({0: 1, 1: 1}))


def test_duplicates_are_separated():
    pts = {"a": (0, 0), "b": (0, 0), "c": (2, 1)}
    dg = build_delaunay(SQUARE, pts)
    # the coincident pair is cut out exactly; perturbation then hides one
    # copy from c, as if the two sat at distinct nearby spots
    assert dg.witness[("a", "b")].kind == "exact"
    assert ("a", "c") in dg.edges and ("b", "c") not in dg.edges


@given(ranges, grid_points)
def test_planar_and_witnesses_valid(rng, pts):
    dg = build_delaunay(rng, pts)
    assert planarity_check(dg.graph)
    for (u, v), w in dg.witness.items():
        inside = {i for i, p in enumerate(pts) if p in w.homothet}
        if w.kind == "exact":
            assert inside == {u, v}
        else:
            assert {u, v} <= inside


@given(ranges, grid_points, st.integers(-4, 28), st.integers(-4, 28), st.integers(1, 16))
def test_every_homothet_holds_an_edge(rng, pts, x, y, s):
    dg = build_delaunay(rng, pts)
    h = Homothet(rng, (mpq(x, 4), mpq(y, 4)), mpq(s, 4))
    inside = [i for i, p in enumerate(pts) if p in h]
    if len(inside) >= 2:
        edges = dg.edge_set()
        assert any(frozenset((a, b)) in edges for a in inside for b in inside if a < b)


@given(ranges, grid_points)
def test_coloring_verifies(rng, pts):
    c = color_primal(rng, pts)
    assert c.num_colors <= 4 and verify_primal(rng, pts, c)


AFFINE = [((2, 1), (1, 1)), ((0, -1), (1, 0)), ((1, 2), (-3, 1))]


@pytest.mark.parametrize("m", AFFINE)
@given(rng=ranges, pts=grid_points)
def test_affine_invariance_of_exact_edges(m, rng, pts):
    (a, b), (c, d) = m

    def f(p):
        return (a * p[0] + b * p[1] + 3, c * p[0] + d * p[1] - 1)

    image = ConvexRange.from_vertices([(a * x + b * y, c * x + d * y) for x, y in rng.vertices])
    g1 = build_delaunay(rng, pts)
    g2 = build_delaunay(image, [f(p) for p in pts])

    def exact(g):
        return {e for e, w in g.witness.items() if w.kind == "exact"}

    assert exact(g1) == exact(g2)


def test_oracle_equivalence_sample():
    rnd = random.Random(9)
    for rng in RANGES.values():
        for _ in range(3):
            pts = random_points(rnd, rnd.randint(3, 8), 6)
            dg = build_delaunay(rng, pts)
            exact, tied = primal_grid_oracle(rng, pts)
            ex = {e for e, w in dg.witness.items() if w.kind == "exact"}
            pert = {e for e, w in dg.witness.items() if w.kind == "perturbed"}
            assert ex == exact and pert <= tied
