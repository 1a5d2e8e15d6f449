from fractions import Fraction

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from generators import HEXAGON, RANGES, SQUARE, TRIANGLE
from polycolor.errors import GeometryError
from polycolor.geometry import (Containment, ConvexRange, Homothet, PointSet, contained_in,
                                convex_distance, gauge_value, homothet_contains, rational, reflect)

coord = st.fractions(min_value=-20, max_value=20, max_denominator=12)
vec = st.tuples(coord, coord)
pos = st.fractions(min_value=Fraction(1, 8), max_value=10, max_denominator=8)
ranges = st.sampled_from(list(RANGES.values()))


def test_gauge_square():
    assert gauge_value(SQUARE, (3, 1)) == 3


@pytest.mark.parametrize("rng", list(RANGES.values()))
def test_gauge_origin(rng):
    assert gauge_value(rng, (0, 0)) == 0


def test_gauge_triangle_backwards():
    # the ray towards (-1, 0) leaves the triangle at (-1/2, 0)
    assert gauge_value(TRIANGLE, (-1, 0)) == 2


def test_distance_examples():
    assert convex_distance(SQUARE, (0, 0), (3, 1)) == 3
    assert convex_distance(TRIANGLE, (0, 0), (1, 0)) == 1
    assert convex_distance(TRIANGLE, (1, 0), (0, 0)) == 2
    assert convex_distance(HEXAGON, (2, 5), (2, 5)) == 0


def test_reflect_examples():
    assert set(reflect(SQUARE).vertices) == set(SQUARE.vertices)
    assert set(reflect(TRIANGLE).vertices) == {(-1, 0), (0, -1), (1, 1)}
    for rng in RANGES.values():
        assert reflect(reflect(rng)) == rng


def test_contains_examples():
    assert homothet_contains(Homothet(SQUARE, (0, 0), 1), (1, 1)) is Containment.BOUNDARY
    assert homothet_contains(Homothet(SQUARE, (0, 0), 1), (2, 0)) is Containment.OUTSIDE
    assert homothet_contains(Homothet(SQUARE, (5, 5), 2), (5, 5)) is Containment.INTERIOR


def test_contained_in_examples():
    assert contained_in(Homothet(SQUARE, (1, 1), 1), Homothet(SQUARE, (1, 1), 2))
    assert not contained_in(Homothet(SQUARE, (0, 0), 1), Homothet(SQUARE, (3, 0), 1))
    assert contained_in(Homothet(SQUARE, ("1/2", 0), "1/2"), Homothet(SQUARE, (0, 0), 1))
    with pytest.raises(GeometryError):
        contained_in(Homothet(SQUARE, (0, 0), 1), Homothet(TRIANGLE, (0, 0), 1))


def test_range_validation():
    with pytest.raises(GeometryError):
        ConvexRange.from_vertices([(0, 0), (1, 0), (2, 0)])
    with pytest.raises(GeometryError):
        ConvexRange.from_vertices([(1, 1), (2, 1), (1, 2)])  # origin outside
    with pytest.raises(GeometryError):
        ConvexRange.from_vertices([(1, 0), (0, 1)])
    with pytest.raises(GeometryError):
        Homothet(SQUARE, (0, 0), 0)
    with pytest.raises(TypeError):
        rational(0.5)


def test_facets_match_vertices():
    rng = ConvexRange.from_vertices([(2, 0), (1, 2), (-1, 2), (-2, 0), (0, -2)])
    for v in rng.vertices:
        assert rng.gauge(v) == 1
    assert rng.directions() == 5 and not rng.is_parallelogram()
    assert SQUARE.is_parallelogram()


def test_pointset_duplicates():
    ps = PointSet({"a": (0, 0), "b": (1, 2), "c": (0, 0)})
    assert ps.duplicates() == [["a", "c"]]
    assert PointSet([(0, 0), (1, 1)]).labels == (0, 1)
    with pytest.raises(GeometryError):
        PointSet([("a", (0, 0)), ("a", (1, 1))])


@given(ranges, vec, st.fractions(min_value=0, max_value=9, max_denominator=7))
def test_gauge_homogeneous(rng, v, c):
    assert gauge_value(rng, (c * v[0], c * v[1])) == mpq(c) * gauge_value(rng, v)


@given(ranges, vec)
def test_gauge_definite(rng, v):
    g = gauge_value(rng, v)
    assert g >= 0 and (g == 0) == (v == (0, 0))


@given(ranges, vec, vec, vec)
def test_triangle_inequality(rng, p, q, r):
    assert convex_distance(rng, p, r) <= convex_distance(rng, p, q) + convex_distance(rng, q, r)


@given(ranges, vec, vec)
def test_reflection_identity(rng, p, q):
    assert convex_distance(rng, p, q) == gauge_value(reflect(rng), (p[0] - q[0], p[1] - q[1]))


def _halfplane_classify(h, p):
    # independent route: edges of the scaled, translated vertex list
    vs = h.vertices()
    signs = []
    for i, a in enumerate(vs):
        b = vs[(i + 1) % len(vs)]
        signs.append((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]))
    if any(s < 0 for s in signs):
        return Containment.OUTSIDE
    return Containment.BOUNDARY if any(s == 0 for s in signs) else Containment.INTERIOR


@given(ranges, vec, pos, vec)
def test_contains_matches_halfplanes(rng, c, lam, p):
    h = Homothet(rng, c, lam)
    assert homothet_contains(h, p) is _halfplane_classify(h, p)


homothets = st.builds(lambda c, lam: (c, lam), vec, pos)


@given(ranges, homothets, homothets, homothets)
def test_contained_in_partial_order(rng, a, b, c):
    ha, hb, hc = (Homothet(rng, *x) for x in (a, b, c))
    assert contained_in(ha, ha)
    if contained_in(ha, hb) and contained_in(hb, ha):
        assert ha == hb
    if contained_in(ha, hb) and contained_in(hb, hc):
        assert contained_in(ha, hc)


@given(ranges, vec, pos, pos)
def test_concentric_containment(rng, c, l1, l2):
    assert contained_in(Homothet(rng, c, min(l1, l2)), Homothet(rng, c, max(l1, l2)))
