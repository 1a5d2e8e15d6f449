"""Exact convex-polygon ranges, their gauge, and homothets.

Every coordinate is a ``gmpy2.mpq``; floats are rejected so that all
predicates downstream are decided exactly.
"""
from __future__ import annotations

import enum
import fractions
import numbers
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from gmpy2 import mpq

from .errors import GeometryError

Point = tuple  # (mpq, mpq)

_MPQ = type(mpq(0))


def rational(value) -> mpq:
    """Convert ``value`` to an exact rational.

    Accepts ints, ``Fraction``/``mpq`` values, strings such as ``"3/4"`` and
    ``(numerator, denominator)`` pairs.  Floats are refused.
    """
    if isinstance(value, _MPQ):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, fractions.Fraction):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return mpq(fractions.Fraction(value.strip()))
    if isinstance(value, (tuple, list)) and len(value) == 2:
        num, den = value
        if den == 0:
            raise GeometryError("zero denominator")
        return mpq(int(num), int(den))
    if isinstance(value, numbers.Rational):
        return mpq(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def point(x, y=None) -> Point:
    if y is None:
        x, y = x
    return (rational(x), rational(y))


def sub(p: Point, q: Point) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def add(p: Point, q: Point) -> Point:
    return (p[0] + q[0], p[1] + q[1])


def scale(c, p: Point) -> Point:
    return (c * p[0], c * p[1])


def dot(a: Point, b: Point):
    return a[0] * b[0] + a[1] * b[1]


def cross(a: Point, b: Point):
    return a[0] * b[1] - a[1] * b[0]


def orient(p: Point, q: Point, r: Point):
    """Twice the signed area of ``pqr``; positive for a left turn."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _strict_hull(points: Sequence[Point]) -> list:
    pts = sorted(set(points))
    if len(pts) < 3:
        return pts

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    return lower[:-1] + upper[:-1]


class Containment(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"

    def __bool__(self):
        return self is not Containment.OUTSIDE


@dataclass(frozen=True)
class ConvexRange:
    """Convex polygon strictly containing the origin.

    ``vertices`` are counterclockwise, starting at the lexicographically
    smallest one.  ``facets[j]`` is the functional ``a_j`` of the edge from
    ``vertices[j]`` to ``vertices[j+1]``, normalized so the polygon is
    ``{x : a_j . x <= 1 for all j}``.
    """

    vertices: tuple
    facets: tuple

    @classmethod
    def from_vertices(cls, vertices: Iterable) -> "ConvexRange":
        verts = [point(v) for v in vertices]
        if len(verts) < 3:
            raise GeometryError("a range needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise GeometryError("repeated range vertex")
        hull = _strict_hull(verts)
        if len(hull) < 3:
            raise GeometryError("range has zero area")
        if len(hull) != len(verts):
            raise GeometryError(
                "range vertices must be in strictly convex position"
            )
        facets = []
        for i, v in enumerate(hull):
            w = hull[(i + 1) % len(hull)]
            normal = (w[1] - v[1], v[0] - w[0])
            offset = dot(normal, v)
            if offset <= 0:
                raise GeometryError("range must strictly contain the origin")
            facets.append((normal[0] / offset, normal[1] / offset))
        rng = cls(tuple(hull), tuple(facets))
        rng._cross_check()
        return rng

    def _cross_check(self):
        m = len(self.vertices)
        for i, v in enumerate(self.vertices):
            for j, a in enumerate(self.facets):
                val = dot(a, v)
                tight = j == i or j == (i - 1) % m
                if val > 1 or (val == 1) != tight:
                    raise GeometryError("facets and vertices disagree")

    def __len__(self):
        return len(self.facets)

    def gauge(self, v: Point):
        return max(a[0] * v[0] + a[1] * v[1] for a in self.facets)

    def directions(self) -> int:
        """Number of pairwise non-parallel facet normals."""
        dirs = []
        for a in self.facets:
            if not any(cross(a, b) == 0 for b in dirs):
                dirs.append(a)
        return len(dirs)

    def is_parallelogram(self) -> bool:
        return self.directions() == 2


def gauge_value(rng: ConvexRange, v) -> mpq:
    """Smallest ``lam >= 0`` with ``v`` in ``lam * rng``."""
    return rng.gauge(point(v))


def convex_distance(rng: ConvexRange, p, q) -> mpq:
    """``d(p, q)``: the scaling a homothet centred at ``p`` needs to reach ``q``."""
    return rng.gauge(sub(point(q), point(p)))


def reflect(rng: ConvexRange) -> ConvexRange:
    return ConvexRange.from_vertices((-x, -y) for x, y in rng.vertices)


@dataclass(frozen=True)
class Homothet:
    """The set ``{scaling * x + center : x in range}``."""

    range: ConvexRange
    center: Point
    scaling: mpq

    def __post_init__(self):
        object.__setattr__(self, "center", point(self.center))
        object.__setattr__(self, "scaling", rational(self.scaling))
        if self.scaling <= 0:
            raise GeometryError("homothet scaling must be positive")

    def vertices(self) -> list:
        lam, (tx, ty) = self.scaling, self.center
        return [(lam * x + tx, lam * y + ty) for x, y in self.range.vertices]

    def offsets(self) -> list:
        """Right-hand sides ``b_j`` with the homothet equal to ``{a_j . x <= b_j}``."""
        return [dot(a, self.center) + self.scaling for a in self.range.facets]

    def classify(self, p: Point) -> Containment:
        g = self.range.gauge(sub(p, self.center))
        if g < self.scaling:
            return Containment.INTERIOR
        if g == self.scaling:
            return Containment.BOUNDARY
        return Containment.OUTSIDE

    def __contains__(self, p) -> bool:
        return self.range.gauge(sub(point(p), self.center)) <= self.scaling


def homothet_contains(h: Homothet, p) -> Containment:
    return h.classify(point(p))


def contained_in(h1: Homothet, h2: Homothet) -> bool:
    """Exact test of ``h1`` being a subset of ``h2``."""
    if h1.range != h2.range:
        raise GeometryError("containment is only defined for one shared range")
    b2 = h2.offsets()
    return all(
        dot(a, v) <= b for v in h1.vertices() for a, b in zip(h2.range.facets, b2)
    )


class PointSet(Mapping):
    """Labeled planar points.  Labels are unique; coordinates may repeat.

    Accepts a mapping, ``(label, point)`` pairs, or bare points labeled
    ``0 .. n-1``.
    """

    def __init__(self, points):
        if isinstance(points, Mapping):
            items = points.items()
        else:
            points = list(points)
            paired = points and all(
                len(e) == 2 and isinstance(e[1], (tuple, list)) for e in points
            )
            items = points if paired else enumerate(points)
        self._points = {}
        self._order = {}
        for label, p in items:
            if label in self._points:
                raise GeometryError(f"duplicate label {label!r}")
            self._order[label] = len(self._points)
            self._points[label] = point(p)

    def __getitem__(self, label):
        return self._points[label]

    def __iter__(self) -> Iterator:
        return iter(self._points)

    def __len__(self):
        return len(self._points)

    def __repr__(self):
        return f"PointSet({len(self)} points)"

    @property
    def labels(self) -> tuple:
        return tuple(self._points)

    def duplicates(self) -> list:
        """Groups of labels sharing identical coordinates."""
        groups = {}
        for label, p in self._points.items():
            groups.setdefault(p, []).append(label)
        return [g for g in groups.values() if len(g) > 1]

    def lex_key(self, label):
        """Lexicographic order with input position as the symbolic tie-break."""
        x, y = self._points[label]
        return (x, y, self._order[label])


def as_point_set(points) -> PointSet:
    return points if isinstance(points, PointSet) else PointSet(points)
