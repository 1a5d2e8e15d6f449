"""Delaunay graphs of point sets under a polygonal convex distance.

Two points are adjacent when some homothet of the range contains exactly
those two.  Writing ``d_x(p)`` for the scaling a homothet centred at ``x``
needs to reach ``p``, the homothet ``Q(x, d_x(p))`` holds ``p`` and ``q`` on
its boundary and nothing else exactly when ``d_x(p) = d_x(q) < d_x(r)`` for
all other ``r``.  That is the additively weighted bisector problem solved
in :mod:`polycolor.bisector` with zero weights.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from gmpy2 import mpq

from .bisector import SiteSystem, representative
from .coloring import Coloring, Graph, color_planar_4, planarity_check
from .errors import InstanceError, InternalConsistencyError
from .perturb import base, perturb_points
from .geometry import ConvexRange, Homothet, as_point_set
from .report import PASS, Report, fail


@dataclass(frozen=True)
class EdgeWitness:
    """Why an edge exists.

    ``exact``: the homothet holds just the pair.  ``perturbed``: the pair
    only becomes adjacent after symbolic perturbation; the homothet is the
    unperturbed limit and holds the pair on its boundary.
    """

    kind: str
    homothet: Homothet


@dataclass
class DelaunayGraph:
    range: ConvexRange
    points: object
    graph: Graph
    witness: dict = field(default_factory=dict)

    @property
    def vertices(self) -> list:
        return list(self.graph.vertices)

    @property
    def edges(self) -> list:
        return self.graph.edges()

    def edge_set(self) -> set:
        return {frozenset(e) for e in self.graph.edges()}


class _Locations:
    """Distinct coordinates of a point set and the labels sitting on each."""

    def __init__(self, rng: ConvexRange, points):
        self.range = rng
        self.points = as_point_set(points)
        coords = {}
        for label in self.points.labels:
            coords.setdefault(self.points[label], []).append(label)
        self.coords = list(coords)
        self.labels = list(coords.values())
        self.where = {lab: i for i, group in enumerate(self.labels) for lab in group}
        self.system = _sites(rng, self.coords)

    def __len__(self):
        return len(self.coords)

    def isolating(self, i) -> Homothet:
        """Small homothet around location ``i`` avoiding every other location."""
        p = self.coords[i]
        gaps = [self.range.gauge((q[0] - p[0], q[1] - p[1]))
                for j, q in enumerate(self.coords) if j != i]
        lam = min(gaps) / 2 if gaps else mpq(1)
        return Homothet(self.range, p, lam)

    def homothet(self, x, value) -> Homothet:
        return Homothet(self.range, x, value)


def _sites(rng: ConvexRange, coords) -> SiteSystem:
    return SiteSystem([(-a[0], -a[1]) for a in rng.facets], coords)


def edge_witness(rng: ConvexRange, points, p, q):
    """A homothet containing exactly ``p`` and ``q`` among ``points``, or ``None``."""
    pts = as_point_set(points)
    labels = pts.labels
    if p == q or p not in pts or q not in pts:
        raise InstanceError("edge_witness needs two distinct labels of the set")
    system = _sites(rng, [pts[lab] for lab in labels])
    found = system.pair_witness(labels.index(p), labels.index(q))
    if found is None:
        return None
    return Homothet(rng, *found)


def build_delaunay(rng: ConvexRange, points) -> DelaunayGraph:
    """Exact Delaunay graph under symbolic perturbation.

    Pairs with a witness homothet holding just the two of them are edges.
    Pairs blocked only by exact ties (points on the witness boundary,
    coinciding points) are decided again after moving every point by
    infinitesimals ordered by lexicographic rank, which leaves no four
    points on the boundary of an empty homothet.
    """
    pts = as_point_set(points)
    labels = pts.labels
    coords = [pts[lab] for lab in labels]
    g = Graph(labels)
    witness = {}
    system = _sites(rng, coords)
    tied = []
    for i, j in combinations(range(len(labels)), 2):
        found, is_tied = system.pair_status(i, j)
        if found is not None:
            g.add_edge(labels[i], labels[j])
            witness[(labels[i], labels[j])] = EdgeWitness("exact", Homothet(rng, *found))
        elif is_tied:
            tied.append((i, j))
    if tied:
        order = sorted(range(len(labels)), key=lambda i: pts.lex_key(labels[i]))
        moved = _sites(rng, perturb_points(coords, order))
        for i, j in tied:
            found = moved.pair_witness(i, j)
            if found is not None:
                x, value = found
                x, value = (base(x[0]), base(x[1])), base(value)
                if value <= 0:
                    # coincident points: the limit is a point, use a small
                    # homothet around it that reaches no other location
                    gaps = [rng.gauge((c[0] - x[0], c[1] - x[1])) for c in coords if c != x]
                    value = min(gaps) / 2 if gaps else mpq(1)
                h = Homothet(rng, x, value)
                g.add_edge(labels[i], labels[j])
                witness[(labels[i], labels[j])] = EdgeWitness("perturbed", h)
    if not planarity_check(g):
        raise InternalConsistencyError("Delaunay graph failed the planarity test")
    return DelaunayGraph(rng, pts, g, witness)


def color_primal(rng: ConvexRange, points, budget=None) -> Coloring:
    """At most 4 colors; no homothet holding two or more points is monochromatic."""
    dg = build_delaunay(rng, points)
    if budget is None:
        return color_planar_4(dg.graph)
    return color_planar_4(dg.graph, budget)


def verify_primal(rng: ConvexRange, points, coloring) -> Report:
    """Search for a monochromatic homothet holding at least two points.

    A monochromatic homothet can always be shrunk until two same-colored
    points sit on its boundary at distinct facets, with every point of
    another color strictly outside.  So it suffices to scan each
    same-colored pair's bisector skeleton with the other colors as
    obstacles.  Every reported witness is re-checked by direct counting.
    """
    colors = coloring.colors if isinstance(coloring, Coloring) else dict(coloring)
    loc = _Locations(rng, points)
    missing = [lab for lab in loc.points.labels if lab not in colors]
    if missing:
        raise InstanceError(f"coloring misses {missing[0]!r}")
    # a site is monochromatic when all labels on it share one color
    site_color = []
    for group in loc.labels:
        cs = {colors[lab] for lab in group}
        site_color.append(cs.pop() if len(cs) == 1 else None)

    for i, group in enumerate(loc.labels):
        if len(group) > 1 and site_color[i] is not None:
            return _confirm(loc, colors, loc.isolating(i))

    by_color = {}
    for i, c in enumerate(site_color):
        if c is not None:
            by_color.setdefault(c, []).append(i)
    system = loc.system
    for c, sites in sorted(by_color.items()):
        others = [r for r in range(len(loc)) if site_color[r] != c]
        for i, j in combinations(sites, 2):
            quick = system._obstacle_order(i, j, set(others))
            for seg in system.segments(i, j):
                pieces = system.free_pieces(seg, i, j, others, quick=quick)
                if pieces:
                    s = representative(pieces[0])
                    return _confirm(loc, colors, loc.homothet(seg.at(s), seg.value(s)))
    return PASS


def _confirm(loc, colors, h) -> Report:
    inside = [lab for lab in loc.points.labels if loc.points[lab] in h]
    if len(inside) < 2 or len({colors[lab] for lab in inside}) != 1:
        raise InternalConsistencyError("verifier produced an invalid witness")
    return fail(
        f"homothet centred at ({h.center[0]}, {h.center[1]}), scaling {h.scaling} holds {len(inside)} points "
        f"all of color {colors[inside[0]]}",
        witness=h,
        members=inside,
    )
