"""Dual problem: homothets as vertices, points of the plane as hyperedges.

A homothet ``Q(c, lam)`` lifts to ``(c_x, c_y, lam)``.  The upward cone with
apex ``(x, y, z)`` has the reflected range scaled by ``h - z`` as its slice
at height ``h``, so it contains a lifted homothet exactly when the homothet
reaches ``(x, y)`` with slack ``z``.  Two homothets are adjacent in the
dual graph when some cone contains exactly their two lifts; with weights
``-lam`` this is adjacency in the additively weighted Voronoi diagram.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from itertools import combinations

from gmpy2 import mpq

from .bisector import SiteSystem
from .coloring import Coloring, Graph, color_planar_4, planarity_check
from .errors import GeometryError, InstanceError, InternalConsistencyError
from .geometry import (
    Containment,
    ConvexRange,
    Homothet,
    contained_in,
    convex_distance,
    cross,
    gauge_value,
    point,
    rational,
    reflect,
)
from .perturb import Eps, base
from .report import PASS, Report, fail


@dataclass(frozen=True)
class LiftedPoint:
    label: object
    x: mpq
    y: mpq
    z: mpq

    @property
    def coords(self) -> tuple:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class Cone:
    """Upward cone; its slice at height ``h`` is ``Q*(apex_xy, h - apex_z)``."""

    apex: tuple
    range: ConvexRange

    def contains(self, q) -> Containment:
        return cone_contains(self.range, self.apex, q)


@dataclass
class DualGraph:
    homothets: dict
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


def lift(h: Homothet, label=None) -> LiftedPoint:
    return LiftedPoint(label, h.center[0], h.center[1], h.scaling)


def _point3(q) -> tuple:
    if isinstance(q, LiftedPoint):
        return q.coords
    x, y, z = q
    return (rational(x), rational(y), rational(z))


def cone_contains(rng: ConvexRange, apex, q) -> Containment:
    """Classify ``q`` against the upward cone with apex ``apex``."""
    ax, ay, az = _point3(apex)
    qx, qy, qz = _point3(q)
    # gauge of the reflected range at v equals the gauge of the range at -v
    g = rng.gauge((ax - qx, ay - qy))
    slack = qz - az
    if g < slack:
        return Containment.INTERIOR
    if g == slack:
        return Containment.BOUNDARY
    return Containment.OUTSIDE


def downward_cone_contains(rng: ConvexRange, apex, p) -> Containment:
    """Classify ``p`` against the downward cone: slices ``Q(apex_xy, apex_z - h)``."""
    ax, ay, az = _point3(apex)
    px, py, pz = _point3(p)
    g = rng.gauge((px - ax, py - ay))
    slack = az - pz
    if g < slack:
        return Containment.INTERIOR
    if g == slack:
        return Containment.BOUNDARY
    return Containment.OUTSIDE


def z_height(h: Homothet, p) -> mpq:
    """Height of the cone apex above ``p`` whose boundary passes through ``lift(h)``."""
    p = point(p)
    if p not in h:
        raise GeometryError("height is only defined for points of the homothet")
    z = h.scaling - convex_distance(h.range, h.center, p)
    # second route: the reflected range measured from p back to the center
    other = h.scaling - gauge_value(reflect(h.range), (p[0] - h.center[0], p[1] - h.center[1]))
    if z != other or cone_contains(h.range, (p[0], p[1], z), lift(h)) is not Containment.BOUNDARY:
        raise InternalConsistencyError("lift height disagrees with cone boundary")
    return z


def as_family(homothets) -> dict:
    """Normalize a family to ``{label: Homothet}`` sharing one range."""
    if isinstance(homothets, Mapping):
        fam = dict(homothets)
    else:
        fam = dict(enumerate(homothets))
    ranges = {h.range for h in fam.values()}
    if len(ranges) > 1:
        raise GeometryError("all homothets must share one range")
    return fam


def contained_set(fam: dict):
    """``(I, container)``: homothets inside another one, and for each a
    container outside ``I``.  Among equal homothets the first stays out."""
    labels = list(fam)
    inside = set()
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if i == j or not contained_in(fam[a], fam[b]):
                continue
            if contained_in(fam[b], fam[a]) and j > i:
                continue  # equal: only the later one is a duplicate
            inside.add(a)
            break
    container = {}
    for a in labels:
        if a in inside:
            container[a] = next(
                b for b in labels if b not in inside and b != a and contained_in(fam[a], fam[b])
            )
    return inside, container


def _sites(rng, fam, labels, perturbed=False) -> SiteSystem:
    centers = [fam[lab].center for lab in labels]
    weights = [fam[lab].scaling for lab in labels]
    if perturbed:
        order = sorted(
            range(len(labels)), key=lambda i: (centers[i][0], centers[i][1], weights[i], i)
        )
        cs, ws = [None] * len(labels), [None] * len(labels)
        for r, i in enumerate(order):
            cs[i] = (Eps(centers[i][0], {3 * r: 1}), Eps(centers[i][1], {3 * r + 1: 1}))
            ws[i] = Eps(weights[i], {3 * r + 2: 1})
        centers, weights = cs, ws
    return SiteSystem(rng.facets, centers, weights)


def build_dual_graph(homothets) -> DualGraph:
    """Cone-Delaunay graph of a family in which no homothet contains another.

    Exact witnesses first; pairs blocked only by exact ties are decided
    under a symbolic perturbation of centers and scalings.
    """
    fam = as_family(homothets)
    labels = list(fam)
    for a, b in combinations(labels, 2):
        if contained_in(fam[a], fam[b]) or contained_in(fam[b], fam[a]):
            raise InstanceError(f"homothets {a!r} and {b!r} are nested")
    g = Graph(labels)
    witness = {}
    if not labels:
        return DualGraph(fam, g, witness)
    rng = next(iter(fam.values())).range
    system = _sites(rng, fam, labels)
    tied = []
    for i, j in combinations(range(len(labels)), 2):
        found, is_tied = system.pair_status(i, j)
        if found is not None:
            (x, y), value = found
            g.add_edge(labels[i], labels[j])
            witness[(labels[i], labels[j])] = ("exact", (x, y, -value))
        elif is_tied:
            tied.append((i, j))
    if tied:
        moved = _sites(rng, fam, labels, perturbed=True)
        for i, j in tied:
            found = moved.pair_witness(i, j)
            if found is not None:
                (x, y), value = found
                g.add_edge(labels[i], labels[j])
                witness[(labels[i], labels[j])] = ("perturbed", (base(x), base(y), -base(value)))
    if not planarity_check(g):
        raise InternalConsistencyError("dual graph failed the planarity test")
    return DualGraph(fam, g, witness)


def color_dual(homothets, budget=None) -> Coloring:
    """At most 4 colors; every point covered twice sees two colors."""
    fam = as_family(homothets)
    inside, container = contained_set(fam)
    outer = {lab: h for lab, h in fam.items() if lab not in inside}
    dg = build_dual_graph(outer)
    coloring = color_planar_4(dg.graph) if budget is None else color_planar_4(dg.graph, budget)
    colors = dict(coloring.colors)
    for lab in fam:
        if lab in inside:
            colors[lab] = 1 if colors[container[lab]] == 0 else 0
    return Coloring({lab: colors[lab] for lab in fam})


# -- exact arrangement sampling ------------------------------------------------


def _boundary_segments(fam):
    segs = []
    for lab, h in fam.items():
        vs = h.vertices()
        for k in range(len(vs)):
            segs.append((lab, vs[k], vs[(k + 1) % len(vs)]))
    return segs


def _bbox(p, q):
    return (min(p[0], q[0]), max(p[0], q[0]), min(p[1], q[1]), max(p[1], q[1]))


def _split_params(p, q, r, s):
    """Parameters on ``pq`` where it meets segment ``rs`` (0, 1 or 2 values)."""
    d = (q[0] - p[0], q[1] - p[1])
    e = (s[0] - r[0], s[1] - r[1])
    w = (r[0] - p[0], r[1] - p[1])
    den = cross(d, e)
    if den != 0:
        t = cross(w, e) / den
        u = cross(w, d) / den
        if 0 <= t <= 1 and 0 <= u <= 1:
            return [t]
        return []
    if cross(w, d) != 0:
        return []
    # collinear: project the endpoints of rs onto pq
    dd = d[0] * d[0] + d[1] * d[1]
    out = []
    for z in (r, s):
        t = ((z[0] - p[0]) * d[0] + (z[1] - p[1]) * d[1]) / dd
        if 0 <= t <= 1:
            out.append(t)
    return out


def arrangement_samples(fam):
    """``(point, normal)`` pairs hitting every cell of the boundary arrangement.

    ``normal`` is ``None`` for the point itself, otherwise the sample stands
    for the point pushed an infinitesimal distance along ``normal``.
    """
    segs = _boundary_segments(fam)
    boxes = [_bbox(p, q) for _, p, q in segs]
    out = []
    for i, (_, p, q) in enumerate(segs):
        bi = boxes[i]
        ts = {mpq(0), mpq(1)}
        for j, (_, r, s) in enumerate(segs):
            if i == j:
                continue
            bj = boxes[j]
            if bj[0] > bi[1] or bj[1] < bi[0] or bj[2] > bi[3] or bj[3] < bi[2]:
                continue
            ts.update(_split_params(p, q, r, s))
        ts = sorted(ts)
        n = (q[1] - p[1], p[0] - q[0])
        for t in ts:
            out.append(((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])), None))
        for a, b in zip(ts, ts[1:]):
            t = (a + b) / 2
            m = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            out.append((m, None))
            out.append((m, n))
            out.append((m, (-n[0], -n[1])))
    for h in fam.values():
        out.append((h.center, None))
    return out


def _covers(h: Homothet, m, normal) -> bool:
    c, lam = h.center, h.scaling
    v = (m[0] - c[0], m[1] - c[1])
    for a in h.range.facets:
        g = a[0] * v[0] + a[1] * v[1] - lam
        if g > 0:
            return False
        if g == 0 and normal is not None and a[0] * normal[0] + a[1] * normal[1] > 0:
            return False
    return True


def _concrete(fam, m, normal, members):
    """An actual point realizing the symbolic sample, checked directly."""
    if normal is None:
        return m
    delta = mpq(1)
    while delta > mpq(1, 2**200):
        x = (m[0] + delta * normal[0], m[1] + delta * normal[1])
        if {lab for lab, h in fam.items() if x in h} == set(members):
            return x
        delta /= 2
    raise InternalConsistencyError("could not realize an infinitesimal sample")


def dual_hyperedges(homothets) -> dict:
    """Every distinct set of homothets sharing a point, mapped to such a point."""
    fam = as_family(homothets)
    labels = list(fam)
    boxes = {}
    for lab, h in fam.items():
        vs = h.vertices()
        boxes[lab] = (min(v[0] for v in vs), max(v[0] for v in vs),
                      min(v[1] for v in vs), max(v[1] for v in vs))
    found = {}
    for m, normal in arrangement_samples(fam):
        members = []
        for lab in labels:
            b = boxes[lab]
            if b[0] <= m[0] <= b[1] and b[2] <= m[1] <= b[3] and _covers(fam[lab], m, normal):
                members.append(lab)
        key = frozenset(members)
        if key and key not in found:
            found[key] = (m, normal)
    return {k: _concrete(fam, m, normal, k) for k, (m, normal) in found.items()}


def verify_dual(homothets, coloring) -> Report:
    """Look for a point covered at least twice by homothets of one color."""
    fam = as_family(homothets)
    colors = coloring.colors if isinstance(coloring, Coloring) else dict(coloring)
    missing = [lab for lab in fam if lab not in colors]
    if missing:
        raise InstanceError(f"coloring misses {missing[0]!r}")
    edges = dual_hyperedges(fam)
    for key in sorted(edges, key=lambda k: (len(k), sorted(map(str, k)))):
        if len(key) >= 2 and len({colors[lab] for lab in key}) == 1:
            x = edges[key]
            inside = [lab for lab in fam if x in fam[lab]]
            if set(inside) != set(key):
                raise InternalConsistencyError("hyperedge witness does not reproduce")
            return fail(
                f"point ({x[0]}, {x[1]}) is covered by {len(key)} homothets all of color {colors[inside[0]]}",
                witness=x,
                members=inside,
            )
    return PASS
