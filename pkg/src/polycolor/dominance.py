"""Dominance hypergraphs of point sets in 3-space.

A hyperedge is the set of points below some apex in all three
coordinates.  Ties are broken by comparing ``(coordinate, index)`` pairs;
a plain apex coordinate ``c`` behaves as ``(c, +inf)``, so it dominates
exactly the points it dominates without perturbation.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from .coloring import Coloring, Graph, degeneracy_order, greedy_color
from .errors import GeometryError, GuardrailError, InstanceError, InternalConsistencyError
from .geometry import ConvexRange, Homothet, dot, point, rational
from .report import PASS, Report, fail

LARGE_N = 400


@dataclass
class Realizer3D:
    labels: tuple
    points: tuple

    def __init__(self, points):
        items = points.items() if isinstance(points, Mapping) else enumerate(points)
        labels, pts = [], []
        for label, p in items:
            if len(p) != 3:
                raise InstanceError(f"point {label!r} is not three-dimensional")
            labels.append(label)
            pts.append(tuple(rational(c) for c in p))
        if len(set(labels)) != len(labels):
            raise InstanceError("duplicate labels in realizer")
        self.labels = tuple(labels)
        self.points = tuple(pts)
        self._masks = None

    def __len__(self):
        return len(self.labels)

    def key(self, i, axis):
        return (self.points[i][axis], i)

    def masks(self):
        """``masks()[axis][i]``: bitmask of points whose key on ``axis`` is
        at most point ``i``'s."""
        if self._masks is None:
            n = len(self)
            out = []
            for axis in range(3):
                order = sorted(range(n), key=lambda i: self.key(i, axis))
                row = [0] * n
                acc = 0
                for i in order:
                    acc |= 1 << i
                    row[i] = acc
                out.append(row)
            self._masks = out
        return self._masks

    def members(self, mask) -> frozenset:
        return frozenset(self.labels[i] for i in range(len(self)) if mask >> i & 1)


@dataclass
class DominanceHypergraph:
    realizer: Realizer3D
    edges: dict = field(default_factory=dict)  # bitmask -> apex as point indices (ix, iy, iz)

    def hyperedges(self) -> list:
        return [self.realizer.members(m) for m in self.edges]

    def __len__(self):
        return len(self.edges)


@dataclass
class GkGraph:
    graph: Graph
    k: int

    @property
    def edges(self) -> list:
        return self.graph.edges()


def dominated_set(realizer: Realizer3D, apex) -> frozenset:
    ax, ay, az = (rational(c) for c in apex)
    return frozenset(
        lab for lab, (x, y, z) in zip(realizer.labels, realizer.points)
        if x <= ax and y <= ay and z <= az
    )


def _as_realizer(r) -> Realizer3D:
    return r if isinstance(r, Realizer3D) else Realizer3D(r)


def enumerate_hyperedges(realizer, allow_large=False) -> DominanceHypergraph:
    """All distinct non-empty dominated sets, apexes drawn from point keys.

    Each hyperedge keeps the apex made of its members' largest keys, which
    is the smallest apex dominating it.
    """
    r = _as_realizer(realizer)
    n = len(r)
    if n > LARGE_N and not allow_large:
        raise GuardrailError(f"{n} points exceeds {LARGE_N}; pass allow_large")
    mx, my, mz = r.masks()
    seen = set()
    for i in range(n):
        for j in range(n):
            xy = mx[i] & my[j]
            if not xy:
                continue
            for k in range(n):
                m = xy & mz[k]
                if m:
                    seen.add(m)
    edges = {}
    for m in sorted(seen):
        idx = [i for i in range(n) if m >> i & 1]
        apex = tuple(max(idx, key=lambda i: r.key(i, axis)) for axis in range(3))
        if (mx[apex[0]] & my[apex[1]] & mz[apex[2]]) != m:
            raise InternalConsistencyError("hyperedge is not the dominated set of its apex")
        edges[m] = apex
    return DominanceHypergraph(r, edges)


def _pair_count(r, u, v):
    mx, my, mz = r.masks()
    ax = u if r.key(u, 0) > r.key(v, 0) else v
    ay = u if r.key(u, 1) > r.key(v, 1) else v
    az = u if r.key(u, 2) > r.key(v, 2) else v
    return bin(mx[ax] & my[ay] & mz[az]).count("1")


def build_Gk(realizer, k: int) -> GkGraph:
    """``uv`` is an edge iff the smallest apex above both dominates at most ``k`` points."""
    if k < 2:
        raise InstanceError("k must be at least 2")
    r = _as_realizer(realizer)
    n = len(r)
    g = Graph(r.labels)
    for u in range(n):
        for v in range(u + 1, n):
            if _pair_count(r, u, v) <= k:
                g.add_edge(r.labels[u], r.labels[v])
    if n >= 3 and g.num_edges() > 3 * (k - 1) * n - 6:
        raise InternalConsistencyError(f"G_{k} has {g.num_edges()} edges, above 3(k-1)n-6")
    return GkGraph(g, k)


def extreme_stats(hypergraph: DominanceHypergraph, k: int) -> int:
    """Number of size-``k`` hyperedges whose x-, y- and z-minimal members are not all distinct."""
    r = hypergraph.realizer
    count = 0
    for m in hypergraph.edges:
        if bin(m).count("1") != k:
            continue
        idx = [i for i in range(len(r)) if m >> i & 1]
        lows = {min(idx, key=lambda i: r.key(i, axis)) for axis in range(3)}
        if len(lows) < 3:
            count += 1
    if count > 3 * len(r):
        raise InternalConsistencyError(f"{count} extreme hyperedges exceed 3n = {3 * len(r)}")
    return count


def color_k(realizer, k: int) -> Coloring:
    """At most ``6(k-1)`` colors; each hyperedge ``e`` sees ``min(|e|, k)`` of them."""
    gk = build_Gk(realizer, k)
    order, degen = degeneracy_order(gk.graph)
    if len(gk.graph) and degen > 6 * (k - 1) - 1:
        raise InternalConsistencyError(f"G_{k} is {degen}-degenerate, above 6(k-1)-1")
    coloring = greedy_color(gk.graph, order)
    if coloring.num_colors > max(6 * (k - 1), 1):
        raise InternalConsistencyError("greedy coloring exceeded 6(k-1) colors")
    return coloring


def verify_polychromatic(hypergraph: DominanceHypergraph, coloring, k: int) -> Report:
    colors = coloring.colors if isinstance(coloring, Coloring) else dict(coloring)
    r = hypergraph.realizer
    missing = [lab for lab in r.labels if lab not in colors]
    if missing:
        raise InstanceError(f"coloring misses {missing[0]!r}")
    for m, apex in hypergraph.edges.items():
        members = r.members(m)
        need = min(len(members), k)
        got = len({colors[lab] for lab in members})
        if got < need:
            where = tuple(r.points[apex[axis]][axis] for axis in range(3))
            return fail(
                f"hyperedge of size {len(members)} below apex {where} has {got} colors, needs {need}",
                witness=where,
                members=sorted(members, key=r.labels.index),
            )
    return PASS


def negate(realizer) -> Realizer3D:
    """Reverse the dominance order (the primal/dual exchange in three dimensions)."""
    r = _as_realizer(realizer)
    return Realizer3D({lab: tuple(-c for c in p) for lab, p in zip(r.labels, r.points)})


@dataclass
class TriangleRealizer:
    realizer: Realizer3D
    facets: tuple

    def image(self, p) -> tuple:
        """Apex whose dominated set is the set of homothets holding ``p``."""
        p = point(p)
        return tuple(-dot(a, p) for a in self.facets)


def triangle_dual_realizer(homothets) -> TriangleRealizer:
    """Map homothets of one triangle to 3D points so that containment of a
    plane point becomes dominance by the point's image."""
    fam = dict(homothets) if isinstance(homothets, Mapping) else dict(enumerate(homothets))
    ranges = {h.range for h in fam.values()}
    if len(ranges) > 1:
        raise GeometryError("all homothets must share one range")
    if not ranges:
        raise InstanceError("an empty family has no base triangle")
    rng = ranges.pop()
    if len(rng.facets) != 3:
        raise GeometryError("the base range must be a triangle")
    facets = rng.facets
    pts = {lab: tuple(-b for b in h.offsets()) for lab, h in fam.items()}
    return TriangleRealizer(Realizer3D(pts), facets)
