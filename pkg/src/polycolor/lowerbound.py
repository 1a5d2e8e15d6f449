"""Configurations forcing ``4 * floor(k/2)`` colors, and exhaustive checks.

Four clusters of ``floor(k/2)`` points sit at the corners and the centroid
of a triangle bounded by three facet directions of the range.  Every two
clusters are cut out together by some homothet, so all of their points
need distinct colors.  The dual instance uses equal homothets centred at
the same places, with a point of depth two for every cluster pair.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from gmpy2 import mpq

from .dual import dual_hyperedges
from .errors import GeometryError, GuardrailError, InstanceError, InternalConsistencyError
from .geometry import ConvexRange, Homothet, cross, point
from .primal import _sites, build_delaunay

MAX_CHECK = 16
_RETRIES = 40


@dataclass
class LowerBoundInstance:
    """``items`` maps labels to points (primal) or homothets (dual).

    ``witnesses`` maps each cluster pair, as a frozenset of labels, to a
    homothet isolating it (primal) or a point covered by exactly it (dual).
    """

    kind: str
    range: ConvexRange | None
    k: int
    bound: int
    clusters: list
    items: dict
    witnesses: dict = field(default_factory=dict)
    variant: str = "triangle"

    @property
    def labels(self) -> list:
        return list(self.items)

    def hyperedges(self) -> list:
        return list(self.witnesses)


def spanning_triple(rng: ConvexRange):
    """Three pairwise non-parallel facet normals with 0 inside their hull."""
    for a, b, c in combinations(rng.facets, 3):
        s = (cross(b, c), cross(c, a), cross(a, b))
        if 0 in s:
            continue
        if all(v > 0 for v in s) or all(v < 0 for v in s):
            return a, b, c
    return None


def _meet(a, b):
    # a.x = 1 and b.x = 1
    d = cross(a, b)
    return ((b[1] - a[1]) / d, (a[0] - b[0]) / d)


def _triangle_sites(triple, sign):
    corners = [_meet(triple[0], triple[1]), _meet(triple[1], triple[2]), _meet(triple[2], triple[0])]
    corners = [(sign * x, sign * y) for x, y in corners]
    centroid = (sum(c[0] for c in corners) / 3, sum(c[1] for c in corners) / 3)
    return corners + [centroid]


def _parallelogram_sites(rng: ConvexRange):
    """Three sites pairwise isolated by homothets of a parallelogram.

    ``(0,0), (3,1), (1,2)`` work for the axis square; an affine map carries
    the square onto the range and homothets onto homothets.
    """
    v0, v1, v2, _ = rng.vertices
    c = ((v0[0] + v2[0]) / 2, (v0[1] + v2[1]) / 2)
    e1 = ((v0[0] - v1[0]) / 2, (v0[1] - v1[1]) / 2)
    e2 = ((v0[0] + v1[0]) / 2 - c[0], (v0[1] + v1[1]) / 2 - c[1])
    return [(c[0] + x * e1[0] + y * e2[0], c[1] + x * e1[1] + y * e2[1])
            for x, y in ((0, 0), (3, 1), (1, 2))]


def _sites_for(rng: ConvexRange, sign):
    triple = spanning_triple(rng)
    if triple is not None:
        return _triangle_sites(triple, sign), "triangle"
    if rng.is_parallelogram():
        return _parallelogram_sites(rng), "reconstructed-3-cluster"
    raise GeometryError("range has no three facet directions spanning the plane")


def _offsets(size, rho):
    # distinct, not collinear for size >= 3
    return [(rho * m / size, rho * m * m / (size * size)) for m in range(size)]


def _radius(sites):
    cx = sum(s[0] for s in sites) / len(sites)
    cy = sum(s[1] for s in sites) / len(sites)
    return max(max(abs(s[0] - cx), abs(s[1] - cy)) for s in sites)


def _clusters(sites, size, rho):
    items, clusters = {}, []
    for s in sites:
        group = []
        for dx, dy in _offsets(size, rho):
            lab = len(items)
            items[lab] = (s[0] + dx, s[1] + dy)
            group.append(lab)
        clusters.append(group)
    return items, clusters


def _slack_witness(rng, sites, i, j):
    """A homothet with sites ``i, j`` strictly inside and the rest strictly outside."""
    system = _sites(rng, sites)
    found = system.pair_witness(i, j)
    if found is None:
        return None
    x, value = found
    others = [rng.gauge((s[0] - x[0], s[1] - x[1])) for r, s in enumerate(sites) if r not in (i, j)]
    lam = (value + min(others)) / 2 if others else value + 1
    return Homothet(rng, x, lam)


def gen_lowerbound_primal(rng: ConvexRange, k: int) -> LowerBoundInstance:
    if k < 2:
        raise InstanceError("k must be at least 2")
    sites, variant = _sites_for(rng, -1)
    n = len(sites)
    g = build_delaunay(rng, {i: s for i, s in enumerate(sites)})
    if len(g.edges) != n * (n - 1) // 2:
        raise InternalConsistencyError("cluster centres do not form a complete Delaunay graph")
    ranges = {}
    for i, j in combinations(range(n), 2):
        h = _slack_witness(rng, sites, i, j)
        if h is None:
            raise InternalConsistencyError(f"no witness for sites {i} and {j}")
        ranges[(i, j)] = h
    size = k // 2
    rho = _radius(sites) / 1000
    for _ in range(_RETRIES):
        items, clusters = _clusters(sites, size, rho)
        witnesses = {}
        for (i, j), h in ranges.items():
            want = frozenset(clusters[i] + clusters[j])
            got = frozenset(lab for lab, p in items.items() if point(p) in h)
            if got != want:
                break
            witnesses[want] = h
        else:
            return LowerBoundInstance("primal", rng, k, n * size, clusters,
                                      {lab: point(p) for lab, p in items.items()}, witnesses, variant)
        rho /= 2
    raise InternalConsistencyError("cluster radius validation did not converge")


def _dual_scale(rng, sites):
    n = len(sites)
    spread = max(rng.gauge((p[0] - q[0], p[1] - q[1])) for p in sites for q in sites if p != q)
    want = [frozenset(e) for e in combinations(range(n), 2)]
    for factor in (1, 2, 4, 8, mpq(1, 2), 16):
        lam = spread * factor
        hy = dual_hyperedges({i: Homothet(rng, s, lam) for i, s in enumerate(sites)})
        if all(e in hy for e in want):
            return lam
    raise InternalConsistencyError("no common scale realizes every pair")


def gen_lowerbound_dual(rng: ConvexRange, k: int) -> LowerBoundInstance:
    if k < 2:
        raise InstanceError("k must be at least 2")
    sites, variant = _sites_for(rng, 1)
    n = len(sites)
    lam = _dual_scale(rng, sites)
    size = k // 2
    rho = _radius(sites) / 1000
    for _ in range(_RETRIES):
        items, clusters = _clusters(sites, size, rho)
        fam = {lab: Homothet(rng, p, lam) for lab, p in items.items()}
        hy = dual_hyperedges(fam)
        want = [frozenset(clusters[i] + clusters[j]) for i, j in combinations(range(n), 2)]
        if all(e in hy for e in want):
            witnesses = {e: hy[e] for e in want}
            return LowerBoundInstance("dual", rng, k, n * size, clusters, fam, witnesses, variant)
        rho /= 2
    raise InternalConsistencyError("cluster radius validation did not converge")


def check_lowerbound(instance: LowerBoundInstance, palette_size: int) -> bool:
    """True iff every coloring with ``palette_size`` colors leaves some
    witness hyperedge with fewer than ``min(|e|, k)`` colors.

    Colorings are enumerated up to renaming colors: vertex ``i`` only takes
    colors up to one more than the largest used so far.
    """
    labels = instance.labels
    n = len(labels)
    if n > MAX_CHECK:
        raise GuardrailError(f"{n} vertices exceeds the exhaustive limit {MAX_CHECK}")
    if palette_size < 1:
        return n > 0
    pos = {lab: i for i, lab in enumerate(labels)}
    edges = [sorted(pos[v] for v in e) for e in instance.hyperedges()]
    need = [min(len(e), instance.k) for e in edges]
    touching = [[] for _ in range(n)]
    for t, e in enumerate(edges):
        for v in e:
            touching[v].append(t)
    colors = [-1] * n

    def feasible(v):
        for t in touching[v]:
            e = edges[t]
            seen = {colors[u] for u in e if u <= v}
            if len(seen) + sum(1 for u in e if u > v) < need[t]:
                return False
        return True

    def search(v, used):
        if v == n:
            return True
        for c in range(min(used + 1, palette_size)):
            colors[v] = c
            if feasible(v) and search(v + 1, max(used, c + 1)):
                return True
        colors[v] = -1
        return False

    return not search(0, 0)
