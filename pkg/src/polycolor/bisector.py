"""Exact two-site adjacency for additively weighted polygonal distances.

A :class:`SiteSystem` holds sites ``s_i`` with weights ``w_i`` and a convex
polygonal distance given by cyclically ordered functionals ``b_j``::

    value_i(x) = max_j b_j . (x - s_i) - w_i

Sites ``u`` and ``v`` are *adjacent* when some ``x`` has
``max(value_u(x), value_v(x)) < value_r(x)`` for every other site ``r``.
Both the primal Delaunay graph (``b = -a``, zero weights) and the dual
cone graph (``b = a``, weights equal to the scalings) are instances.

Such an ``x`` exists iff one exists on the one-dimensional skeleton of the
bisector ``{value_u = value_v}``, i.e. on a segment where ``u`` and ``v``
use *different* facets.  Along one skeleton segment ``value_u`` is affine
and each ``value_r - value_u`` is convex, so the set where ``r`` is not
strictly farther is a closed interval obtained by intersecting half-lines.
Adjacency is then a one-dimensional covering question, solved exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .perturb import base

INF = float("inf")
NEAR_FIRST = 6


@dataclass
class Segment:
    """Piece of a bisector where ``u`` uses facet ``ju`` and ``v`` uses ``jv``."""

    ju: int
    jv: int
    x0: tuple
    d: tuple
    lo: object
    hi: object
    v0: mpq
    v1: mpq
    p0: list
    p1: list

    def at(self, s) -> tuple:
        return (self.x0[0] + s * self.d[0], self.x0[1] + s * self.d[1])

    def value(self, s):
        return self.v0 + self.v1 * s


def complement(lo, hi, intervals, closed=True) -> list:
    """Pieces of ``[lo, hi]`` not covered by the given intervals.

    ``intervals`` are closed when ``closed`` is true, open otherwise.  Each
    returned piece is ``(a, a_in, b, b_in)`` where the flags say whether the
    endpoint belongs to the piece; infinite ends are never included.
    """
    pieces = []
    cur, cur_in = lo, lo != -INF
    for a, b in sorted(intervals, key=lambda iv: iv[0]):
        if cur > hi:
            break
        if a > hi:
            _push(pieces, cur, cur_in, hi, hi != INF)
            cur, cur_in = INF, False
            break
        _push(pieces, cur, cur_in, a, not closed and a != INF)
        if b > cur:
            cur, cur_in = b, not closed and b != INF
        elif b == cur and closed:
            cur_in = False
    if cur <= hi:
        _push(pieces, cur, cur_in, hi, hi != INF)
    return pieces


def _push(pieces, a, a_in, b, b_in):
    if a < b or (a == b and a_in and b_in):
        pieces.append((a, a_in, b, b_in))


def representative(piece):
    a, a_closed, b, b_closed = piece
    if a == -INF and b == INF:
        return mpq(0)
    if a == -INF:
        return b - 1
    if b == INF:
        return a + 1
    if a == b:
        return a
    return (a + b) / 2


def sample_points(piece) -> list:
    """Endpoints that belong to the piece plus one interior point."""
    a, a_closed, b, b_closed = piece
    out = []
    if a_closed:
        out.append(a)
    rep = representative(piece)
    if rep not in out:
        out.append(rep)
    if b_closed and b not in out:
        out.append(b)
    return out


class SiteSystem:
    def __init__(self, normals, sites, weights=None):
        self.normals = [tuple(b) for b in normals]
        self.sites = [tuple(s) for s in sites]
        n = len(self.sites)
        self.weights = list(weights) if weights is not None else [mpq(0)] * n
        # value_i(x) = max_m (b_m . x - const[i][m])
        self.const = [
            [b[0] * s[0] + b[1] * s[1] + w for b in self.normals]
            for s, w in zip(self.sites, self.weights)
        ]
        self._near = None

    def __len__(self):
        return len(self.sites)

    def value(self, i, x):
        c = self.const[i]
        return max(b[0] * x[0] + b[1] * x[1] - c[m] for m, b in enumerate(self.normals))

    def values(self, x) -> list:
        bx = [b[0] * x[0] + b[1] * x[1] for b in self.normals]
        return [max(v - c for v, c in zip(bx, row)) for row in self.const]

    def near(self, u) -> list:
        if self._near is None:
            self._near = []
            flat = [(base(x), base(y)) for x, y in self.sites]
            for i, s in enumerate(flat):
                order = sorted(
                    (j for j in range(len(flat)) if j != i),
                    key=lambda j: (flat[j][0] - s[0]) ** 2 + (flat[j][1] - s[1]) ** 2,
                )
                self._near.append(order)
        return self._near[u]

    def _facet_pairs(self):
        """Per facet pair ``(ju, jv)``: everything in a segment that does not
        depend on the sites."""
        if getattr(self, "_pairs", None) is None:
            normals, F = self.normals, len(self.normals)
            pairs = []
            for ju in range(F):
                bu = normals[ju]
                for jv in range(F):
                    if ju == jv:
                        continue
                    bv = normals[jv]
                    n0, n1 = bu[0] - bv[0], bu[1] - bv[1]
                    nn = n0 * n0 + n1 * n1
                    d = (-n1, n0)
                    cons = []
                    for side, j in ((0, ju), (1, jv)):
                        bj = normals[j]
                        for m in ((j - 1) % F, (j + 1) % F):
                            bm = normals[m]
                            g0, g1 = bj[0] - bm[0], bj[1] - bm[1]
                            # facet j dominates m along the line
                            cons.append((side, j, m, (g0 * n0 + g1 * n1) / nn, g0 * d[0] + g1 * d[1]))
                    pairs.append((ju, jv, n0 / nn, n1 / nn, d, cons))
            self._pairs = pairs
        return self._pairs

    def segments(self, u, v):
        """Yield the non-empty skeleton segments of the ``u``/``v`` bisector."""
        normals = self.normals
        cu, cv = self.const[u], self.const[v]
        rows = (cu, cv)
        for ju, jv, m0, m1, d, cons in self._facet_pairs():
            c = cu[ju] - cv[jv]
            lo, hi = -INF, INF
            for side, j, m, gn, beta in cons:
                row = rows[side]
                # need gn*c - (row[j] - row[m]) + beta*s >= 0
                alpha = gn * c - (row[j] - row[m])
                if beta > 0:
                    bound = -alpha / beta
                    if bound > lo:
                        lo = bound
                elif beta < 0:
                    bound = -alpha / beta
                    if bound < hi:
                        hi = bound
                elif alpha < 0:
                    break
                if lo > hi:
                    break
            else:
                bu = normals[ju]
                x0 = (m0 * c, m1 * c)
                v0 = bu[0] * x0[0] + bu[1] * x0[1] - cu[ju]
                v1 = bu[0] * d[0] + bu[1] * d[1]
                p0 = [b[0] * x0[0] + b[1] * x0[1] - v0 for b in normals]
                p1 = [b[0] * d[0] + b[1] * d[1] - v1 for b in normals]
                yield Segment(ju, jv, x0, d, lo, hi, v0, v1, p0, p1)

    def blocking_interval(self, seg: Segment, r, strict=False):
        """Parameters where site ``r`` is not strictly farther than ``u``.

        With ``strict`` the interval where ``r`` is strictly nearer (open).
        Returns ``None`` when empty.
        """
        lo, hi = -INF, INF
        for p0, p1, c in zip(seg.p0, seg.p1, self.const[r]):
            alpha = p0 - c
            # r not farther:  alpha + p1*s <= 0  (strictly nearer: < 0)
            if p1 > 0:
                bound = -alpha / p1
                if bound < hi:
                    hi = bound
            elif p1 < 0:
                bound = -alpha / p1
                if bound > lo:
                    lo = bound
            elif alpha > 0 or (strict and alpha == 0):
                return None
            if lo > hi or (strict and lo == hi):
                return None
        return lo, hi

    def _obstacle_order(self, u, v, obstacles):
        near = []
        seen = set()
        for r in self.near(u)[:NEAR_FIRST] + self.near(v)[:NEAR_FIRST]:
            if r in obstacles and r not in seen:
                seen.add(r)
                near.append(r)
        return near

    def free_pieces(self, seg, u, v, obstacles, strict=False, quick=()):
        """Complement of the blocking intervals on ``seg``.

        ``quick`` obstacles are tried first; if they already cover the
        segment the full set is never examined.
        """
        if quick:
            ivs = []
            for r in quick:
                iv = self.blocking_interval(seg, r, strict)
                if iv is None:
                    continue
                lo, hi = iv
                # one obstacle covering the whole segment is the common case
                if (lo < seg.lo or (lo == seg.lo and not strict)) and (
                    hi > seg.hi or (hi == seg.hi and not strict)
                ):
                    return []
                ivs.append(iv)
            if not complement(seg.lo, seg.hi, ivs, not strict):
                return []
        ivs = [self.blocking_interval(seg, r, strict) for r in obstacles]
        return complement(seg.lo, seg.hi, [iv for iv in ivs if iv], not strict)

    def pair_witness(self, u, v, obstacles=None):
        """A point where ``u`` and ``v`` tie strictly below all obstacles.

        Returns ``(x, value)`` or ``None``.  ``obstacles`` defaults to every
        other site.
        """
        if obstacles is None:
            obstacles = [r for r in range(len(self.sites)) if r != u and r != v]
        obstacle_set = set(obstacles)
        quick = self._obstacle_order(u, v, obstacle_set)
        for seg in self.segments(u, v):
            pieces = self.free_pieces(seg, u, v, obstacles, quick=quick)
            for piece in pieces:
                s = representative(piece)
                return seg.at(s), seg.value(s)
        return None

    def pair_status(self, u, v, obstacles=None):
        """``(witness, tied)`` for the pair ``u``, ``v``.

        ``witness`` is as for :meth:`pair_witness`.  When it is ``None``,
        ``tied`` says whether some skeleton point has no obstacle strictly
        nearer, i.e. the pair is blocked only by exact ties.
        """
        if obstacles is None:
            obstacles = [r for r in range(len(self.sites)) if r != u and r != v]
        quick = self._obstacle_order(u, v, set(obstacles))
        tied = False
        for seg in self.segments(u, v):
            pieces = self.free_pieces(seg, u, v, obstacles, quick=quick)
            if pieces:
                s = representative(pieces[0])
                return (seg.at(s), seg.value(s)), False
            if not tied and self.free_pieces(seg, u, v, obstacles, True, quick):
                tied = True
        return None, tied
