"""Conflict-free colorings by repeated removal of a largest color class."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .coloring import Coloring
from .dominance import Realizer3D, color_k, enumerate_hyperedges, triangle_dual_realizer
from .dual import as_family, color_dual, dual_hyperedges
from .errors import InstanceError, InternalConsistencyError
from .report import PASS, Report, fail


@dataclass
class CFInstance:
    """A hypergraph seen through two callbacks.

    ``colorer(subset)`` returns a ``(strength + 1)``-polychromatic coloring
    of the sub-hypergraph induced by ``subset`` with at most ``palette``
    colors; ``hyperedges()`` lists every hyperedge as a set of vertices.
    Removing largest classes of such colorings gives a ``strength``-strong
    conflict-free coloring.
    """

    vertices: list
    colorer: Callable
    palette: int
    hyperedges: Callable[[], Iterable]
    strength: int = 1
    audit: list = field(default_factory=list)

    def __post_init__(self):
        if self.palette < 2:
            raise InstanceError("palette bound must be at least 2")
        if self.strength < 1:
            raise InstanceError("strength must be positive")


def log_bound(n: int, base: float) -> int:
    """``ceil(log_base n)``, at least 1 for a non-empty vertex set."""
    if n <= 1:
        return 1
    # exact guard against floating round-off at integral powers
    b = math.ceil(math.log(n) / math.log(base) - 1e-12)
    return max(b, 1)


def _iterate(instance: CFInstance, k: int) -> Coloring:
    if k > instance.strength:
        raise InstanceError(f"instance supports strength {instance.strength}, not {k}")
    if not instance.vertices:
        raise InstanceError("instance has no vertices")
    remaining = list(instance.vertices)
    final = {}
    instance.audit = []
    rnd = 0
    while remaining:
        coloring = instance.colorer(list(remaining))
        classes = {}
        for v in remaining:
            classes.setdefault(coloring[v], []).append(v)
        if len(classes) > instance.palette:
            raise InternalConsistencyError(
                f"colorer used {len(classes)} colors, above its bound {instance.palette}"
            )
        color = min(classes, key=lambda c: (-len(classes[c]), c))
        removed = classes[color]
        if len(removed) * instance.palette < len(remaining):
            raise InternalConsistencyError("largest class smaller than n_i / c")
        instance.audit.append(
            {"round": rnd, "remaining": len(remaining), "class": color, "removed": list(removed)}
        )
        for v in removed:
            final[v] = rnd
        gone = set(removed)
        remaining = [v for v in remaining if v not in gone]
        rnd += 1
    c = instance.palette
    limit = log_bound(len(instance.vertices), c / (c - 1))
    if rnd > limit:
        raise InternalConsistencyError(f"{rnd} rounds exceed ceil(log_(c/(c-1)) n) = {limit}")
    return Coloring(final)


def cf_color(instance: CFInstance) -> Coloring:
    """Conflict-free: every hyperedge has a vertex whose color is unique in it."""
    return _iterate(instance, 1)


def k_strong_cf_color(instance: CFInstance, k: int) -> Coloring:
    """Every hyperedge ``e`` has ``min(|e|, k)`` vertices with unique colors."""
    if k < 1:
        raise InstanceError("k must be positive")
    return _iterate(instance, k)


def strong_bound(n: int, k: int) -> int:
    """``ceil(log n)`` in base ``1 + 1/(6(k-1))``; for ``k = 1`` the base is 4/3."""
    if k == 1:
        return log_bound(n, 4 / 3)
    return log_bound(n, 1 + 1 / (6 * (k - 1)))


def verify_cf(instance: CFInstance, coloring, k: int = 1) -> Report:
    colors = coloring.colors if isinstance(coloring, Coloring) else dict(coloring)
    missing = [v for v in instance.vertices if v not in colors]
    if missing:
        raise InstanceError(f"coloring misses {missing[0]!r}")
    for e in instance.hyperedges():
        counts = {}
        for v in e:
            counts[colors[v]] = counts.get(colors[v], 0) + 1
        unique = sum(1 for c in counts.values() if c == 1)
        need = min(len(e), k)
        if unique < need:
            return fail(
                f"hyperedge of size {len(e)} has {unique} uniquely colored vertices, needs {need}",
                members=sorted(e, key=instance.vertices.index),
            )
    return PASS


def dual_instance(homothets) -> CFInstance:
    """Homothets as vertices, points of the plane as hyperedges; palette 4."""
    fam = as_family(homothets)

    def colorer(subset):
        return color_dual({lab: fam[lab] for lab in subset})

    return CFInstance(list(fam), colorer, 4, lambda: list(dual_hyperedges(fam)))


def _dominance_colorer(r: Realizer3D, k: int):
    pts = dict(zip(r.labels, r.points))
    order = {lab: i for i, lab in enumerate(r.labels)}

    def colorer(subset):
        # keep the original label order so index tie-breaking is unchanged
        sub = Realizer3D({lab: pts[lab] for lab in sorted(subset, key=order.__getitem__)})
        return color_k(sub, k + 1)

    return colorer


def dominance_instance(realizer, k: int = 1) -> CFInstance:
    """Dominance hypergraph, colored ``(k+1)``-polychromatically with ``6k`` colors."""
    r = realizer if isinstance(realizer, Realizer3D) else Realizer3D(realizer)
    return CFInstance(
        list(r.labels), _dominance_colorer(r, k), 6 * k,
        lambda: enumerate_hyperedges(r).hyperedges(), strength=k,
    )


def triangle_dual_instance(homothets, k: int = 1) -> CFInstance:
    """Triangle homothets through their dominance realizer.

    Every point of the plane maps to an apex, so the dual hyperedges are a
    subset of the dominance hyperedges and the dominance colorer applies.
    """
    fam = as_family(homothets)
    tr = triangle_dual_realizer(fam)
    return CFInstance(
        list(fam), _dominance_colorer(tr.realizer, k), 6 * k,
        lambda: list(dual_hyperedges(fam)), strength=k,
    )
