"""JSON instance files.

Every rational is written as ``[numerator, denominator]`` with a positive,
reduced denominator; plain integers are accepted on input.  Labels are JSON
strings or integers and keep their order.  ``dumps(loads(text))`` returns
``text`` for files in canonical form.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from gmpy2 import mpq

from .coloring import Coloring
from .errors import InstanceError
from .geometry import ConvexRange, Homothet, PointSet
from .dominance import Realizer3D
from .lowerbound import LowerBoundInstance

KINDS = ("primal", "dual", "realizer3d")


def enc(q) -> list:
    q = mpq(q)
    return [int(q.numerator), int(q.denominator)]


def dec(v) -> mpq:
    if isinstance(v, bool) or isinstance(v, float):
        raise InstanceError(f"not an exact number: {v!r}")
    if isinstance(v, int):
        return mpq(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(c, int) and not isinstance(c, bool) for c in v):
        if v[1] == 0:
            raise InstanceError("zero denominator")
        return mpq(v[0], v[1])
    raise InstanceError(f"expected [numerator, denominator], got {v!r}")


def _label(v):
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return v
    raise InstanceError(f"labels must be strings or integers, got {v!r}")


@dataclass
class Instance:
    """A parsed instance file; ``extra`` keeps lower-bound metadata."""

    kind: str
    range: ConvexRange | None = None
    points: PointSet | None = None
    homothets: dict | None = None
    realizer: Realizer3D | None = None
    extra: dict = field(default_factory=dict)


def _range_from(obj) -> ConvexRange:
    try:
        return ConvexRange.from_vertices([(dec(x), dec(y)) for x, y in obj])
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"bad range: {exc}") from exc


def from_obj(obj) -> Instance:
    if not isinstance(obj, dict) or obj.get("kind") not in KINDS:
        raise InstanceError(f"instance kind must be one of {KINDS}")
    kind = obj["kind"]
    extra = {key: obj[key] for key in ("k", "bound", "clusters", "variant", "witnesses") if key in obj}
    try:
        if kind == "realizer3d":
            pts = {_label(lab): tuple(dec(c) for c in p) for lab, p in obj["points"]}
            if len(pts) != len(obj["points"]):
                raise InstanceError("duplicate labels")
            return Instance(kind, realizer=Realizer3D(pts), extra=extra)
        rng = _range_from(obj["range"])
        if kind == "primal":
            pts = PointSet([(_label(lab), (dec(x), dec(y))) for lab, (x, y) in obj["points"]])
            return Instance(kind, range=rng, points=pts, extra=extra)
        fam = {}
        for lab, (cx, cy), lam in obj["homothets"]:
            lab = _label(lab)
            if lab in fam:
                raise InstanceError(f"duplicate label {lab!r}")
            fam[lab] = Homothet(rng, (dec(cx), dec(cy)), dec(lam))
        return Instance(kind, range=rng, homothets=fam, extra=extra)
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceError(f"malformed {kind} instance: {exc!r}") from exc


def to_obj(inst: Instance) -> dict:
    obj = {"kind": inst.kind}
    if inst.range is not None:
        obj["range"] = [[enc(x), enc(y)] for x, y in inst.range.vertices]
    if inst.kind == "primal":
        obj["points"] = [[lab, [enc(x), enc(y)]] for lab, (x, y) in inst.points.items()]
    elif inst.kind == "dual":
        obj["homothets"] = [[lab, [enc(h.center[0]), enc(h.center[1])], enc(h.scaling)]
                            for lab, h in inst.homothets.items()]
    else:
        r = inst.realizer
        obj["points"] = [[lab, [enc(c) for c in p]] for lab, p in zip(r.labels, r.points)]
    obj.update(inst.extra)
    return obj


def loads(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"not JSON: {exc}") from exc
    return from_obj(obj)


def dumps(inst: Instance) -> str:
    return json.dumps(to_obj(inst), separators=(",", ":")) + "\n"


def load(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(inst: Instance, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(inst))


def primal_instance(rng, points) -> Instance:
    return Instance("primal", range=rng, points=points if isinstance(points, PointSet) else PointSet(points))


def dual_instance(homothets) -> Instance:
    fam = dict(homothets) if isinstance(homothets, dict) else dict(enumerate(homothets))
    ranges = {h.range for h in fam.values()}
    if len(ranges) != 1:
        raise InstanceError("a dual instance needs homothets of exactly one range")
    return Instance("dual", range=ranges.pop(), homothets=fam)


def realizer_instance(points) -> Instance:
    return Instance("realizer3d", realizer=points if isinstance(points, Realizer3D) else Realizer3D(points))


def from_lowerbound(lb: LowerBoundInstance) -> Instance:
    extra = {"k": lb.k, "bound": lb.bound, "clusters": lb.clusters, "variant": lb.variant}
    if lb.kind == "primal":
        inst = primal_instance(lb.range, lb.items)
        extra["witnesses"] = [[sorted(e), [enc(h.center[0]), enc(h.center[1])], enc(h.scaling)]
                              for e, h in lb.witnesses.items()]
    else:
        inst = dual_instance(lb.items)
        extra["witnesses"] = [[sorted(e), [enc(p[0]), enc(p[1])]] for e, p in lb.witnesses.items()]
    inst.extra = extra
    return inst


def coloring_obj(coloring: Coloring) -> list:
    return [[lab, c] for lab, c in coloring.items()]


def coloring_from(obj) -> Coloring:
    if isinstance(obj, dict):
        obj = obj.get("colors")
    if not isinstance(obj, list):
        raise InstanceError("coloring must be a list of [label, color] pairs")
    try:
        return Coloring({_label(lab): c for lab, c in obj})
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"malformed coloring: {exc!r}") from exc
