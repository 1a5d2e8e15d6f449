"""Static DOT and SVG output."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .coloring import Coloring, Graph

PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4",
    "#f032e6", "#bfef45", "#fabed4", "#469990", "#dcbeff", "#9a6324",
)


def color_of(c) -> str:
    if isinstance(c, int):
        return PALETTE[c % len(PALETTE)]
    return PALETTE[sum(map(ord, str(c))) % len(PALETTE)]


def _quote(label) -> str:
    return '"' + str(label).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: Graph, coloring: Coloring | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in graph.vertices:
        attrs = ""
        if coloring is not None and v in coloring.colors:
            c = coloring[v]
            attrs = f' [label="{v}:{c}", style=filled, fillcolor="{color_of(c)}"]'
        lines.append(f"  {_quote(v)}{attrs};")
    for u, v in graph.edges():
        lines.append(f"  {_quote(u)} -- {_quote(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_dot(text: str) -> Graph:
    """Read the subset of DOT written by :func:`to_dot`."""
    g = Graph()
    body = text[text.index("{") + 1:text.rindex("}")]
    for stmt in body.split(";"):
        stmt = stmt.split("[")[0].strip()
        if not stmt:
            continue
        parts = [p.strip().strip('"') for p in stmt.split("--")]
        for p in parts:
            if p not in g:
                g.add_vertex(p)
        if len(parts) == 2:
            g.add_edge(parts[0], parts[1])
    return g


class _Canvas:
    def __init__(self, xs, ys, size=480, pad=20):
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0) or 1
        self.s = (size - 2 * pad) / float(span)
        self.pad = pad
        self.w = int(float(self.x1 - self.x0) * self.s) + 2 * pad
        self.h = int(float(self.y1 - self.y0) * self.s) + 2 * pad
        self.items = []

    def xy(self, p):
        return (round(self.pad + float(p[0] - self.x0) * self.s, 2),
                round(self.h - self.pad - float(p[1] - self.y0) * self.s, 2))

    def svg(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.w}" height="{self.h}" '
                f'viewBox="0 0 {self.w} {self.h}">')
        return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>', *self.items, "</svg>"]) + "\n"


def primal_svg(points, graph: Graph | None = None, coloring: Coloring | None = None) -> str:
    """Points as dots, Delaunay edges as lines."""
    pts = dict(points.items())
    cv = _Canvas([p[0] for p in pts.values()], [p[1] for p in pts.values()])
    if graph is not None:
        for u, v in graph.edges():
            (x1, y1), (x2, y2) = cv.xy(pts[u]), cv.xy(pts[v])
            cv.items.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#888"/>')
    for lab, p in pts.items():
        x, y = cv.xy(p)
        fill = color_of(coloring[lab]) if coloring is not None else "black"
        cv.items.append(f'<circle cx="{x}" cy="{y}" r="5" fill="{fill}"><title>{escape(str(lab))}</title></circle>')
    return cv.svg()


def dual_svg(homothets: dict, coloring: Coloring | None = None) -> str:
    """Homothets as translucent polygons."""
    verts = {lab: h.vertices() for lab, h in homothets.items()}
    allv = [v for vs in verts.values() for v in vs]
    cv = _Canvas([v[0] for v in allv], [v[1] for v in allv])
    for lab, vs in verts.items():
        pts = " ".join("{},{}".format(*cv.xy(v)) for v in vs)
        fill = color_of(coloring[lab]) if coloring is not None else "#999"
        cv.items.append(
            f'<polygon points="{pts}" fill="{fill}" fill-opacity="0.25" stroke="{fill}">'
            f"<title>{escape(str(lab))}</title></polygon>"
        )
    return cv.svg()
