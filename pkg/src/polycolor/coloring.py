"""Graph coloring engines: planarity, exact 4-coloring, 5-coloring, degeneracy."""
from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

import networkx as nx

from .errors import InstanceError, InternalConsistencyError, SearchBudgetExceeded

DEFAULT_BUDGET = 10**7


class Graph:
    """Simple undirected graph.  Vertex order is the input order."""

    def __init__(self, vertices: Iterable[Hashable] = (), edges: Iterable = ()):
        self.vertices = []
        self.adj = {}
        self._index = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    def add_vertex(self, v):
        if v not in self.adj:
            self._index[v] = len(self.vertices)
            self.vertices.append(v)
            self.adj[v] = set()

    def add_edge(self, u, v):
        if u == v:
            raise InstanceError(f"self-loop at {u!r}")
        self.add_vertex(u)
        self.add_vertex(v)
        self.adj[u].add(v)
        self.adj[v].add(u)

    def index(self, v) -> int:
        return self._index[v]

    def degree(self, v) -> int:
        return len(self.adj[v])

    def edges(self) -> list:
        """Sorted edge list, each pair ordered by vertex index."""
        out = []
        for u in self.vertices:
            iu = self._index[u]
            for v in self.adj[u]:
                if iu < self._index[v]:
                    out.append((u, v))
        out.sort(key=lambda e: (self._index[e[0]], self._index[e[1]]))
        return out

    def num_edges(self) -> int:
        return sum(len(s) for s in self.adj.values()) // 2

    def has_edge(self, u, v) -> bool:
        return v in self.adj.get(u, ())

    def subgraph(self, keep) -> "Graph":
        keep = set(keep)
        g = Graph(v for v in self.vertices if v in keep)
        for u, v in self.edges():
            if u in keep and v in keep:
                g.add_edge(u, v)
        return g

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges())
        return g

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.adj

    def __repr__(self):
        return f"Graph({len(self)} vertices, {self.num_edges()} edges)"


@dataclass
class Coloring:
    """Vertex to 0-based color index."""

    colors: dict = field(default_factory=dict)

    @property
    def num_colors(self) -> int:
        return len(set(self.colors.values()))

    def __getitem__(self, v):
        return self.colors[v]

    def __len__(self):
        return len(self.colors)

    def __iter__(self):
        return iter(self.colors)

    def items(self):
        return self.colors.items()


def as_coloring(c) -> Coloring:
    if isinstance(c, Coloring):
        return c
    return Coloring(dict(c))


def is_proper(graph: Graph, coloring) -> bool:
    colors = coloring.colors if isinstance(coloring, Coloring) else coloring
    if any(v not in colors for v in graph.vertices):
        return False
    return all(colors[u] != colors[v] for u, v in graph.edges())


def _require_proper(graph, coloring, limit, what):
    if not is_proper(graph, coloring):
        raise InternalConsistencyError(f"{what} produced an improper coloring")
    if limit is not None and coloring.num_colors > limit:
        raise InternalConsistencyError(f"{what} used more than {limit} colors")
    return coloring


@dataclass
class PlanarityReport:
    planar: bool
    embedding: object = None
    witness: object = None  # Kuratowski subgraph when not planar

    def __bool__(self):
        return self.planar


def planarity_check(graph: Graph) -> PlanarityReport:
    ok, cert = nx.check_planarity(graph.to_networkx(), counterexample=True)
    if ok:
        return PlanarityReport(True, embedding=cert)
    return PlanarityReport(False, witness=cert)


def degeneracy_order(graph: Graph):
    """Repeatedly remove a minimum-degree vertex (lowest index on ties).

    Returns ``(order, degeneracy)``.
    """
    deg = {v: len(graph.adj[v]) for v in graph.vertices}
    heap = [(d, graph.index(v), v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed = set()
    order = []
    k = 0
    while heap:
        d, _, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        removed.add(v)
        order.append(v)
        k = max(k, d)
        for w in graph.adj[v]:
            if w not in removed:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], graph.index(w), w))
    return order, k


def greedy_color(graph: Graph, order) -> Coloring:
    """Color in reverse of ``order`` with the smallest free color."""
    order = list(order)
    if sorted(map(graph.index, order)) != list(range(len(graph))):
        raise InstanceError("order must be a permutation of the vertices")
    colors = {}
    for v in reversed(order):
        used = {colors[w] for w in graph.adj[v] if w in colors}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return Coloring(colors)


def _components(graph, verts):
    verts = set(verts)
    seen = set()
    out = []
    for s in graph.vertices:
        if s not in verts or s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in graph.adj[v]:
                if w in verts and w not in seen:
                    seen.add(w)
                    stack.append(w)
        out.append(comp)
    return out


def _dsatur_search(graph, comp, ncolors, budget, counter, colors):
    """Exact backtracking with saturation ordering; fills ``colors`` in place."""
    comp_set = set(comp)
    adj = {v: [w for w in graph.adj[v] if w in comp_set] for v in comp}
    idx = graph.index
    uncolored = set(comp)
    # forbid[v][c] = number of colored neighbours of v holding color c
    forbid = {v: [0] * ncolors for v in comp}

    def pick():
        best, key = None, None
        for v in uncolored:
            f = forbid[v]
            sat = sum(1 for c in f if c)
            k = (-sat, -len(adj[v]), idx(v))
            if key is None or k < key:
                best, key = v, k
        return best

    def rec(max_used):
        if not uncolored:
            return True
        counter[0] += 1
        if counter[0] > budget:
            raise SearchBudgetExceeded(
                f"4-coloring search exceeded {budget} nodes",
                nodes=counter[0],
                partial=colors,
            )
        v = pick()
        f = forbid[v]
        uncolored.discard(v)
        for c in range(min(ncolors, max_used + 2)):
            if f[c]:
                continue
            colors[v] = c
            for w in adj[v]:
                forbid[w][c] += 1
            if rec(max(max_used, c)):
                return True
            for w in adj[v]:
                forbid[w][c] -= 1
            del colors[v]
        uncolored.add(v)
        return False

    return rec(-1)


def color_planar_4(graph: Graph, budget: int = DEFAULT_BUDGET) -> Coloring:
    """Exact 4-coloring by saturation-ordered backtracking.

    Vertices of degree < 4 are peeled off first and colored last; the
    remaining core is searched one component at a time.
    """
    deg = {v: len(graph.adj[v]) for v in graph.vertices}
    removed = set()
    peeled = []
    stack = [v for v in graph.vertices if deg[v] < 4]
    while stack:
        v = stack.pop()
        if v in removed:
            continue
        removed.add(v)
        peeled.append(v)
        for w in graph.adj[v]:
            if w not in removed:
                deg[w] -= 1
                if deg[w] == 3:
                    stack.append(w)
    core = [v for v in graph.vertices if v not in removed]
    colors = {}
    counter = [0]
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(core) + 1000))
    try:
        for comp in _components(graph, core):
            if not _dsatur_search(graph, comp, 4, budget, counter, colors):
                raise InternalConsistencyError(
                    "no 4-coloring exists; the graph cannot be planar"
                )
    finally:
        sys.setrecursionlimit(old)
    for v in reversed(peeled):
        used = {colors[w] for w in graph.adj[v] if w in colors}
        colors[v] = min(c for c in range(4) if c not in used)
    return _require_proper(graph, Coloring(colors), 4, "color_planar_4")


def exact_color(graph: Graph, ncolors: int, budget: int = DEFAULT_BUDGET):
    """A proper coloring with at most ``ncolors`` colors, or ``None``."""
    colors = {}
    counter = [0]
    for comp in _components(graph, graph.vertices):
        if not _dsatur_search(graph, comp, ncolors, budget, counter, colors):
            return None
    return Coloring(colors)


def color_planar_5(graph: Graph) -> Coloring:
    """Classical contraction algorithm for planar graphs.

    A vertex of degree <= 4 is deleted; otherwise a degree-5 vertex is
    deleted and two non-adjacent neighbours are merged.  Coloring back in
    reverse never needs a sixth color.
    """
    adj = {v: set(graph.adj[v]) for v in graph.vertices}
    idx = graph.index
    heap = [(len(adj[v]), idx(v), v) for v in graph.vertices]
    heapq.heapify(heap)
    log = []
    while adj:
        d, _, v = heapq.heappop(heap)
        if v not in adj or d != len(adj[v]):
            continue
        nbrs = sorted(adj[v], key=idx)
        if d <= 4:
            log.append((v, nbrs, None))
            touched = nbrs
        elif d == 5:
            pair = next(
                ((x, y) for i, x in enumerate(nbrs) for y in nbrs[i + 1:]
                 if y not in adj[x]),
                None,
            )
            if pair is None:
                raise InstanceError("graph is not planar (K6 neighbourhood)")
            x, y = pair
            log.append((v, nbrs, (y, x)))
            for z in adj[y]:
                if z != x and z != v:
                    adj[z].discard(y)
                    adj[z].add(x)
                    adj[x].add(z)
            adj[x].discard(y)
            del adj[y]
            touched = list(adj[x]) + [x]
        else:
            raise InstanceError("graph is not planar (minimum degree above 5)")
        for w in adj.pop(v):
            if w in adj:
                adj[w].discard(v)
        for w in touched:
            if w in adj:
                heapq.heappush(heap, (len(adj[w]), idx(w), w))
    colors = {}
    for v, nbrs, merge in reversed(log):
        if merge is not None:
            y, x = merge
            colors[y] = colors[x]
        used = {colors[w] for w in nbrs}
        colors[v] = min(c for c in range(6) if c not in used)
    return _require_proper(graph, Coloring(colors), 5, "color_planar_5")


def relabel(coloring: Coloring, mapping: Mapping) -> Coloring:
    return Coloring({mapping.get(v, v): c for v, c in coloring.items()})


def _ckey(c):
    return (type(c).__name__, c)


def _boundary(faces):
    """Outer cycle of a near-triangulation given by consistently oriented faces."""
    darts = set()
    for a, b, c in faces:
        darts.update(((a, b), (b, c), (c, a)))
    succ = {u: v for u, v in darts if (v, u) not in darts}
    return succ, darts


def _cycle_from(succ, v1, v2):
    if succ.get(v1) == v2:
        step = succ
    else:
        step = {v: u for u, v in succ.items()}
        if step.get(v1) != v2:
            raise InternalConsistencyError("precolored pair is not a boundary edge")
    cyc = [v1]
    v = v2
    while v != v1:
        cyc.append(v)
        v = step[v]
        if len(cyc) > len(succ):
            raise InternalConsistencyError("outer boundary is not a simple cycle")
    return cyc


def _split(faces, x, y):
    """Components of the face adjacency when edge ``xy`` is not crossed."""
    owner = {}
    for f in faces:
        a, b, c = f
        for e in ((a, b), (b, c), (c, a)):
            owner.setdefault(frozenset(e), []).append(f)
    cut = frozenset((x, y))
    seen, parts = set(), []
    for f in faces:
        if f in seen:
            continue
        part, stack = [], [f]
        seen.add(f)
        while stack:
            g = stack.pop()
            part.append(g)
            a, b, c = g
            for e in ((a, b), (b, c), (c, a)):
                e = frozenset(e)
                if e == cut:
                    continue
                for h in owner[e]:
                    if h not in seen:
                        seen.add(h)
                        stack.append(h)
        parts.append(part)
    return parts


def _thomassen(faces, lists, colors, v1, v2):
    """Color a near-triangulation whose edge ``v1 v2`` on the outer cycle is
    precolored; other outer vertices need 3 colors, inner ones 5."""
    succ, darts = _boundary(faces)
    cyc = _cycle_from(succ, v1, v2)
    if len(faces) == 1:
        w = cyc[2]
        if w not in colors:
            colors[w] = min((c for c in lists[w] if c != colors[v1] and c != colors[v2]), key=_ckey)
        return
    pos = {v: i for i, v in enumerate(cyc)}
    p = len(cyc)
    chord = next(
        ((u, v) for u, v in sorted(darts, key=lambda d: (pos.get(d[0], p), pos.get(d[1], p)))
         if u in pos and v in pos and pos[v] > pos[u] + 1 and not (pos[u] == 0 and pos[v] == p - 1)),
        None,
    )
    if chord is not None:
        x, y = chord
        part1, part2 = _split(faces, x, y)
        if not any(v1 in f and v2 in f for f in part1):
            part1, part2 = part2, part1
        _thomassen(part1, lists, colors, v1, v2)
        _thomassen(part2, lists, colors, x, y)
        return
    vp, prev = cyc[-1], cyc[-2]
    # neighbours of vp in rotation order, from v1 round to prev or back
    nxt = {}
    for f in faces:
        if vp in f:
            k = f.index(vp)
            nxt[f[(k + 1) % 3]] = f[(k + 2) % 3]
    start = next(v for v in nxt if v not in nxt.values())
    chain = [start]
    while chain[-1] in nxt:
        chain.append(nxt[chain[-1]])
    inner = chain[1:-1]
    avail = sorted((c for c in lists[vp] if c != colors[v1]), key=_ckey)
    if len(avail) < 2:
        raise InternalConsistencyError("outer vertex has fewer than three list colors")
    a, b = avail[:2]
    sub = dict(lists)
    for u in inner:
        sub[u] = [c for c in lists[u] if c != a and c != b]
        if len(sub[u]) < 3:
            raise InternalConsistencyError("inner vertex lost more than two list colors")
    _thomassen([f for f in faces if vp not in f], sub, colors, v1, v2)
    colors[vp] = a if colors[prev] != a else b


def _faces(embedding, outer):
    seen, out = set(), []
    for u, v in embedding.edges():
        if (u, v) in seen:
            continue
        face = embedding.traverse_face(u, v, mark_half_edges=seen)
        out.append(tuple(face))
    o = set(outer)
    return [f for f in out if set(f) != o or len(f) != 3] + \
        [f for f in out if set(f) == o and len(f) == 3][1:]


def list_color_planar_5(graph: Graph, lists: Mapping) -> Coloring:
    """Choose each vertex's color from its own list of at least 5 colors."""
    from networkx.algorithms.planar_drawing import triangulate_embedding

    for v in graph.vertices:
        if v not in lists:
            raise InstanceError(f"no list for vertex {v!r}")
        if len(set(lists[v])) < 5:
            raise InstanceError(f"list of {v!r} has fewer than 5 colors")
    L = {v: sorted(set(lists[v]), key=_ckey) for v in graph.vertices}
    colors = {}
    if len(graph) < 3:
        for v in graph.vertices:
            colors[v] = min((c for c in L[v] if c not in colors.values()), key=_ckey)
        return _require_proper(graph, Coloring(colors), None, "list_color_planar_5")
    rep = planarity_check(graph)
    if not rep:
        raise InstanceError("graph is not planar")
    emb, outer = triangulate_embedding(rep.embedding, True)
    faces = _faces(emb, outer)
    v1, v2 = outer[0], outer[1]
    colors[v1] = L[v1][0]
    colors[v2] = next(c for c in L[v2] if c != colors[v1])
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * len(graph) + 1000))
    try:
        _thomassen(faces, L, colors, v1, v2)
    finally:
        sys.setrecursionlimit(limit)
    if any(colors[v] not in L[v] for v in graph.vertices):
        raise InternalConsistencyError("list coloring left a vertex's list")
    return _require_proper(graph, Coloring({v: colors[v] for v in graph.vertices}), None,
                           "list_color_planar_5")
