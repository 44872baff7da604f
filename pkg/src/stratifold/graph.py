"""Bicolored labeled graphs encoding 2-stratifolds.

A 2-stratifold is a compact connected 2-complex whose singular set is a
disjoint union of circles (the branch circles), each with a neighborhood
homeomorphic to a mapping cylinder of d >= 3 sheets.  Such a space is
encoded by a bipartite multigraph:

  * a white vertex is a compact surface piece W; its ``genus`` follows the
    usual convention that g >= 0 means orientable of genus g and g < 0
    means nonorientable with |g| crosscaps;
  * a black vertex is a branch circle;
  * an edge joins a white vertex to a black vertex and records one boundary
    circle of W glued to the branch circle by a covering of (signed)
    degree ``label`` != 0.

The sign of a label depends on chosen orientations of the branch circle
and of the boundary circle, so two labelings that differ by the
re-orientation moves implemented in :func:`normalize` and
:func:`are_isomorphic` describe the same space.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import GraphError


@dataclass(frozen=True)
class WhiteVertex:
    id: str
    genus: int


@dataclass(frozen=True)
class BlackVertex:
    id: str


@dataclass(frozen=True)
class Edge:
    id: str
    white: str
    black: str
    label: int


@dataclass(frozen=True)
class Violation:
    """One failed graph invariant.  ``rule`` is a stable token."""

    rule: str
    subject: str
    detail: str


# Vertices are addressed by ("w", id) / ("b", id) pairs internally, since the
# two color classes have independent id namespaces.
_WHITE = "w"
_BLACK = "b"


class StratifoldGraph:
    """Immutable bicolored multigraph.

    Construction checks only structural well-formedness (unique ids, edge
    endpoints that exist and have the right colors).  Semantic invariants,
    like the branch condition, are reported by :func:`validate` so that
    broken graphs can be represented and diagnosed.
    """

    __slots__ = ("whites", "blacks", "edges", "_white_by_id", "_black_by_id",
                 "_edge_by_id", "_star")

    def __init__(self, whites: Iterable[WhiteVertex],
                 blacks: Iterable[BlackVertex],
                 edges: Iterable[Edge]):
        ws = tuple(sorted(whites, key=lambda v: v.id))
        bs = tuple(sorted(blacks, key=lambda v: v.id))
        es = tuple(sorted(edges, key=lambda e: e.id))
        self_set = super().__setattr__
        self_set("whites", ws)
        self_set("blacks", bs)
        self_set("edges", es)

        white_by_id = {}
        for v in ws:
            if v.id in white_by_id:
                raise GraphError(f"duplicate white vertex id {v.id!r}")
            white_by_id[v.id] = v
        black_by_id = {}
        for v in bs:
            if v.id in black_by_id:
                raise GraphError(f"duplicate black vertex id {v.id!r}")
            black_by_id[v.id] = v
        edge_by_id = {}
        star: dict[tuple[str, str], list[str]] = {}
        for key in [(_WHITE, w) for w in white_by_id] + [(_BLACK, b) for b in black_by_id]:
            star[key] = []
        for e in es:
            if e.id in edge_by_id:
                raise GraphError(f"duplicate edge id {e.id!r}")
            if e.white not in white_by_id:
                raise GraphError(f"edge {e.id!r}: dangling white endpoint {e.white!r}")
            if e.black not in black_by_id:
                raise GraphError(f"edge {e.id!r}: dangling black endpoint {e.black!r}")
            edge_by_id[e.id] = e
            star[(_WHITE, e.white)].append(e.id)
            star[(_BLACK, e.black)].append(e.id)
        # edges are already id-sorted, so each star list is id-sorted too
        self_set("_white_by_id", white_by_id)
        self_set("_black_by_id", black_by_id)
        self_set("_edge_by_id", edge_by_id)
        self_set("_star", star)

    def __setattr__(self, name, value):
        raise AttributeError("StratifoldGraph is immutable")

    # -- lookups ---------------------------------------------------------

    def white(self, wid: str) -> WhiteVertex:
        try:
            return self._white_by_id[wid]
        except KeyError:
            raise GraphError(f"no white vertex {wid!r}") from None

    def black(self, bid: str) -> BlackVertex:
        try:
            return self._black_by_id[bid]
        except KeyError:
            raise GraphError(f"no black vertex {bid!r}") from None

    def edge(self, eid: str) -> Edge:
        try:
            return self._edge_by_id[eid]
        except KeyError:
            raise GraphError(f"no edge {eid!r}") from None

    def has_white(self, wid: str) -> bool:
        return wid in self._white_by_id

    def has_black(self, bid: str) -> bool:
        return bid in self._black_by_id

    def edges_at_white(self, wid: str) -> tuple[str, ...]:
        """Ids of edges incident to a white vertex, in id order."""
        self.white(wid)
        return tuple(self._star[(_WHITE, wid)])

    def edges_at_black(self, bid: str) -> tuple[str, ...]:
        self.black(bid)
        return tuple(self._star[(_BLACK, bid)])

    def _edges_at(self, vertex: tuple[str, str]) -> tuple[str, ...]:
        return tuple(self._star[vertex])

    def _vertices(self) -> list[tuple[str, str]]:
        """All vertices as (kind, id) pairs, sorted by (id, kind)."""
        vs = [(_BLACK, b.id) for b in self.blacks] + [(_WHITE, w.id) for w in self.whites]
        vs.sort(key=lambda v: (v[1], v[0]))
        return vs

    # -- equality --------------------------------------------------------

    def _key(self):
        return (self.whites, self.blacks, self.edges)

    def __eq__(self, other):
        if not isinstance(other, StratifoldGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"StratifoldGraph({len(self.whites)} white, "
                f"{len(self.blacks)} black, {len(self.edges)} edges)")


def validate(graph: StratifoldGraph) -> list[Violation]:
    """Check the semantic invariants; an empty list means the graph is valid.

    Rules reported:

    * ``ZeroLabel`` - an edge labeled 0,
    * ``BranchTooSmall`` - a black vertex whose incident absolute labels sum
      to d < 3 (fewer than three sheets meet the branch circle),
    * ``IsolatedBlack`` - a black vertex with no incident edge,
    * ``IsolatedWhite`` - a white vertex with no incident edge in a graph
      with more than one vertex (a lone closed-surface vertex is allowed),
    * ``Disconnected`` - the graph is empty or not connected.
    """
    out: list[Violation] = []
    for e in graph.edges:
        if e.label == 0:
            out.append(Violation("ZeroLabel", e.id, f"edge {e.id} has label 0"))
    for b in graph.blacks:
        eids = graph.edges_at_black(b.id)
        if not eids:
            out.append(Violation("IsolatedBlack", b.id,
                                 f"black vertex {b.id} has no incident edge"))
            continue
        d = sum(abs(graph.edge(eid).label) for eid in eids)
        if d < 3:
            out.append(Violation("BranchTooSmall", b.id,
                                 f"black vertex {b.id} has d={d} < 3"))
    nverts = len(graph.whites) + len(graph.blacks)
    if nverts > 1:
        for w in graph.whites:
            if not graph.edges_at_white(w.id):
                out.append(Violation("IsolatedWhite", w.id,
                                     f"white vertex {w.id} has no incident edge"))
    if nverts == 0:
        out.append(Violation("Disconnected", "", "empty graph"))
    elif len(_component_of(graph, graph._vertices()[0])) != nverts:
        out.append(Violation("Disconnected", "", "graph is not connected"))
    return out


def _component_of(graph: StratifoldGraph, start: tuple[str, str]) -> set[tuple[str, str]]:
    seen = {start}
    queue = [start]
    while queue:
        v = queue.pop()
        for eid in graph._edges_at(v):
            e = graph.edge(eid)
            other = (_BLACK, e.black) if v[0] == _WHITE else (_WHITE, e.white)
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return seen


def partition_at(graph: StratifoldGraph, black_id: str) -> tuple[int, ...]:
    """The partition of d at a branch circle: incident |labels|, descending.

    Its sum d is the number of sheets meeting the circle, and the parts are
    the covering degrees of the boundary circles glued there.
    """
    eids = graph.edges_at_black(black_id)
    return tuple(sorted((abs(graph.edge(eid).label) for eid in eids), reverse=True))


def _surface_loop_count(genus: int) -> int:
    # rank of the standard one-vertex cell structure: 2g loops when
    # orientable, |g| loops when nonorientable
    return 2 * genus if genus >= 0 else -genus


def euler_characteristic(graph: StratifoldGraph) -> int:
    """Euler characteristic of the 2-complex, summed piecewise.

    Each black circle contributes 0, and a white piece of genus g with p
    boundary circles contributes 2 - 2g - p (orientable) or 2 - |g| - p
    (nonorientable).
    """
    total = 0
    for w in graph.whites:
        p = len(graph.edges_at_white(w.id))
        total += 2 - _surface_loop_count(w.genus) - p
    return total


def cw_euler(graph: StratifoldGraph) -> int:
    """Euler characteristic by explicit cell count (independent route).

    Builds an actual cell structure: each black circle gets one vertex and
    one edge; each white piece gets a base vertex, its surface loops, one
    2-cell, and for every boundary circle of degree |m| a cellular model
    with |m| vertices, |m| edges and a tether edge to the base vertex.
    Boundary cells are then identified with the black circle cells along
    the degree-|m| covering (union-find), and V - E + F is counted.
    """
    parent: dict[tuple, tuple] = {}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    vertex_cells: list[tuple] = []
    edge_cells: list[tuple] = []
    faces = 0

    def add(kind, cell):
        parent[cell] = cell
        (vertex_cells if kind == "v" else edge_cells).append(cell)

    for b in graph.blacks:
        add("v", ("bv", b.id))
        add("e", ("be", b.id))
    for w in graph.whites:
        add("v", ("wv", w.id))
        for i in range(_surface_loop_count(w.genus)):
            add("e", ("wl", w.id, i))
        faces += 1
    for e in graph.edges:
        k = abs(e.label)
        if k == 0:
            raise GraphError(f"edge {e.id} has label 0; cw_euler needs a valid graph")
        for i in range(k):
            add("v", ("sv", e.id, i))
            add("e", ("se", e.id, i))
        add("e", ("wt", e.id))
        # glue the boundary circle onto the branch circle, degree k
        for i in range(k):
            union(("sv", e.id, i), ("bv", e.black))
            union(("se", e.id, i), ("be", e.black))

    nv = len({find(c) for c in vertex_cells})
    ne = len({find(c) for c in edge_cells})
    return nv - ne + faces


def spanning_tree(graph: StratifoldGraph) -> frozenset[str]:
    """Edge ids of the breadth-first spanning tree.

    The search starts at the lexicographically smallest vertex id (black
    before white on an id tie) and scans each vertex's incident edges in
    edge-id order, so the result is deterministic.
    """
    verts = graph._vertices()
    if not verts:
        raise GraphError("empty graph has no spanning tree")
    start = verts[0]
    seen = {start}
    tree: list[str] = []
    queue = [start]
    while queue:
        v = queue.pop(0)
        for eid in graph._edges_at(v):
            e = graph.edge(eid)
            other = (_BLACK, e.black) if v[0] == _WHITE else (_WHITE, e.white)
            if other not in seen:
                seen.add(other)
                tree.append(eid)
                queue.append(other)
    if len(seen) != len(verts):
        raise GraphError("graph is not connected")
    return frozenset(tree)


def _bfs_discovery(graph: StratifoldGraph) -> list[tuple[tuple[str, str], str]]:
    """(vertex, discovering edge id) pairs in BFS order, root omitted."""
    verts = graph._vertices()
    start = verts[0]
    seen = {start}
    order: list[tuple[tuple[str, str], str]] = []
    queue = [start]
    while queue:
        v = queue.pop(0)
        for eid in graph._edges_at(v):
            e = graph.edge(eid)
            other = (_BLACK, e.black) if v[0] == _WHITE else (_WHITE, e.white)
            if other not in seen:
                seen.add(other)
                order.append((other, eid))
                queue.append(other)
    return order


def normalize(graph: StratifoldGraph) -> StratifoldGraph:
    """Make every spanning-tree label positive using re-orientation moves.

    The moves, each of which re-orients part of the stratifold and so
    fixes its homeomorphism type, are:

      M1  negate all labels at one black vertex (re-orient the circle),
      M2  negate all labels at one orientable white vertex,
      M3  negate a single label at a nonorientable white vertex.

    Walking the BFS tree from the root, a negative tree label is repaired
    by a move at its far (child) endpoint, which cannot disturb tree edges
    already fixed.  Idempotent, and the result is move-isomorphic to the
    input by construction.
    """
    tree = spanning_tree(graph)
    labels = {e.id: e.label for e in graph.edges}
    for (vertex, eid) in _bfs_discovery(graph):
        if eid not in tree:  # pragma: no cover - discovery edges are tree edges
            continue
        if labels[eid] > 0:
            continue
        kind, vid = vertex
        if kind == _BLACK:
            for other in graph.edges_at_black(vid):
                labels[other] = -labels[other]
        elif graph.white(vid).genus >= 0:
            for other in graph.edges_at_white(vid):
                labels[other] = -labels[other]
        else:
            labels[eid] = -labels[eid]
    return StratifoldGraph(
        graph.whites, graph.blacks,
        [Edge(e.id, e.white, e.black, labels[e.id]) for e in graph.edges])


# -- move-class isomorphism ----------------------------------------------


def _white_signature(graph, wid):
    return (graph.white(wid).genus,
            tuple(sorted(abs(graph.edge(eid).label) for eid in graph.edges_at_white(wid))))


def _black_signature(graph, bid):
    return tuple(sorted(abs(graph.edge(eid).label) for eid in graph.edges_at_black(bid)))


def _cells(graph):
    """Group parallel edges: (white, black, |label|) -> (count, positives)."""
    cells: dict[tuple[str, str, int], list[int]] = {}
    for e in graph.edges:
        key = (e.white, e.black, abs(e.label))
        cnt = cells.setdefault(key, [0, 0])
        cnt[0] += 1
        if e.label > 0:
            cnt[1] += 1
    return cells


def _signs_compatible(g1, g2, wmap, bmap):
    """Decide whether edge signs agree up to the moves M1-M3.

    Every move negates either all edges at one vertex or one edge at a
    nonorientable white vertex, so sign patterns are compared per parallel
    class.  A class at an orientable white vertex can only be flipped as a
    block, giving a parity constraint y_black xor y_white = c; classes at
    nonorientable whites are unconstrained (single-edge moves).  The
    constraints form a union-find-with-parity problem.
    """
    c1, c2 = _cells(g1), _cells(g2)
    if len(c1) != len(c2):
        return False

    parent: dict[tuple[str, str], tuple[tuple[str, str], int]] = {}

    def find(x):
        if x not in parent:
            parent[x] = (x, 0)
        root, par = x, 0
        while parent[root][0] != root:
            par ^= parent[root][1]
            root = parent[root][0]
        # path compression
        node, acc = x, par
        while parent[node][0] != node:
            nxt, p = parent[node]
            parent[node] = (root, acc)
            acc ^= p
            node = nxt
        return root, par

    def union(x, y, rel):
        rx, px = find(x)
        ry, py = find(y)
        if rx == ry:
            return (px ^ py) == rel
        parent[rx] = (ry, px ^ py ^ rel)
        return True

    for (w, b, m), (k, pos1) in c1.items():
        target = c2.get((wmap[w], bmap[b], m))
        if target is None or target[0] != k:
            return False
        pos2 = target[1]
        if g1.white(w).genus < 0:
            continue  # any sign pattern reachable via M3
        allowed = set()
        if pos1 == pos2:
            allowed.add(0)
        if pos1 + pos2 == k:
            allowed.add(1)
        if not allowed:
            return False
        if len(allowed) == 2:
            continue
        if not union(("w", w), ("b", b), allowed.pop()):
            return False
    return True


def are_isomorphic(g1: StratifoldGraph, g2: StratifoldGraph) -> bool:
    """Isomorphism of bicolored labeled graphs up to the moves M1-M3.

    A color- and genus-preserving vertex bijection must match every
    parallel class of edges by absolute label, and the sign patterns must
    differ by re-orientation moves only.  The search backtracks over
    vertex bijections pruned by local signatures.  Whether M1-M3 generate
    all label equivalences realized by homeomorphisms is not claimed; this
    predicate is exactly move-class isomorphism.
    """
    if (len(g1.whites) != len(g2.whites) or len(g1.blacks) != len(g2.blacks)
            or len(g1.edges) != len(g2.edges)):
        return False
    w1 = [w.id for w in g1.whites]
    w2 = [w.id for w in g2.whites]
    b1 = [b.id for b in g1.blacks]
    b2 = [b.id for b in g2.blacks]
    sig1w = {w: _white_signature(g1, w) for w in w1}
    sig2w = {w: _white_signature(g2, w) for w in w2}
    sig1b = {b: _black_signature(g1, b) for b in b1}
    sig2b = {b: _black_signature(g2, b) for b in b2}
    if sorted(sig1w.values()) != sorted(sig2w.values()):
        return False
    if sorted(sig1b.values()) != sorted(sig2b.values()):
        return False

    cells1 = _cells(g1)

    def extend(i, wmap, used):
        if i == len(w1):
            return match_blacks(0, {}, set(), wmap)
        w = w1[i]
        for cand in w2:
            if cand in used or sig2w[cand] != sig1w[w]:
                continue
            wmap[w] = cand
            used.add(cand)
            if extend(i + 1, wmap, used):
                return True
            del wmap[w]
            used.remove(cand)
        return False

    def match_blacks(i, bmap, used, wmap):
        if i == len(b1):
            return check(wmap, bmap)
        b = b1[i]
        for cand in b2:
            if cand in used or sig2b[cand] != sig1b[b]:
                continue
            bmap[b] = cand
            used.add(cand)
            if match_blacks(i + 1, bmap, used, wmap):
                return True
            del bmap[b]
            used.remove(cand)
        return False

    def check(wmap, bmap):
        cells2 = _cells(g2)
        for (w, b, m), (k, _) in cells1.items():
            t = cells2.get((wmap[w], bmap[b], m))
            if t is None or t[0] != k:
                return False
        return _signs_compatible(g1, g2, wmap, bmap)

    return extend(0, {}, set())
