"""Spine graphs of the closed 3-manifolds in the classification.

The primitives are the lens spaces, the two S2-bundles over S1, and
P2 x S1; connected sum at the spine level is the delta-sum, which wedges
two spines and thickens the wedge point into a disk, creating one new
branch circle where three sheets meet.  ``synth`` builds the canonical
spine of a sum expression and ``recognize`` inverts it on that image.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, NoSpineError
from .graph import BlackVertex, Edge, StratifoldGraph, WhiteVertex, are_isomorphic

SUMMAND_KINDS = ("lens", "p2xs1", "s2xs1", "s2~xs1", "s3")

_KIND_NAMES = {"s2xs1": "S2xS1", "s2~xs1": "S2~xS1", "p2xs1": "P2xS1", "s3": "S3"}


@dataclass(frozen=True, order=True)
class Summand:
    """One prime summand: Lens(q), an S2-bundle over S1, or P2 x S1.

    S3 is representable so the expression grammar stays total, but it has
    no spine; synth rejects it.
    """

    kind: str
    q: int = 0

    def __post_init__(self):
        if self.kind not in SUMMAND_KINDS:
            raise DomainError(f"unknown summand kind {self.kind!r}")
        if self.kind == "lens":
            if self.q < 2:
                raise DomainError(f"lens parameter must be >= 2, got {self.q}")
        elif self.q:
            raise DomainError(f"{self.kind} takes no parameter")

    def __str__(self):
        if self.kind == "lens":
            return f"L({self.q})"
        return _KIND_NAMES[self.kind]


@dataclass(frozen=True)
class ManifoldExpr:
    """A nonempty multiset of summands, kept sorted for canonical form."""

    summands: tuple[Summand, ...]

    def __init__(self, summands):
        summands = tuple(sorted(summands))
        if not summands:
            raise DomainError("expression needs at least one summand")
        object.__setattr__(self, "summands", summands)

    def __str__(self):
        return " # ".join(str(s) for s in self.summands)


class NotCanonical:
    """Sentinel: the graph is not in the synth image as far as the
    recognizer can tell.  Falsy, like INDETERMINATE."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NOT_CANONICAL"

    def __bool__(self):
        return False


NOT_CANONICAL = NotCanonical()


def lens_spine(q: int) -> StratifoldGraph:
    """Spine of the lens space with cyclic fundamental group of order q.

    For q >= 3 this is a disk attached to a branch circle with degree q.
    The same picture with q = 2 would leave only two sheets on the branch
    circle, so the q = 2 spine is the projective plane itself: a single
    white vertex of genus -1 (RP3 minus a ball collapses onto it).
    """
    if q < 2:
        raise DomainError(f"lens parameter must be >= 2, got {q}")
    if q == 2:
        return StratifoldGraph([WhiteVertex("w", -1)], [], [])
    return StratifoldGraph([WhiteVertex("w", 0)], [BlackVertex("b")],
                           [Edge("e", "w", "b", q)])


def s2xs1_spine() -> StratifoldGraph:
    """Torus with a disk attached along a (1,0)-curve: spine of S2 x S1.

    Cutting the torus along the attaching circle leaves an annulus whose
    two boundary circles map with degree 1 each.
    """
    return StratifoldGraph(
        [WhiteVertex("wa", 0), WhiteVertex("wd", 0)], [BlackVertex("b")],
        [Edge("e1", "wa", "b", 1), Edge("e2", "wa", "b", 1),
         Edge("e3", "wd", "b", 1)])


def s2xs1_twisted_spine() -> StratifoldGraph:
    """Klein bottle with a disk attached: spine of the twisted bundle.

    Same shape as the torus spine, but the orientation-reversing
    monodromy flips one annulus boundary, so the labels are 1 and -1.
    """
    return StratifoldGraph(
        [WhiteVertex("wa", 0), WhiteVertex("wd", 0)], [BlackVertex("b")],
        [Edge("e1", "wa", "b", 1), Edge("e2", "wa", "b", -1),
         Edge("e3", "wd", "b", 1)])


def p2xs1_spine() -> StratifoldGraph:
    """Spine of P2 x S1: a projective plane union a torus over its
    one-sided curve c.

    The branch circle is c x {t0}.  P2 cut along c is a disk
    double-covering c (label 2); the torus c x S1 cut along the branch
    circle is an annulus with two degree-1 boundaries.  Partition (2,1,1).
    """
    return StratifoldGraph(
        [WhiteVertex("wa", 0), WhiteVertex("wp", 0)], [BlackVertex("b")],
        [Edge("e1", "wp", "b", 2), Edge("e2", "wa", "b", 1),
         Edge("e3", "wa", "b", 1)])


def _prefixed(graph: StratifoldGraph, prefix: str) -> StratifoldGraph:
    whites = [WhiteVertex(prefix + w.id, w.genus) for w in graph.whites]
    blacks = [BlackVertex(prefix + b.id) for b in graph.blacks]
    edges = [Edge(prefix + e.id, prefix + e.white, prefix + e.black, e.label)
             for e in graph.edges]
    return StratifoldGraph(whites, blacks, edges)


def delta_sum(g1: StratifoldGraph, w1: str, g2: StratifoldGraph,
              w2: str) -> StratifoldGraph:
    """Connected sum of spines: wedge at w1/w2 with the wedge point
    thickened to a disk.

    The result is the disjoint union (ids prefixed l. and r.) plus one
    new branch circle of partition (1,1,1): one sheet into each chosen
    white piece, one from the new disk.  chi drops by exactly 1 and the
    first homologies add.
    """
    g1.white(w1)
    g2.white(w2)
    left = _prefixed(g1, "l.")
    right = _prefixed(g2, "r.")
    whites = list(left.whites) + list(right.whites) + [WhiteVertex("jd", 0)]
    blacks = list(left.blacks) + list(right.blacks) + [BlackVertex("j")]
    edges = list(left.edges) + list(right.edges) + [
        Edge("ja", "l." + w1, "j", 1),
        Edge("jb", "r." + w2, "j", 1),
        Edge("jc", "jd", "j", 1)]
    return StratifoldGraph(whites, blacks, edges)


def _is_disk(graph: StratifoldGraph, wid: str) -> bool:
    return (graph.white(wid).genus == 0
            and len(graph.edges_at_white(wid)) == 1)


def attachment_white(graph: StratifoldGraph) -> str:
    """Deterministic white vertex for the next delta-sum: the smallest-id
    white piece that is not a disk, or the smallest-id white overall when
    the graph is all disks (a bare lens spine)."""
    for w in graph.whites:
        if not _is_disk(graph, w.id):
            return w.id
    return graph.whites[0].id


def _spine(s: Summand) -> StratifoldGraph:
    if s.kind == "s3":
        raise NoSpineError("S3 has no 2-stratifold spine:"
                           " no 2-stratifold is contractible")
    if s.kind == "lens":
        return lens_spine(s.q)
    if s.kind == "s2xs1":
        return s2xs1_spine()
    if s.kind == "s2~xs1":
        return s2xs1_twisted_spine()
    return p2xs1_spine()


def synth(expr: ManifoldExpr) -> StratifoldGraph:
    """Canonical spine of a connected-sum expression.

    Left fold of delta_sum over the sorted summands, attaching at the
    deterministic vertex on both sides, so equal expressions rebuild
    byte-identical graphs.  Rejects any expression mentioning S3.
    """
    graphs = [_spine(s) for s in expr.summands]
    acc = graphs[0]
    for g in graphs[1:]:
        acc = delta_sum(acc, attachment_white(acc), g, attachment_white(g))
    return acc


def _junction_blacks(graph: StratifoldGraph) -> list[tuple[str, str]]:
    """(black id, disk white id) for every delta-sum junction: a black
    vertex with exactly three degree-1 edges, exactly one of them to a
    disk, the other two to distinct non-disk whites."""
    out = []
    for b in graph.blacks:
        eids = graph.edges_at_black(b.id)
        if len(eids) != 3:
            continue
        edges = [graph.edge(eid) for eid in eids]
        if any(abs(e.label) != 1 for e in edges):
            continue
        disks = [e.white for e in edges if _is_disk(graph, e.white)]
        others = [e.white for e in edges if not _is_disk(graph, e.white)]
        if len(disks) == 1 and len(set(others)) == 2:
            out.append((b.id, disks[0]))
    return out


_PRIMITIVES = (
    ("s2xs1", s2xs1_spine), ("s2~xs1", s2xs1_twisted_spine),
    ("p2xs1", p2xs1_spine))


def _match_piece(piece: StratifoldGraph) -> Summand | None:
    if len(piece.blacks) == 0:
        if are_isomorphic(piece, lens_spine(2)):
            return Summand("lens", 2)
        return None
    if len(piece.blacks) == 1 and len(piece.whites) == 1 and len(piece.edges) == 1:
        q = abs(piece.edges[0].label)
        if q >= 3 and are_isomorphic(piece, lens_spine(q)):
            return Summand("lens", q)
        return None
    for kind, make in _PRIMITIVES:
        if are_isomorphic(piece, make()):
            return Summand(kind)
    return None


def recognize(graph: StratifoldGraph) -> ManifoldExpr | NotCanonical:
    """Invert synth on its image.

    Removes every delta-sum junction (black vertex, its three edges, and
    its disk) simultaneously, splits the rest into connected pieces, and
    matches each piece against the primitive spines up to move-class
    isomorphism.  Any unmatched piece, or a graph with no pieces, yields
    NOT_CANONICAL; the verdict is about this recognizer's image, not a
    homeomorphism claim.
    """
    junctions = _junction_blacks(graph)
    dead_blacks = {b for b, _ in junctions}
    dead_whites = {d for _, d in junctions}
    whites = [w for w in graph.whites if w.id not in dead_whites]
    blacks = [b for b in graph.blacks if b.id not in dead_blacks]
    edges = [e for e in graph.edges
             if e.black not in dead_blacks and e.white not in dead_whites]
    if not whites:
        return NOT_CANONICAL

    parent = {("w", w.id): ("w", w.id) for w in whites}
    parent.update({("b", b.id): ("b", b.id) for b in blacks})

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for e in edges:
        a, b = find(("w", e.white)), find(("b", e.black))
        if a != b:
            parent[max(a, b)] = min(a, b)

    groups: dict[tuple[str, str], dict[str, list]] = {}
    for w in whites:
        groups.setdefault(find(("w", w.id)), {"w": [], "b": [], "e": []})["w"].append(w)
    for b in blacks:
        groups.setdefault(find(("b", b.id)), {"w": [], "b": [], "e": []})["b"].append(b)
    for e in edges:
        groups[find(("w", e.white))]["e"].append(e)

    summands = []
    for root in sorted(groups, key=lambda k: k[1]):
        g = groups[root]
        if not g["w"]:
            return NOT_CANONICAL
        piece = StratifoldGraph(g["w"], g["b"], g["e"])
        matched = _match_piece(piece)
        if matched is None:
            return NOT_CANONICAL
        summands.append(matched)
    return ManifoldExpr(summands)
