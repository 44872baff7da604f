"""Group presentations read off stratifold graphs.

The fundamental group of a 2-stratifold has a presentation determined by
the graph and a spanning tree: one generator per black vertex (the branch
circle), per boundary circle, per surface loop, and one stable letter per
edge outside the tree.  This module builds that presentation, the
one-relator-per-period presentations of F-groups (groups of orientation
preserving isometries of surfaces with cone points, in the Lyndon-Schupp
sense), and the bounded Tietze simplifier used both for display and as a
sound certificate engine.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphError
from .graph import StratifoldGraph, WhiteVertex, BlackVertex, Edge, spanning_tree
from .verdicts import INDETERMINATE, Indeterminate, UnknownOrder

GENERATOR_ROLES = ("black", "boundary", "surface", "stable", "period")

DEFAULT_SIMPLIFY_BUDGET = 10_000


@dataclass(frozen=True)
class Generator:
    name: str
    role: str

    def __post_init__(self):
        if self.role not in GENERATOR_ROLES:
            raise ValueError(f"unknown generator role {self.role!r}")


def _reduce(syllables):
    out: list[tuple[str, int]] = []
    for name, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == name:
            merged = out[-1][1] + exp
            out.pop()
            if merged:
                out.append((name, merged))
        else:
            out.append((name, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word, stored as (generator name, exponent) syllables.

    >>> Word((("a", 2), ("a", -2), ("b", 1))).syllables
    (('b', 1),)
    """

    syllables: tuple[tuple[str, int], ...]

    def __init__(self, syllables=()):
        object.__setattr__(self, "syllables", _reduce(syllables))

    @property
    def is_empty(self):
        return not self.syllables

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.syllables)))

    def power(self, k: int) -> "Word":
        if k == 0:
            return Word()
        base = self if k > 0 else self.inverse()
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def names(self) -> set[str]:
        return {n for n, _ in self.syllables}

    def exponent_sum(self, name: str) -> int:
        return sum(e for n, e in self.syllables if n == name)

    def substitute(self, name: str, replacement: "Word") -> "Word":
        if name not in self.names():
            return self
        out = Word()
        for n, e in self.syllables:
            out = out * (replacement.power(e) if n == name else Word(((n, e),)))
        return out

    def cyclically_reduced(self) -> "Word":
        s = list(self.syllables)
        while len(s) > 1 and s[0][0] == s[-1][0]:
            name = s[0][0]
            exp = s[0][1] + s[-1][1]
            s = s[1:-1]
            if exp:
                s.append((name, exp))
                s = list(_reduce(s))
        return Word(tuple(s))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        declared = set(names)
        for r in self.relators:
            missing = r.names() - declared
            if missing:
                raise ValueError(f"relator uses undeclared generators {sorted(missing)}")

    def generator_names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.generators)


@dataclass(frozen=True)
class FSignature:
    """Base surface genus (Neumann convention) plus cone-point periods."""

    genus: int
    periods: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(self.periods))
        for m in self.periods:
            if m < 2:
                raise ValueError(f"period {m} < 2")

    @property
    def spherical(self) -> bool:
        return self.genus == 0

    @property
    def surface_rank(self) -> int:
        """Number of surface generators: 2g orientable, |g| nonorientable."""
        return 2 * self.genus if self.genus >= 0 else -self.genus


def _surface_word(white_id: str, genus: int) -> tuple[Word, list[str]]:
    """The boundary-of-polygon word q and the surface generator names."""
    if genus >= 0:
        names = [f"y.{white_id}.{j}" for j in range(1, 2 * genus + 1)]
        sylls = []
        for i in range(genus):
            a, b = names[2 * i], names[2 * i + 1]
            sylls += [(a, 1), (b, 1), (a, -1), (b, -1)]
        return Word(tuple(sylls)), names
    names = [f"y.{white_id}.{j}" for j in range(1, -genus + 1)]
    return Word(tuple((n, 2) for n in names)), names


def natural_presentation(graph: StratifoldGraph) -> GroupPresentation:
    """Presentation of the fundamental group over the BFS spanning tree.

    Generators (in this order): ``b.<black>`` per black vertex;
    ``s.<edge>`` per boundary circle and ``y.<white>.<j>`` per surface
    loop, grouped by white vertex; ``t.<edge>`` per non-tree edge.

    Relators: per white vertex the surface relation s_1...s_p q = 1 with
    q the genus word; per tree edge with label m > 0 the gluing relation
    stored as s^-1 b^m; per non-tree edge with label m the conjugation
    relation stored as t^-1 s t b^-m.

    Requires a connected graph whose spanning-tree labels are positive
    (run :func:`stratifold.graph.normalize` first).
    """
    tree = spanning_tree(graph)
    for eid in sorted(tree):
        if graph.edge(eid).label <= 0:
            raise GraphError(
                f"tree edge {eid} has non-positive label; normalize the graph first")

    gens: list[Generator] = []
    for b in graph.blacks:
        gens.append(Generator(f"b.{b.id}", "black"))
    surface_names: dict[str, list[str]] = {}
    for w in graph.whites:
        for eid in graph.edges_at_white(w.id):
            gens.append(Generator(f"s.{eid}", "boundary"))
        _, names = _surface_word(w.id, w.genus)
        surface_names[w.id] = names
        for n in names:
            gens.append(Generator(n, "surface"))
    nontree = [e.id for e in graph.edges if e.id not in tree]
    for eid in nontree:
        gens.append(Generator(f"t.{eid}", "stable"))

    relators: list[Word] = []
    for w in graph.whites:
        q, _ = _surface_word(w.id, w.genus)
        boundary = Word(tuple((f"s.{eid}", 1) for eid in graph.edges_at_white(w.id)))
        relators.append(boundary * q)
    for eid in sorted(tree):
        e = graph.edge(eid)
        relators.append(Word(((f"s.{eid}", -1), (f"b.{e.black}", e.label))))
    for eid in nontree:
        e = graph.edge(eid)
        t = f"t.{eid}"
        relators.append(Word(((t, -1), (f"s.{eid}", 1), (t, 1), (f"b.{e.black}", -e.label))))
    return GroupPresentation(tuple(gens), tuple(relators))


def fgroup_presentation(sig: FSignature) -> GroupPresentation:
    """The one-relator-per-period presentation of the F-group of ``sig``:

    < c_1..c_p, y_1..y_n | c_i^{m_i}, c_1...c_p q >   with q the genus word.
    """
    p = len(sig.periods)
    gens = [Generator(f"c{i}", "period") for i in range(1, p + 1)]
    if sig.genus >= 0:
        names = [f"y{j}" for j in range(1, 2 * sig.genus + 1)]
        sylls = []
        for i in range(sig.genus):
            a, b = names[2 * i], names[2 * i + 1]
            sylls += [(a, 1), (b, 1), (a, -1), (b, -1)]
        q = Word(tuple(sylls))
    else:
        names = [f"y{j}" for j in range(1, -sig.genus + 1)]
        q = Word(tuple((n, 2) for n in names))
    gens += [Generator(n, "surface") for n in names]
    relators = [Word(((f"c{i}", sig.periods[i - 1]),)) for i in range(1, p + 1)]
    relators.append(Word(tuple((f"c{i}", 1) for i in range(1, p + 1))) * q)
    return GroupPresentation(tuple(gens), tuple(relators))


def fgroup_graph(sig: FSignature) -> StratifoldGraph:
    """The tree-shaped stratifold graph realizing the F-group of ``sig``.

    A central white vertex of the signature's genus has one label-1 edge
    to each of p black vertices, and each black vertex has one further
    edge, labeled by its period, to its own disk (genus-0) white vertex.
    Every branch circle then has d = m_i + 1 >= 3 sheets.
    """
    p = len(sig.periods)
    whites = [WhiteVertex("w0", sig.genus)]
    blacks = []
    edges = []
    for i, m in enumerate(sig.periods, start=1):
        blacks.append(BlackVertex(f"b{i}"))
        whites.append(WhiteVertex(f"d{i}", 0))
        edges.append(Edge(f"e{i}", "w0", f"b{i}", 1))
        edges.append(Edge(f"f{i}", f"d{i}", f"b{i}", m))
    return StratifoldGraph(whites, blacks, edges)


@dataclass(frozen=True)
class SimplifyResult:
    presentation: GroupPresentation
    eliminations: tuple[tuple[str, Word], ...]
    tracked: tuple[Word, ...]
    exhausted: bool
    steps: int


ELIMINABLE_ROLES = frozenset({"boundary", "stable"})


def _find_elimination(relators: tuple[Word, ...], keep: frozenset[str]):
    """First (relator index, syllable index) eliminating a generator.

    A generator can be eliminated from a relator in which it occurs in
    exactly one syllable, with exponent +-1; the relator then defines it
    in terms of the others.  Generators in ``keep`` are exempt unless the
    relator is that single syllable (the generator is provably trivial).
    Scanning order makes the choice deterministic and, on graph
    presentations, consumes the boundary generators defined by their tree
    relations first.
    """
    for ri, r in enumerate(relators):
        counts: dict[str, int] = {}
        for n, _ in r.syllables:
            counts[n] = counts.get(n, 0) + 1
        for si, (n, e) in enumerate(r.syllables):
            if abs(e) != 1 or counts[n] != 1:
                continue
            if n in keep and len(r.syllables) > 1:
                continue
            return ri, si
    return None


def simplify(pres: GroupPresentation,
             budget: int = DEFAULT_SIMPLIFY_BUDGET,
             tracked: tuple[Word, ...] = (),
             protect: frozenset[str] = frozenset()) -> SimplifyResult:
    """Bounded Tietze simplification: generator eliminations only.

    Repeatedly eliminates a generator defined by a relator (see
    :func:`_find_elimination`), substituting its definition everywhere and
    dropping empty relators.  No relator search or insertion is performed,
    so every step is a Tietze transformation and the result presents an
    isomorphic group with at most as many generators.  ``tracked`` words
    are rewritten through the same substitutions, and the substitution
    list itself is returned so further words can be rewritten later.

    Only boundary and stable-letter generators are eliminated freely; the
    structural generators (black, surface, period) and any name listed in
    ``protect`` are removed only when a relator proves them trivial.  That
    keeps power relators like b^m visible, which the order certificates
    in the algebra module depend on.
    """
    keep = frozenset(g.name for g in pres.generators
                     if g.role not in ELIMINABLE_ROLES) | frozenset(protect)
    gens = list(pres.generators)
    relators = [r for r in pres.relators if not r.is_empty]
    tracked = list(tracked)
    eliminations: list[tuple[str, Word]] = []
    steps = 0
    exhausted = False
    while True:
        pick = _find_elimination(tuple(relators), keep)
        if pick is None:
            break
        if steps >= budget:
            exhausted = True
            break
        ri, si = pick
        r = relators[ri]
        name, exp = r.syllables[si]
        before = Word(r.syllables[:si])
        after = Word(r.syllables[si + 1:])
        # before * name^exp * after = 1
        if exp == 1:
            definition = before.inverse() * after.inverse()
        else:
            definition = after * before
        del relators[ri]
        relators = [s.substitute(name, definition) for s in relators]
        relators = [s for s in relators if not s.is_empty]
        tracked = [t.substitute(name, definition) for t in tracked]
        gens = [g for g in gens if g.name != name]
        eliminations.append((name, definition))
        steps += 1
    return SimplifyResult(GroupPresentation(tuple(gens), tuple(relators)),
                          tuple(eliminations), tuple(tracked), exhausted, steps)


def rewrite_through(word: Word, eliminations: tuple[tuple[str, Word], ...]) -> Word:
    """Rewrite a word through a simplifier's substitution list, in order."""
    for name, definition in eliminations:
        word = word.substitute(name, definition)
    return word


def q_presentation(graph: StratifoldGraph, orders, holes) -> GroupPresentation | Indeterminate:
    """Presentation of the quotient by the subgroup normally generated by
    all elements of finite order.

    Adds to the graph presentation one relator per black vertex of
    certified finite order (killing the open star of the branch circle,
    order 1 included) and one relator per surface generator of each white
    hole.  Every added relator is a single generator; the generator set is
    unchanged.  If any black vertex's order verdict is Unknown the result
    is INDETERMINATE.
    """
    for b in graph.blacks:
        if b.id not in orders:
            raise ValueError(f"no order verdict for black vertex {b.id}")
    if any(isinstance(v, UnknownOrder) for v in orders.values()):
        return INDETERMINATE
    base = natural_presentation(graph)
    extra: list[Word] = []
    for b in graph.blacks:
        if orders[b.id].is_finite:
            extra.append(Word(((f"b.{b.id}", 1),)))
    for wid in sorted(holes):
        w = graph.white(wid)  # raises GraphError on a non-white id
        _, names = _surface_word(wid, w.genus)
        for n in names:
            extra.append(Word(((n, 1),)))
    return GroupPresentation(base.generators, base.relators + tuple(extra))
