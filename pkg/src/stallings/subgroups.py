"""Finitely generated subgroups of free groups and the maps between them."""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from . import graphs
from .graphs import LabeledGraph
from .words import Word, cyclically_reduce, invert, signed_letters

INFINITE = math.inf


class AlphabetMismatch(ValueError):
    pass


class TrivialAmbient(ValueError):
    """The ambient subgroup is trivial, so its graph has no core."""


@dataclass(frozen=True)
class Subgroup:
    alphabet_size: int
    graph: LabeledGraph
    generators: tuple[Word, ...] = ()

    def __post_init__(self):
        if not self.graph.folded:
            raise graphs.NotFoldedError("subgroup graph must be folded")

    @classmethod
    def from_words(cls, n: int, gens) -> Subgroup:
        gens = tuple(g if isinstance(g, Word) else Word(g) for g in gens)
        return cls(n, graphs.from_words(n, gens), gens)

    @classmethod
    def from_graph(cls, g: LabeledGraph) -> Subgroup:
        g = graphs.canonical_form(g) if g.folded else graphs.fold(g)
        return cls(g.alphabet_size, g, tuple(graphs.free_basis(g)))

    @classmethod
    def free_group(cls, n: int) -> Subgroup:
        return cls(n, graphs.rose(n), tuple(Word([g]) for g in range(1, n + 1)))

    @classmethod
    def trivial(cls, n: int) -> Subgroup:
        return cls(n, graphs.point(n), ())

    @property
    def is_trivial(self) -> bool:
        return self.graph.num_edges == 0

    @property
    def rank(self) -> int:
        return graphs.rank(self.graph)

    def __contains__(self, w: Word) -> bool:
        return graphs.membership(self.graph, w)

    def canonical(self) -> LabeledGraph:
        return graphs.canonical_form(self.graph)

    # Two subgroups are equal iff their based folded graphs agree.
    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.alphabet_size == other.alphabet_size and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())


@dataclass(frozen=True)
class GraphMap:
    source: LabeledGraph
    target: LabeledGraph
    vertex_map: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.vertex_map[v]

    def is_label_preserving(self) -> bool:
        tgt = self.target.delta
        m = self.vertex_map
        return all(tgt[m[u]].get(x) == m[v] for u, x, v in self.source.edges)

    def fibers(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, w in enumerate(self.vertex_map):
            out.setdefault(w, []).append(v)
        return out


def _check_alphabet(*subs: Subgroup) -> None:
    if len({s.alphabet_size for s in subs}) > 1:
        raise AlphabetMismatch("subgroups live in free groups of different rank")


def graph_map(source: LabeledGraph, target: LabeledGraph, start: int | None = None,
              image: int | None = None) -> GraphMap | None:
    """The unique label-preserving map sending ``start`` to ``image``.

    Defaults to base-to-base. ``None`` if no such map exists.
    """
    start = source.base if start is None else start
    image = target.base if image is None else image
    src, tgt = source.delta, target.delta
    m: list[int | None] = [None] * source.num_vertices
    m[start] = image
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for x, v in src[u].items():
            w = tgt[m[u]].get(x)
            if w is None:
                return None
            if m[v] is None:
                m[v] = w
                queue.append(v)
            elif m[v] != w:
                return None
    if any(w is None for w in m):
        raise ValueError("source graph is not connected")
    return GraphMap(source, target, tuple(m))  # type: ignore[arg-type]


def inclusion_map(S: Subgroup, T: Subgroup) -> GraphMap | None:
    """Base-preserving immersion of S's graph into T's; exists iff S <= T."""
    _check_alphabet(S, T)
    return graph_map(S.graph, T.graph)


def is_subgroup(S: Subgroup, T: Subgroup) -> bool:
    return inclusion_map(S, T) is not None


def is_covering(m: GraphMap) -> bool:
    src, tgt = m.source.delta, m.target.delta
    return all(len(src[v]) == len(tgt[w]) for v, w in enumerate(m.vertex_map))


def pullback_graph(g1: LabeledGraph, g2: LabeledGraph) -> tuple[LabeledGraph, list[tuple[int, int]]]:
    """Based component of the fiber product; also returns the vertex pairs."""
    if g1.alphabet_size != g2.alphabet_size:
        raise AlphabetMismatch("graphs have different alphabets")
    d1, d2 = g1.delta, g2.delta
    start = (g1.base, g2.base)
    ids = {start: 0}
    pairs = [start]
    table: list[dict[int, int]] = []
    i = 0
    while i < len(pairs):
        u1, u2 = pairs[i]
        row = {}
        r2 = d2[u2]
        for x, v1 in d1[u1].items():
            v2 = r2.get(x)
            if v2 is None:
                continue
            key = (v1, v2)
            if key not in ids:
                ids[key] = len(pairs)
                pairs.append(key)
            row[x] = ids[key]
        table.append(row)
        i += 1
    g = graphs._from_table(g1.alphabet_size, 0, table)
    return g, pairs


def pullback(S1: Subgroup, S2: Subgroup) -> Subgroup:
    """Intersection of two subgroups."""
    _check_alphabet(S1, S2)
    g, _ = pullback_graph(S1.graph, S2.graph)
    return Subgroup.from_graph(g)


def join(S1: Subgroup, S2: Subgroup) -> Subgroup:
    """Subgroup generated by both; built from generators and cross-checked
    against folding the wedge of the two graphs."""
    _check_alphabet(S1, S2)
    J = Subgroup.from_words(S1.alphabet_size, S1.generators + S2.generators)
    wedged = graphs.fold(graphs.wedge(S1.graph, S2.graph))
    if wedged != J.graph:
        raise AssertionError("join: generator and wedge constructions disagree")
    return J


class Rebased(NamedTuple):
    sub: Subgroup
    ambient: Subgroup
    conjugator: Word


def rebase_pair(S: Subgroup, T: Subgroup) -> Rebased | None:
    """Conjugate S <= T by the spur word u of T's graph so T becomes core-based.

    Returns ``(u^-1 S u, u^-1 T u, u)`` or ``None`` if S is not in T.
    Raises :class:`TrivialAmbient` when T is trivial.
    """
    _check_alphabet(S, T)
    if inclusion_map(S, T) is None:
        return None
    c = graphs.core(T.graph)
    if c is None:
        raise TrivialAmbient("ambient subgroup is trivial")
    u = c.spur
    ui = invert(u)
    T0 = Subgroup(T.alphabet_size, c.graph, tuple(ui * t * u for t in T.generators))
    S1 = Subgroup.from_words(S.alphabet_size, [ui * s * u for s in S.generators])
    return Rebased(S1, T0, u)


class Verdict(enum.Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    NOT_SUBGROUP = "NOT_SUBGROUP"


class BurnsideResult(NamedTuple):
    verdict: Verdict
    witness: Word | None = None

    def __bool__(self) -> bool:
        return self.verdict is Verdict.TRUE

    def __str__(self) -> str:
        if self.verdict is Verdict.FALSE:
            return f"FALSE witness={self.witness}"
        return self.verdict.value


def satisfies_burnside(S: Subgroup, T: Subgroup) -> BurnsideResult:
    """Decide whether every element of T has a positive power in S.

    S <= T is checked first. After rebasing T onto its core the condition
    holds exactly when the inclusion map is a covering; otherwise a
    witness element of T with no power in S is returned.
    """
    _check_alphabet(S, T)
    if inclusion_map(S, T) is None:
        return BurnsideResult(Verdict.NOT_SUBGROUP)
    if T.is_trivial:
        return BurnsideResult(Verdict.TRUE)
    S1, T0, u = rebase_pair(S, T)
    m = inclusion_map(S1, T0)
    if is_covering(m):
        return BurnsideResult(Verdict.TRUE)
    for g in _witness_candidates(m):
        w = u * g * invert(u)
        if burnside_witness_power(S, w) is None:
            return BurnsideResult(Verdict.FALSE, w)
    raise AssertionError("no witness found for a non-covering inclusion")


def _witness_candidates(m: GraphMap):
    """Elements p c p^-1 of the ambient group, one per star defect.

    ``p`` reaches the defect vertex v in the source; ``c`` is the shortest
    cyclically reduced circuit at m(v) that starts with the missing direction
    and does not cancel against ``p``. Every power of p c p^-1 then blocks
    at v, so none lies in the subgroup.
    """
    src, tgt = m.source, m.target
    n = src.alphabet_size
    paths = graphs.spanning_tree_words(src)
    for v in range(src.num_vertices):
        w = m(v)
        missing = [x for x in signed_letters(n) if x in tgt.delta[w] and x not in src.delta[v]]
        for ell in missing:
            p = paths[v]
            forbidden = {-ell}
            if p:
                forbidden.add(p.letters[-1])
            c = _circuit_from(tgt, w, ell, forbidden)
            if c is not None:
                yield p * c * invert(p)


def _circuit_from(g: LabeledGraph, w: int, first: int, forbidden: set[int]) -> Word | None:
    """Shortest non-backtracking walk w --first--> ... --> w whose last
    letter is not in ``forbidden``."""
    delta = g.delta
    order = signed_letters(g.alphabet_size)
    start = (delta[w][first], first)
    prev = {start: None}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        v, last = state
        if v == w and last not in forbidden:
            letters = []
            while state is not None:
                letters.append(state[1])
                state = prev[state]
            return Word._trusted(tuple(reversed(letters)))
        for x in order:
            if x == -last or x not in delta[v]:
                continue
            nxt = (delta[v][x], x)
            if nxt not in prev:
                prev[nxt] = state
                queue.append(nxt)
    return None


def index(S: Subgroup, T: Subgroup) -> int | float | None:
    """[T : S]. ``INFINITE`` for infinite index, ``None`` if S is not in T."""
    _check_alphabet(S, T)
    if inclusion_map(S, T) is None:
        return None
    if T.is_trivial:
        return 1
    S1, T0, _ = rebase_pair(S, T)
    m = inclusion_map(S1, T0)
    if not is_covering(m):
        return INFINITE
    degree, rem = divmod(S1.graph.num_vertices, T0.graph.num_vertices)
    fibers = m.fibers()
    if rem or len(fibers) != T0.graph.num_vertices or any(len(f) != degree for f in fibers.values()):
        raise AssertionError("covering with unequal fibers")
    return degree


def burnside_witness_power(S: Subgroup, g: Word, max_iter: int | None = None) -> int | None:
    """Smallest n >= 1 with g**n in S, or ``None`` if there is none.

    Exact: with g = u c u^-1 (c cyclically reduced) the reduced form of g**n
    is u c^n u^-1, and tracing c is an injective partial map on vertices, so
    the orbit of the vertex reached by u either returns within |V| steps or
    never does.
    """
    nv = S.graph.num_vertices
    if max_iter is None:
        max_iter = nv + 1
    if max_iter < nv + 1:
        raise ValueError(f"max_iter must be at least |V| + 1 = {nv + 1}")
    if not g:
        return 1
    c, u = cyclically_reduce(g)
    start = graphs.trace(S.graph, S.graph.base, u)
    if start is None:
        # u is a literal prefix of every reduced power
        return None
    v = start
    for k in range(1, max_iter + 1):
        v = graphs.trace(S.graph, v, c)
        if v is None:
            return None
        if v == start:
            return k
    return None


@dataclass(frozen=True)
class DeckGroup:
    covering: GraphMap
    elements: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, perm) -> bool:
        return tuple(perm) in set(self.elements)

    def compose(self, s: tuple[int, ...], t: tuple[int, ...]) -> tuple[int, ...]:
        """``s`` after ``t``."""
        return tuple(s[t[v]] for v in range(len(t)))

    def inverse(self, s: tuple[int, ...]) -> tuple[int, ...]:
        inv = [0] * len(s)
        for v, w in enumerate(s):
            inv[w] = v
        return tuple(inv)


def deck_transformations(m: GraphMap) -> DeckGroup:
    """All automorphisms sigma of the source with m o sigma = m."""
    src = m.source
    if not (src.folded and m.target.folded):
        raise graphs.NotFoldedError("deck transformations need folded graphs")
    if not m.is_label_preserving():
        raise ValueError("not a map of graphs")
    if not src.is_connected():
        raise ValueError("source must be connected")
    nv = src.num_vertices
    identity = tuple(range(nv))
    elements = []
    for x in sorted(m.fibers()[m(src.base)]):
        sigma = graph_map(src, src, src.base, x)
        if sigma is None:
            continue
        perm = sigma.vertex_map
        if len(set(perm)) != nv:
            continue
        if any(m(perm[v]) != m(v) for v in range(nv)):
            continue
        if perm != identity and any(perm[v] == v for v in range(nv)):
            raise AssertionError("deck transformation with a fixed point")
        elements.append(perm)
    return DeckGroup(m, tuple(elements))
