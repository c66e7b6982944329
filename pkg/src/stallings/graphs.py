"""Finite based graphs labelled by free-group generators.

Every edge pair ``u --g--> v`` (with its implicit reverse ``v --g^-1--> u``)
is stored once, in positive orientation, in :attr:`LabeledGraph.edges`.
A graph is *folded* when no vertex has two outgoing edges with the same
signed label; folded graphs expose a transition table ``delta`` and are
exactly the immersions into the rose.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

from .words import Letter, Word, free_reduce, signed_letters

Edge = tuple[int, int, int]


class NotFoldedError(ValueError):
    pass


class GraphParseError(ValueError):
    """Malformed graph text. ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class LabeledGraph:
    alphabet_size: int
    num_vertices: int
    base: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        if self.num_vertices < 1:
            raise ValueError("a based graph needs at least one vertex")
        if not 0 <= self.base < self.num_vertices:
            raise ValueError(f"base {self.base} out of range")
        for u, g, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {g}, {v}) has an out-of-range vertex")
            if not 1 <= g <= self.alphabet_size:
                raise ValueError(f"edge ({u}, {g}, {v}) has an out-of-range label")
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @cached_property
    def folded(self) -> bool:
        seen = set()
        for u, g, v in self.edges:
            if (u, g) in seen or (v, -g) in seen:
                return False
            seen.add((u, g))
            seen.add((v, -g))
        return True

    @cached_property
    def delta(self) -> tuple[dict[Letter, int], ...]:
        """Transition table ``delta[u][letter] -> v``; folded graphs only."""
        if not self.folded:
            raise NotFoldedError("graph is not folded")
        table: list[dict[int, int]] = [{} for _ in range(self.num_vertices)]
        for u, g, v in self.edges:
            table[u][g] = v
            table[v][-g] = u
        return tuple(table)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, _, w in self.edges)

    def neighbours(self) -> list[list[tuple[Letter, int]]]:
        """Adjacency lists of ``(signed letter, target)``; works unfolded."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_vertices)]
        for u, g, v in self.edges:
            adj[u].append((g, v))
            adj[v].append((-g, u))
        return adj

    def is_connected(self) -> bool:
        adj = self.neighbours()
        seen = {self.base}
        stack = [self.base]
        while stack:
            u = stack.pop()
            for _, v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.num_vertices

    def validate(self) -> None:
        """Check the edge involution on the transition table."""
        if not self.folded:
            return
        for u, row in enumerate(self.delta):
            for x, v in row.items():
                if self.delta[v].get(-x) != u:
                    raise AssertionError(f"involution broken at ({u}, {x})")

    def rebased(self, v: int) -> LabeledGraph:
        return LabeledGraph(self.alphabet_size, self.num_vertices, v, self.edges)


@dataclass(frozen=True)
class Star:
    vertex: int
    directions: frozenset[Letter]

    def __len__(self) -> int:
        return len(self.directions)


class CoreResult(NamedTuple):
    graph: LabeledGraph
    spur: Word
    attach: int


def _require_folded(g: LabeledGraph) -> None:
    if not g.folded:
        raise NotFoldedError("operation requires a folded graph")


def _from_table(n: int, base: int, table: list[dict[int, int]]) -> LabeledGraph:
    edges = [(u, x, v) for u, row in enumerate(table) for x, v in row.items() if x > 0]
    return LabeledGraph(n, len(table), base, tuple(edges))


def point(alphabet_size: int) -> LabeledGraph:
    """One vertex, no edges: the graph of the trivial subgroup."""
    return LabeledGraph(alphabet_size, 1, 0, ())


def rose(n: int) -> LabeledGraph:
    if n < 1:
        raise ValueError("rose needs at least one generator")
    return LabeledGraph(n, 1, 0, tuple((0, g, 0) for g in range(1, n + 1)))


def wedge_of_words(n: int, gens) -> LabeledGraph:
    """Unfolded bouquet: one closed path per nonempty generator, joined at 0."""
    edges: list[Edge] = []
    count = 1
    for w in gens:
        w = w if isinstance(w, Word) else free_reduce(w)
        for x in w:
            if abs(x) > n:
                raise ValueError(f"generator {abs(x)} out of range for alphabet of size {n}")
        if not w:
            continue
        path = [0] + list(range(count, count + len(w) - 1)) + [0]
        count += len(w) - 1
        for i, x in enumerate(w):
            u, v = path[i], path[i + 1]
            edges.append((u, x, v) if x > 0 else (v, -x, u))
    return LabeledGraph(n, count, 0, tuple(edges))


def wedge(g1: LabeledGraph, g2: LabeledGraph) -> LabeledGraph:
    """Disjoint union with the two basepoints identified (unfolded)."""
    if g1.alphabet_size != g2.alphabet_size:
        raise ValueError("alphabet mismatch")
    off = g1.num_vertices - 1

    def relabel(v):
        if v == g2.base:
            return g1.base
        return v + off if v > g2.base else v + off + 1

    edges = list(g1.edges) + [(relabel(u), x, relabel(v)) for u, x, v in g2.edges]
    return LabeledGraph(g1.alphabet_size, g1.num_vertices + g2.num_vertices - 1, g1.base, tuple(edges))


def fold(g: LabeledGraph, rng: random.Random | None = None) -> LabeledGraph:
    """Stallings folding by union-find.

    Returns the folded graph in canonical numbering. ``rng``, when given,
    shuffles the order edges are inserted and which root survives each
    union; the result is the same regardless.
    """
    n = g.num_vertices
    parent = list(range(n))
    size = [1] * n
    out: list[dict[int, int]] = [{} for _ in range(n)]
    pending: list[tuple[int, int]] = []

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def attach(u: int, x: int, v: int) -> None:
        t = out[u].get(x)
        if t is None:
            out[u][x] = v
        else:
            pending.append((t, v))

    edges = list(g.edges)
    if rng is not None:
        rng.shuffle(edges)
    for u, x, v in edges:
        ru, rv = find(u), find(v)
        if x in out[ru]:
            pending.append((out[ru][x], rv))
        else:
            out[ru][x] = rv
            attach(rv, -x, ru)
        while pending:
            a, b = pending.pop(rng.randrange(len(pending))) if rng else pending.pop()
            ra, rb = find(a), find(b)
            if ra == rb:
                continue
            if rng is not None:
                if rng.random() < 0.5:
                    ra, rb = rb, ra
            elif size[ra] < size[rb]:
                ra, rb = rb, ra
            parent[rb] = ra
            size[ra] += size[rb]
            moved, out[rb] = out[rb], {}
            for y, t in moved.items():
                attach(ra, y, t)

    root_base = find(g.base)
    table: dict[int, dict[int, int]] = {}
    for v in range(n):
        if parent[v] == v:
            table[v] = {x: find(t) for x, t in out[v].items()}
    return _canonical_from_table(g.alphabet_size, root_base, table)


def _canonical_from_table(n: int, base, table) -> LabeledGraph:
    """BFS renumbering from ``base``; directions visited in signed-letter order."""
    order = signed_letters(n)
    ids = {base: 0}
    queue = deque([base])
    new_table: list[dict[int, int]] = []
    while queue:
        u = queue.popleft()
        row = table[u]
        new_row = {}
        for x in order:
            v = row.get(x)
            if v is None:
                continue
            if v not in ids:
                ids[v] = len(ids)
                queue.append(v)
            new_row[x] = ids[v]
        new_table.append(new_row)
    return _from_table(n, 0, new_table)


def canonical_form(g: LabeledGraph) -> LabeledGraph:
    _require_folded(g)
    return _canonical_from_table(g.alphabet_size, g.base, dict(enumerate(g.delta)))


def from_words(n: int, gens) -> LabeledGraph:
    """Folded graph of the subgroup generated by ``gens``."""
    return fold(wedge_of_words(n, gens))


def star(g: LabeledGraph, v: int) -> Star:
    if not 0 <= v < g.num_vertices:
        raise ValueError(f"vertex {v} out of range")
    return Star(v, frozenset(x for x, _ in g.neighbours()[v]))


def trace(g: LabeledGraph, start: int, w) -> int | None:
    """Follow ``w`` from ``start``; ``None`` when a direction is missing."""
    _require_folded(g)
    if not 0 <= start < g.num_vertices:
        raise ValueError(f"vertex {start} out of range")
    delta = g.delta
    v = start
    for x in w:
        v = delta[v].get(x)
        if v is None:
            return None
    return v


def membership(g: LabeledGraph, w: Word) -> bool:
    return trace(g, g.base, w) == g.base


def rank(g: LabeledGraph) -> int:
    if not g.is_connected():
        raise ValueError("rank needs a connected graph")
    return g.num_edges - g.num_vertices + 1


def is_core(g: LabeledGraph) -> bool:
    _require_folded(g)
    return g.num_edges > 0 and all(len(row) >= 2 for row in g.delta)


def core(g: LabeledGraph) -> CoreResult | None:
    """Strip hanging trees. ``None`` when ``g`` is a tree.

    The spur is the word along the path from the old base to the core; the
    core graph is based at the vertex where that path lands (``attach``,
    numbered as in ``g``).
    """
    _require_folded(g)
    delta = g.delta
    deg = [len(row) for row in delta]
    alive = [True] * g.num_vertices
    leaves = [v for v in range(g.num_vertices) if deg[v] <= 1]
    while leaves:
        v = leaves.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for x, u in delta[v].items():
            if alive[u]:
                deg[u] -= 1
                if deg[u] == 1:
                    leaves.append(u)
    if not any(alive):
        return None

    # BFS from base to the nearest surviving vertex; the path is unique
    prev: dict[int, tuple[int, int] | None] = {g.base: None}
    queue = deque([g.base])
    attach = g.base
    while queue:
        u = queue.popleft()
        if alive[u]:
            attach = u
            break
        for x, v in delta[u].items():
            if v not in prev:
                prev[v] = (u, x)
                queue.append(v)
    spur: list[int] = []
    v = attach
    while prev[v] is not None:
        u, x = prev[v]
        spur.append(x)
        v = u
    spur.reverse()

    table = {
        v: {x: u for x, u in delta[v].items() if alive[u]}
        for v in range(g.num_vertices)
        if alive[v]
    }
    return CoreResult(_canonical_from_table(g.alphabet_size, attach, table), Word(spur), attach)


def spanning_tree_words(g: LabeledGraph) -> list[Word]:
    """Word of the BFS-tree path from base to each vertex."""
    _require_folded(g)
    words: list[Word | None] = [None] * g.num_vertices
    words[g.base] = Word.identity()
    order = signed_letters(g.alphabet_size)
    queue = deque([g.base])
    while queue:
        u = queue.popleft()
        for x in order:
            v = g.delta[u].get(x)
            if v is not None and words[v] is None:
                words[v] = Word._trusted(words[u].letters + (x,))
                queue.append(v)
    if any(w is None for w in words):
        raise ValueError("graph is not connected")
    return words  # type: ignore[return-value]


def free_basis(g: LabeledGraph) -> list[Word]:
    """Free basis of the subgroup: one word per edge pair off the BFS tree."""
    paths = spanning_tree_words(g)
    tree = set()
    for v, w in enumerate(paths):
        if w:
            x = w.letters[-1]
            u = g.delta[v][-x]
            tree.add((u, x, v) if x > 0 else (v, -x, u))
    basis = []
    for u, x, v in g.edges:
        if (u, x, v) in tree:
            continue
        basis.append(paths[u] * Word._trusted((x,)) * ~paths[v])
    return basis


def shortest_path_word(g: LabeledGraph, start: int, end: int) -> Word | None:
    return spanning_tree_words(g.rebased(start))[end]


# -- text format -----------------------------------------------------------


def format_graph(g: LabeledGraph) -> str:
    from .words import letter_to_char

    lines = [f"alphabet {g.alphabet_size}", f"vertices {g.num_vertices}", f"base {g.base}"]
    for u, x, v in g.edges:
        label = letter_to_char(x) if g.alphabet_size <= 26 else f"x{x}"
        lines.append(f"edge {u} {label} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> LabeledGraph:
    """Parse the line format written by :func:`format_graph`.

    Blank lines and ``#`` comments are ignored. Edge labels must be positive
    (lowercase or ``x<g>``); the reverse edge is implicit.
    """
    header: dict[str, int] = {}
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        if key in ("alphabet", "vertices", "base"):
            if edges:
                raise GraphParseError(f"{key!r} after edge lines", lineno)
            if key in header:
                raise GraphParseError(f"duplicate {key!r}", lineno)
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphParseError(f"expected '{key} <non-negative integer>'", lineno)
            header[key] = int(parts[1])
        elif key == "edge":
            missing = {"alphabet", "vertices", "base"} - header.keys()
            if missing:
                raise GraphParseError(f"edge before header ({', '.join(sorted(missing))} missing)", lineno)
            if len(parts) != 4:
                raise GraphParseError("expected 'edge <u> <label> <v>'", lineno)
            u, label, v = parts[1:]
            if not (u.isdigit() and v.isdigit()):
                raise GraphParseError("vertex ids must be non-negative integers", lineno)
            u, v = int(u), int(v)
            nv = header["vertices"]
            for vert in (u, v):
                if vert >= nv:
                    raise GraphParseError(f"vertex {vert} out of range (vertices {nv})", lineno)
            x = _parse_label(label, lineno)
            if x > header["alphabet"]:
                raise GraphParseError(
                    f"label {label!r} out of range (alphabet {header['alphabet']})", lineno
                )
            edges.append((u, x, v))
        else:
            raise GraphParseError(f"unknown keyword {key!r}", lineno)
    missing = {"alphabet", "vertices", "base"} - header.keys()
    if missing:
        raise GraphParseError(f"missing header line(s): {', '.join(sorted(missing))}")
    try:
        return LabeledGraph(header["alphabet"], header["vertices"], header["base"], tuple(edges))
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


def _parse_label(label: str, lineno: int) -> int:
    if len(label) == 1 and "a" <= label <= "z":
        return ord(label) - ord("a") + 1
    if len(label) == 1 and "A" <= label <= "Z":
        raise GraphParseError(
            f"inverse label {label!r}: list each edge once in positive orientation", lineno
        )
    if label[:1] == "x" and label[1:].isdigit() and int(label[1:]) > 0:
        return int(label[1:])
    raise GraphParseError(f"bad edge label {label!r}", lineno)
