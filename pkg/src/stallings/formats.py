"""Text renderings: graph maps, deck groups, DOT, and graph round-trips."""

from __future__ import annotations

from .graphs import LabeledGraph, format_graph, parse_graph
from .subgroups import DeckGroup, GraphMap
from .words import letter_to_char


def format_map(m: GraphMap) -> str:
    return "".join(f"map {v} → {w}\n" for v, w in enumerate(m.vertex_map))


def cycle_notation(perm) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        v = perm[start]
        while v != start:
            cyc.append(v)
            seen.add(v)
            v = perm[v]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def format_deck_group(group: DeckGroup) -> str:
    return "".join(cycle_notation(p) + "\n" for p in group.elements)


def export_dot(g: LabeledGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(g.num_vertices):
        shape = "doublecircle" if v == g.base else "circle"
        lines.append(f'  {v} [shape={shape}];')
    for u, x, v in g.edges:
        label = letter_to_char(x) if g.alphabet_size <= 26 else f"x{x}"
        lines.append(f'  {u} -> {v} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def roundtrip(g: LabeledGraph) -> LabeledGraph:
    return parse_graph(format_graph(g))
