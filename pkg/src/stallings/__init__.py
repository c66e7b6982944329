"""Stallings graphs for finitely generated subgroups of free groups."""

from .graphs import (
    CoreResult,
    LabeledGraph,
    Star,
    canonical_form,
    core,
    fold,
    format_graph,
    free_basis,
    from_words,
    is_core,
    membership,
    parse_graph,
    rank,
    rose,
    star,
    trace,
)
from .subgroups import (
    INFINITE,
    BurnsideResult,
    DeckGroup,
    GraphMap,
    Subgroup,
    Verdict,
    burnside_witness_power,
    deck_transformations,
    inclusion_map,
    index,
    is_covering,
    join,
    pullback,
    rebase_pair,
    satisfies_burnside,
)
from .words import Word, concat, cyclically_reduce, free_reduce, invert, parse_word

__all__ = [name for name in dir() if not name.startswith("_")]
