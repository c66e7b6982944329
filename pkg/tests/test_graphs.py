import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import generator_sets, words
from oracles import all_reduced_words, reduced_circuit_edges
from stallings import graphs
from stallings.graphs import (
    GraphParseError,
    LabeledGraph,
    NotFoldedError,
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
    wedge_of_words,
)
from stallings.words import Word, parse_word

a, b, c = 1, 2, 3
A, B = -1, -2


def W(s):
    return parse_word(s)


def gens(*texts):
    return [W(t) for t in texts]


INDEX2 = gens("aa", "b", "abA")  # kernel of F2 -> Z/2 sending a to 1, b to 0


# rose


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rose(n):
    g = rose(n)
    assert g.num_vertices == 1
    assert g.folded
    assert len(star(g, 0)) == 2 * n
    assert rank(g) == n


def test_rose_needs_generator():
    with pytest.raises(ValueError):
        rose(0)


# from_words / fold


def test_from_words_single_loop():
    assert from_words(2, gens("a")) == LabeledGraph(2, 1, 0, ((0, a, 0),))
    assert from_words(2, gens("a", "a")) == from_words(2, gens("a"))


def test_from_words_ab_ac():
    # hand fold: the two a-edges leaving base are identified
    g = from_words(3, gens("ab", "ac"))
    assert g == LabeledGraph(3, 2, 0, ((0, a, 1), (1, b, 0), (1, c, 0)))
    assert rank(g) == 2


def test_fold_a2_a3_collapses_to_loop():
    wedge = wedge_of_words(1, gens("aa", "aaa"))
    assert wedge.num_vertices == 4 and not wedge.folded
    assert fold(wedge) == rose(1)


def test_fold_conjugate_has_spur():
    g = from_words(2, gens("abA"))
    assert g == LabeledGraph(2, 2, 0, ((0, a, 1), (1, b, 1)))


def test_from_words_trivial_and_range():
    assert from_words(2, []) == graphs.point(2)
    assert from_words(2, [Word()]) == graphs.point(2)
    with pytest.raises(ValueError):
        from_words(2, gens("c"))


def test_index2_graph():
    g = from_words(2, INDEX2)
    assert g == LabeledGraph(2, 2, 0, ((0, a, 1), (0, b, 0), (1, a, 0), (1, b, 1)))
    # Nielsen-Schreier: d(n-1)+1 with d = 2, n = 2
    assert rank(g) == 3


def test_fold_idempotent_on_folded():
    g = from_words(2, INDEX2)
    assert fold(g) == g
    assert canonical_form(g) == g


@given(generator_sets())
def test_fold_idempotent(ng):
    n, gs = ng
    g = from_words(n, gs)
    assert g.folded
    assert fold(g) == g
    assert canonical_form(canonical_form(g)) == canonical_form(g)


@given(generator_sets(), st.integers(0, 2**32))
def test_fold_confluence(ng, seed):
    n, gs = ng
    rng = random.Random(seed)
    shuffled = list(gs)
    rng.shuffle(shuffled)
    g1 = fold(wedge_of_words(n, gs), rng=random.Random(seed + 1))
    g2 = fold(wedge_of_words(n, shuffled), rng=random.Random(seed + 2))
    assert g1 == g2 == from_words(n, gs)


@given(generator_sets())
def test_involution_and_connectivity(ng):
    n, gs = ng
    g = from_words(n, gs)
    g.validate()
    assert g.is_connected()


@given(generator_sets())
def test_generators_are_members_and_cover_every_edge(ng):
    n, gs = ng
    g = from_words(n, gs)
    used = set()
    for w in gs:
        assert membership(g, w)
        v = g.base
        for x in w:
            u, v = v, g.delta[v][x]
            used.add((u, x, v) if x > 0 else (v, -x, u))
    assert used == set(g.edges)


@given(generator_sets())
def test_rank_bounded_by_generator_count(ng):
    n, gs = ng
    assert rank(from_words(n, gs)) <= len(gs)


@given(generator_sets())
def test_free_basis_regenerates_graph(ng):
    n, gs = ng
    g = from_words(n, gs)
    basis = free_basis(g)
    assert len(basis) == rank(g)
    assert from_words(n, basis) == g


# star


def test_star_examples():
    assert star(rose(2), 0).directions == {a, A, b, B}
    g = from_words(2, gens("abA"))
    assert star(g, 0).directions == {a}
    assert star(g, 1).directions == {A, b, B}
    assert star(graphs.point(2), 0).directions == frozenset()
    with pytest.raises(ValueError):
        star(g, 5)


# core


def test_core_of_conjugate():
    res = core(from_words(2, gens("abA")))
    assert res.graph == LabeledGraph(2, 1, 0, ((0, b, 0),))
    assert res.spur == W("a")
    assert res.attach == 1


def test_core_of_circle_is_itself():
    g = from_words(2, gens("abab"))
    res = core(g)
    assert res.graph == g and res.spur == Word()


def test_core_of_tree_is_empty():
    assert core(graphs.point(2)) is None
    tree = LabeledGraph(2, 3, 1, ((0, a, 1), (1, b, 2)))
    assert core(tree) is None


def test_core_long_spur():
    # aabaBAA = (aab) a (aab)^-1
    res = core(from_words(2, gens("aabaBAA")))
    assert res.spur == W("aab")
    assert res.graph == LabeledGraph(2, 1, 0, ((0, a, 0),))


def test_core_rejects_unfolded():
    with pytest.raises(NotFoldedError):
        core(wedge_of_words(1, gens("aa", "aaa")))


@given(generator_sets())
def test_core_idempotent(ng):
    n, gs = ng
    res = core(from_words(n, gs))
    assume(res is not None)
    again = core(res.graph)
    assert again.graph == res.graph
    assert again.spur == Word()
    assert is_core(res.graph)


@settings(max_examples=80)
@given(generator_sets(max_n=2, max_gens=3, max_len=3))
def test_core_equals_essential_edges(ng):
    n, gs = ng
    g = from_words(n, gs)
    assume(g.num_edges <= 5)
    essential = reduced_circuit_edges(g.edges, max_len=2 * g.num_edges + 2)
    res = core(g)
    if res is None:
        assert essential == set()
        return
    # the core's edge count and the essential edges agree
    assert res.graph.num_edges == len(essential)
    kept = {(u, x, v) for u, x, v in g.edges if (u, x, v) in essential}
    assert len(kept) == res.graph.num_edges
    assert is_core(g) == (len(essential) == g.num_edges and g.num_edges > 0)


def test_is_core_examples():
    assert is_core(rose(2))
    assert not is_core(from_words(2, gens("abA")))
    assert not is_core(graphs.point(2))


# trace / membership


def test_trace_examples():
    assert trace(rose(2), 0, W("abAAB")) == 0
    g = from_words(2, INDEX2)
    assert trace(g, 0, W("aba")) == 0
    assert trace(from_words(2, gens("a")), 0, W("b")) is None
    with pytest.raises(ValueError):
        trace(g, 7, W("a"))


def test_membership_index2_against_parity_oracle():
    # independent oracle: a word is in the kernel iff its a-exponent sum is even
    g = from_words(2, INDEX2)
    for w in all_reduced_words(2, 6):
        parity = sum(1 for x in w if abs(x) == 1) % 2
        assert membership(g, Word(w)) == (parity == 0)
    assert membership(g, W("aba"))
    assert not membership(g, W("a"))


def test_membership_cyclic_against_oracle():
    g = from_words(2, gens("a"))
    for w in all_reduced_words(2, 5):
        assert membership(g, Word(w)) == all(abs(x) == 1 for x in w)


def test_identity_is_member():
    assert membership(graphs.point(3), Word())
    assert membership(from_words(2, gens("ab")), Word())


def _closed_walk_words(g, rng, count, length=8):
    """Elements of the subgroup read along random closed walks."""
    paths = graphs.spanning_tree_words(g)
    out = []
    for _ in range(count):
        v, letters = g.base, []
        for _ in range(rng.randint(0, length)):
            x = rng.choice(sorted(g.delta[v]))
            letters.append(x)
            v = g.delta[v][x]
        out.append(Word(letters) * ~paths[v])
    return out


@given(generator_sets(), st.integers(0, 10**6))
def test_membership_closed_under_group_operations(ng, seed):
    n, gs = ng
    g = from_words(n, gs)
    assume(g.num_edges > 0)
    members = _closed_walk_words(g, random.Random(seed), 6)
    for u in members:
        assert membership(g, u)
        assert membership(g, ~u)
        for v in members:
            assert membership(g, u * v)


def test_rank_rejects_disconnected():
    with pytest.raises(ValueError):
        rank(LabeledGraph(1, 2, 0, ()))
    assert rank(graphs.point(1)) == 0


def test_canonical_form_relabels():
    g = LabeledGraph(2, 2, 1, ((1, a, 0), (0, b, 0), (0, a, 1), (1, b, 1)))
    assert canonical_form(g) == from_words(2, INDEX2)
    with pytest.raises(NotFoldedError):
        canonical_form(wedge_of_words(1, gens("aa", "aaa")))


# text format


def test_format_graph_exact():
    assert format_graph(from_words(2, gens("abA"))) == (
        "alphabet 2\nvertices 2\nbase 0\nedge 0 a 1\nedge 1 b 1\n"
    )


@given(generator_sets(max_n=4))
def test_graph_text_roundtrip(ng):
    n, gs = ng
    g = from_words(n, gs)
    assert parse_graph(format_graph(g)) == g


def test_graph_text_long_labels():
    g = from_words(30, [Word([27, -3])])
    text = format_graph(g)
    assert "x27" in text
    assert parse_graph(text) == g


@pytest.mark.parametrize(
    "text, line",
    [
        ("alphabet 2\nvertices 3\nbase 0\nedge 0 a 5\n", 4),
        ("alphabet 2\nvertices 3\nbase 0\nedge 0 c 1\n", 4),
        ("alphabet 2\nvertices 3\nbase 0\nedge 0 A 1\n", 4),
        ("alphabet 2\nvertices 3\nedge 0 a 1\n", 3),
        ("alphabet 2\nvertices x\n", 2),
        ("alphabet 2\nvertices 2\nbase 0\nfoo\n", 4),
    ],
)
def test_parse_errors_name_line(text, line):
    with pytest.raises(GraphParseError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_rejects_bad_base():
    with pytest.raises(GraphParseError):
        parse_graph("alphabet 1\nvertices 2\nbase 2\n")


def test_parse_allows_comments_and_unfolded():
    g = parse_graph("# wedge\nalphabet 1\nvertices 2\nbase 0\nedge 0 a 1\nedge 1 a 0 # back\nedge 0 a 0\n")
    assert not g.folded
    assert fold(g) == rose(1)


@given(words(n=2, max_len=10))
def test_delta_rejected_on_unfolded(w):
    g = wedge_of_words(2, [w, w])
    if not g.folded:
        with pytest.raises(NotFoldedError):
            g.delta
