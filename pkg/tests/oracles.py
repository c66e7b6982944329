"""Brute-force reference computations used to freeze expected values.

None of these go through folding, cores or coverings; they work directly
with words, exhaustive enumeration or tiny explicit graphs.
"""

from __future__ import annotations

import itertools


def reduce_letters(seq) -> tuple[int, ...]:
    out: list[int] = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def all_reduced_words(n: int, max_len: int):
    """Every reduced letter tuple of length <= max_len, shortest first."""
    letters = [s * g for g in range(1, n + 1) for s in (1, -1)]
    layer = [()]
    yield ()
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in letters:
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        yield from nxt
        layer = nxt


def closure(gens, max_factors: int = 6, cap: int = 24) -> set[tuple[int, ...]]:
    """All reduced products of at most ``max_factors`` generators or inverses,
    discarding intermediates longer than ``cap``."""
    factors = set()
    for g in gens:
        g = reduce_letters(g)
        if g:
            factors.add(g)
            factors.add(tuple(-x for x in reversed(g)))
    seen = {()}
    frontier = {()}
    for _ in range(max_factors):
        nxt = set()
        for w in frontier:
            for f in factors:
                p = reduce_letters(w + f)
                if len(p) <= cap and p not in seen:
                    nxt.add(p)
        seen |= nxt
        frontier = nxt
    return seen


def smallest_power_in(members: set, g, max_power: int) -> int | None:
    """Smallest k <= max_power with reduce(g^k) in ``members``."""
    for k in range(1, max_power + 1):
        if reduce_letters(tuple(g) * k) in members:
            return k
    return None


def reduced_circuit_edges(edges, max_len: int) -> set[tuple[int, int, int]]:
    """Edge pairs lying on some cyclically reduced circuit of length <= max_len.

    ``edges`` are (u, g, v) triples of an arbitrary small graph; the search
    is an exhaustive DFS over reduced paths.
    """
    darts = []  # (source, letter, target, edge index)
    for i, (u, g, v) in enumerate(edges):
        darts.append((u, g, v, i))
        darts.append((v, -g, u, i))
    out: dict[int, list] = {}
    for d in darts:
        out.setdefault(d[0], []).append(d)

    def reverse(d):
        return (d[2], -d[1], d[0], d[3])

    found = set()

    def dfs(start, path):
        last = path[-1]
        if last[2] == start and path[0] != reverse(last):
            found.update(d[3] for d in path)
        if len(path) == max_len:
            return
        for d in out.get(last[2], []):
            if d != reverse(last):
                dfs(start, path + [d])

    for d in darts:
        dfs(d[0], [d])
    return {edges[i] for i in found}


def coset_count(gens_S, gens_T, word_len: int, member_S) -> int:
    """Number of right cosets S t among elements t of T up to a length bound.

    Elements of T are enumerated as products of generators; two elements
    share a coset when t1 t2^-1 is in S (``member_S`` on letter tuples).
    """
    elements = [w for w in closure(gens_T, max_factors=word_len, cap=10**9)]
    reps: list[tuple[int, ...]] = []
    for t in sorted(elements, key=lambda w: (len(w), w)):
        t_inv = tuple(-x for x in reversed(t))
        if not any(member_S(reduce_letters(r + t_inv)) for r in reps):
            reps.append(t)
    return len(reps)


def permutation_deck_group(perms) -> list[tuple[int, ...]]:
    """Automorphisms of the permutation-covering graph commuting with every
    generator, found by trying all d! vertex permutations."""
    d = len(perms[0])
    found = []
    for sigma in itertools.permutations(range(d)):
        if all(sigma[p[i]] == p[sigma[i]] for p in perms for i in range(d)):
            found.append(sigma)
    return found
