"""Command-line interface.

Subgroups are given inline as comma-separated generator words
(``--gens "aa,b,abA" -n 2``) or as graph files (``--graph FILE``, ``-`` for
stdin). Exit codes: 0 success, 1 negative answer under ``--strict`` or a
theorem violation, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import graphs
from .formats import export_dot, format_deck_group, format_map
from .harness import Mode, TrialConfig, check_main_theorem, random_finite_index_subgroup, random_subgroup, run_batch
from .subgroups import (
    INFINITE,
    Subgroup,
    Verdict,
    burnside_witness_power,
    deck_transformations,
    inclusion_map,
    index,
    is_covering,
    join,
    pullback,
    satisfies_burnside,
)
from .words import WordParseError, format_word, parse_word


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _parse_gens(text: str, n: int | None, flag: str) -> list:
    if n is None:
        raise UsageError(f"{flag} needs the alphabet size (-n)")
    words = []
    pos = 0
    for token in text.split(","):
        try:
            words.append(parse_word(token, n))
        except WordParseError as exc:
            col = pos + exc.column if exc.column is not None else None
            where = f" column {col}" if col is not None else ""
            msg = str(exc).split(": ", 1)[-1]
            raise UsageError(f"{flag}{where}: {msg}") from None
        pos += len(token) + 1
    return words


def _read_graph(path: str) -> graphs.LabeledGraph:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return graphs.parse_graph(text)
    except graphs.GraphParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _subgroup(args, gens_attr: str, graph_attr: str) -> Subgroup | None:
    gens = getattr(args, gens_attr, None)
    path = getattr(args, graph_attr, None)
    if gens is not None and path is not None:
        raise UsageError(f"give either --{gens_attr.replace('_', '-')} or --{graph_attr.replace('_', '-')}")
    if gens is not None:
        return Subgroup.from_words(args.n, _parse_gens(gens, args.n, "--" + gens_attr.replace("_", "-")))
    if path is not None:
        g = _read_graph(path)
        if args.n is not None and args.n != g.alphabet_size:
            raise UsageError(f"{path}: alphabet {g.alphabet_size} does not match -n {args.n}")
        if not g.is_connected():
            raise UsageError(f"{path}: graph is not connected")
        return Subgroup.from_graph(g)
    return None


def _require(sub, what: str) -> Subgroup:
    if sub is None:
        raise UsageError(f"missing {what}")
    return sub


def _ambient(args) -> Subgroup:
    if args.in_rose:
        if args.n is None:
            raise UsageError("--in-rose needs the alphabet size (-n)")
        return Subgroup.free_group(args.n)
    return _require(_subgroup(args, "in_gens", "in_graph"), "ambient subgroup (--in, --in-graph or --in-rose)")


def _pair(args) -> tuple[Subgroup, Subgroup]:
    S1 = _require(_subgroup(args, "gens1", "graph1"), "first subgroup (--gens1 or --graph1)")
    S2 = _require(_subgroup(args, "gens2", "graph2"), "second subgroup (--gens2 or --graph2)")
    if S1.alphabet_size != S2.alphabet_size:
        raise UsageError("subgroups have different alphabet sizes")
    return S1, S2


def _fmt_index(v) -> str:
    if v is None:
        return "not-subgroup"
    return "infinite" if v == INFINITE else str(v)


def cmd_fold(args, out):
    if args.graph is not None and args.gens is None:
        g = _read_graph(args.graph)
        if not g.is_connected():
            raise UsageError(f"{args.graph}: graph is not connected")
        out.write(graphs.format_graph(graphs.fold(g)))
    else:
        out.write(graphs.format_graph(_require(_subgroup(args, "gens", "graph"), "subgroup").graph))
    return 0


def cmd_core(args, out):
    S = _require(_subgroup(args, "gens", "graph"), "subgroup (--gens or --graph)")
    c = graphs.core(S.graph)
    if c is None:
        out.write("empty\n")
        return 0
    out.write(graphs.format_graph(c.graph))
    out.write(f"# spur {format_word(c.spur, S.alphabet_size)}\n# attach {c.attach}\n")
    return 0


def cmd_member(args, out):
    S = _require(_subgroup(args, "gens", "graph"), "subgroup (--gens or --graph)")
    w = _parse_gens(args.word, S.alphabet_size, "--word")[0]
    ok = w in S
    out.write("true\n" if ok else "false\n")
    return 1 if args.strict and not ok else 0


def cmd_rank(args, out):
    S = _require(_subgroup(args, "gens", "graph"), "subgroup (--gens or --graph)")
    out.write(f"{S.rank}\n")
    return 0


def cmd_intersect(args, out):
    S1, S2 = _pair(args)
    out.write(graphs.format_graph(pullback(S1, S2).graph))
    return 0


def cmd_join(args, out):
    S1, S2 = _pair(args)
    out.write(graphs.format_graph(join(S1, S2).graph))
    return 0


def cmd_index(args, out):
    S = _require(_subgroup(args, "sub", "sub_graph"), "subgroup (--sub or --sub-graph)")
    T = _ambient(args)
    if S.alphabet_size != T.alphabet_size:
        raise UsageError("subgroups have different alphabet sizes")
    v = index(S, T)
    out.write(_fmt_index(v) + "\n")
    return 1 if args.strict and (v is None or v == INFINITE) else 0


def cmd_burnside(args, out):
    S = _require(_subgroup(args, "sub", "sub_graph"), "subgroup (--sub or --sub-graph)")
    T = _ambient(args)
    if S.alphabet_size != T.alphabet_size:
        raise UsageError("subgroups have different alphabet sizes")
    result = satisfies_burnside(S, T)
    if result.verdict is Verdict.FALSE:
        out.write(f"FALSE witness={format_word(result.witness, S.alphabet_size)}\n")
    else:
        out.write(f"{result.verdict.value}\n")
    return 1 if args.strict and result.verdict is not Verdict.TRUE else 0


def cmd_witness(args, out):
    S = _require(_subgroup(args, "gens", "graph"), "subgroup (--gens or --graph)")
    g = _parse_gens(args.word, S.alphabet_size, "--word")[0]
    try:
        k = burnside_witness_power(S, g, args.max_iter)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write("none\n" if k is None else f"{k}\n")
    return 1 if args.strict and k is None else 0


def cmd_deck(args, out):
    S = _require(_subgroup(args, "sub", "sub_graph"), "subgroup (--sub or --sub-graph)")
    T = _ambient(args)
    m = inclusion_map(S, T)
    if m is None:
        raise UsageError("subgroup is not contained in the ambient subgroup")
    if args.show_map:
        out.write(format_map(m))
    if args.require_covering and not is_covering(m):
        raise UsageError("inclusion map is not a covering")
    out.write(format_deck_group(deck_transformations(m)))
    return 0


def cmd_check_theorem(args, out):
    if args.gens1 is not None or args.graph1 is not None:
        S1, S2 = _pair(args)
        rep = check_main_theorem(S1, S2)
        out.write(f"premise: {'TRUE' if rep.premise else 'FALSE'}\n")
        if rep.premise:
            out.write(f"conclusion: {'TRUE' if rep.conclusion else 'FALSE'}\n")
        for name in ("index_s3_s1", "index_s3_s2", "index_s3_join"):
            out.write(f"{name}: {_fmt_index(getattr(rep, name))}\n")
        out.write(f"violation: {'TRUE' if rep.violation else 'FALSE'}\n")
        return 1 if rep.violation else 0
    if args.seed is None:
        raise UsageError("batch runs need an explicit --seed")
    cfg = TrialConfig(
        alphabet_size=args.n or 2,
        mode=Mode(args.mode),
        num_generators=args.num_gens,
        max_word_length=args.max_len,
        covering_degree=args.degree,
        trials=args.trials,
        seed=args.seed,
    )
    try:
        summary, _ = run_batch(cfg, args.out, workers=args.workers)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    out.write(summary.format())
    return 0 if summary.ok else 1


def cmd_random(args, out):
    import random

    n = args.n or 2
    mode = Mode(args.mode)
    cfg = TrialConfig(alphabet_size=n, mode=mode, num_generators=args.num_gens,
                      max_word_length=args.max_len, covering_degree=args.degree, trials=1, seed=args.seed)
    rng = random.Random(f"{args.seed}")
    if mode is Mode.RANDOM_COVERING:
        S = random_finite_index_subgroup(cfg, rng)
    else:
        S = random_subgroup(cfg, rng)
    out.write(graphs.format_graph(S.graph))
    return 0


def cmd_dot(args, out):
    if args.graph is not None and args.gens is None:
        g = _read_graph(args.graph)
    else:
        g = _require(_subgroup(args, "gens", "graph"), "subgroup (--gens or --graph)").graph
    out.write(export_dot(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stallings", description="Stallings graphs of free-group subgroups")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    def verb(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("-n", type=int, default=None, help="alphabet size")
        p.set_defaults(func=func)
        return p

    def single(p):
        p.add_argument("--gens", help="comma-separated generator words")
        p.add_argument("--graph", help="graph file ('-' for stdin)")

    def pair(p):
        p.add_argument("--gens1")
        p.add_argument("--graph1")
        p.add_argument("--gens2")
        p.add_argument("--graph2")

    def sub_in(p):
        p.add_argument("--sub", dest="sub", help="generators of the subgroup")
        p.add_argument("--sub-graph", dest="sub_graph")
        p.add_argument("--in", dest="in_gens", help="generators of the ambient subgroup")
        p.add_argument("--in-graph", dest="in_graph")
        p.add_argument("--in-rose", action="store_true", help="ambient group is the whole free group")

    def strict(p):
        p.add_argument("--strict", action="store_true", help="exit 1 on a negative answer")

    def randomness(p):
        p.add_argument("--mode", default="RANDOM_COVERING", type=str.upper,
                       choices=[m.value for m in Mode])
        p.add_argument("--num-gens", type=int, default=2)
        p.add_argument("--max-len", type=int, default=6)
        p.add_argument("--degree", type=int, default=6)

    single(verb("fold", cmd_fold, "fold a graph or generator set"))
    single(verb("core", cmd_core, "core graph, spur and attachment vertex"))
    p = verb("member", cmd_member, "subgroup membership of a word")
    single(p)
    p.add_argument("--word", required=True)
    strict(p)
    single(verb("rank", cmd_rank, "rank of the subgroup"))
    pair(verb("intersect", cmd_intersect, "graph of the intersection"))
    pair(verb("join", cmd_join, "graph of the join"))
    p = verb("index", cmd_index, "index of --sub in the ambient subgroup")
    sub_in(p)
    strict(p)
    p = verb("burnside", cmd_burnside, "decide the Burnside condition")
    sub_in(p)
    strict(p)
    p = verb("witness", cmd_witness, "smallest power of --word in the subgroup")
    single(p)
    p.add_argument("--word", required=True)
    p.add_argument("--max-iter", type=int, default=None)
    strict(p)
    p = verb("deck", cmd_deck, "deck transformations of the inclusion map")
    sub_in(p)
    p.add_argument("--show-map", action="store_true")
    p.add_argument("--require-covering", action="store_true")
    p = verb("check-theorem", cmd_check_theorem, "check the theorem on a pair or a random batch")
    pair(p)
    randomness(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--workers", type=int, default=1)
    p = verb("random", cmd_random, "random subgroup graph")
    randomness(p)
    p.add_argument("--seed", type=int, required=True)
    single(verb("dot", cmd_dot, "DOT export"))
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except (graphs.GraphParseError, WordParseError) as exc:
        err.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
