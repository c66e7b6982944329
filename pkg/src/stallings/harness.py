"""Randomised checks of the intersection/join Burnside theorem.

For a pair S1, S2 with S3 = S1 ∩ S2 and J = <S1, S2>: whenever S3 is
Burnside in both S1 and S2, it must be Burnside in J. Each trial records
the premise, the conclusion, and a few classical cross-checks
(Nielsen-Schreier, Hanna Neumann, index multiplicativity).
"""

from __future__ import annotations

import csv
import enum
import io
import logging
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import graphs
from .subgroups import (
    INFINITE,
    Subgroup,
    Verdict,
    index,
    join,
    pullback,
    satisfies_burnside,
)
from .words import Word, format_word

log = logging.getLogger(__name__)

CSV_FIELDS = (
    "trial", "mode", "seed", "rank_s1", "rank_s2", "rank_s3", "rank_join",
    "index_s3_s1", "index_s3_s2", "index_s3_join", "premise", "conclusion", "violation",
)


class Mode(str, enum.Enum):
    RANDOM_WORDS = "RANDOM_WORDS"
    RANDOM_COVERING = "RANDOM_COVERING"
    # alternates the two populations trial by trial
    MIXED = "MIXED"


@dataclass(frozen=True)
class TrialConfig:
    alphabet_size: int = 2
    mode: Mode = Mode.RANDOM_COVERING
    num_generators: int = 2
    max_word_length: int = 6
    covering_degree: int = 6
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        if self.num_generators < 0 or self.max_word_length < 1 or self.covering_degree < 1:
            raise ValueError("generator count, word length and degree bounds must be positive")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")

    def trial_rng(self, trial: int) -> random.Random:
        # str seeds are hashed with sha512, so this is stable across processes
        return random.Random(f"{self.seed}/{trial}")

    def trial_mode(self, trial: int) -> Mode:
        if self.mode is Mode.MIXED:
            return Mode.RANDOM_COVERING if trial % 2 == 0 else Mode.RANDOM_WORDS
        return self.mode


def random_reduced_word(n: int, length: int, rng: random.Random) -> Word:
    letters: list[int] = []
    while len(letters) < length:
        x = rng.choice((1, -1)) * rng.randint(1, n)
        if letters and letters[-1] == -x:
            continue
        letters.append(x)
    return Word(letters)


def random_subgroup(cfg: TrialConfig, rng: random.Random) -> Subgroup:
    gens = [
        random_reduced_word(cfg.alphabet_size, rng.randint(1, cfg.max_word_length), rng)
        for _ in range(cfg.num_generators)
    ]
    return Subgroup.from_words(cfg.alphabet_size, gens)


def covering_from_permutations(perms, base: int = 0) -> graphs.LabeledGraph:
    """Graph with an edge i --g--> perms[g-1][i]; a covering of the rose."""
    d = len(perms[0])
    edges = tuple((i, g, p[i]) for g, p in enumerate(perms, 1) for i in range(d))
    return graphs.LabeledGraph(len(perms), d, base, edges)


def random_finite_index_subgroup(cfg: TrialConfig, rng: random.Random,
                                 degree: int | None = None) -> Subgroup:
    d = cfg.covering_degree if degree is None else degree
    attempts = 0
    while True:
        attempts += 1
        perms = []
        for _ in range(cfg.alphabet_size):
            p = list(range(d))
            rng.shuffle(p)
            perms.append(p)
        g = covering_from_permutations(perms)
        if g.is_connected():
            break
    if attempts > 1:
        log.debug("transitive permutation tuple after %d attempts (d=%d)", attempts, d)
    return Subgroup.from_graph(g)


@dataclass
class TrialReport:
    trial: int = 0
    mode: str = ""
    seed: int = 0
    generators1: tuple[Word, ...] = ()
    generators2: tuple[Word, ...] = ()
    rank_s1: int = 0
    rank_s2: int = 0
    rank_s3: int = 0
    rank_join: int = 0
    index_s3_s1: float = INFINITE
    index_s3_s2: float = INFINITE
    index_s3_join: float = INFINITE
    premise: bool = False
    conclusion: bool | None = None
    violation: bool = False
    witness: Word | None = None
    property_failures: list[str] = field(default_factory=list)

    def csv_row(self) -> dict[str, str]:
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "1" if v else "0"
            if v == INFINITE:
                return "inf"
            return str(v)

        return {k: fmt(getattr(self, k)) for k in CSV_FIELDS}


def check_main_theorem(S1: Subgroup, S2: Subgroup) -> TrialReport:
    S3 = pullback(S1, S2)
    J = join(S1, S2)
    in_s1 = satisfies_burnside(S3, S1)
    in_s2 = satisfies_burnside(S3, S2)
    if Verdict.NOT_SUBGROUP in (in_s1.verdict, in_s2.verdict):
        raise AssertionError("intersection is not contained in its factors")
    rep = TrialReport(
        generators1=S1.generators,
        generators2=S2.generators,
        rank_s1=S1.rank,
        rank_s2=S2.rank,
        rank_s3=S3.rank,
        rank_join=J.rank,
        index_s3_s1=index(S3, S1),
        index_s3_s2=index(S3, S2),
        index_s3_join=index(S3, J),
        premise=bool(in_s1) and bool(in_s2),
    )
    if rep.premise:
        result = satisfies_burnside(S3, J)
        rep.conclusion = bool(result)
        rep.violation = not result
        rep.witness = result.witness
    _cross_checks(rep, S1, S2, S3, J, (in_s1, in_s2))
    return rep


def hanna_neumann_holds(r1: int, r2: int, r3: int) -> bool:
    red = lambda r: max(r - 1, 0)  # noqa: E731
    return red(r3) <= 2 * red(r1) * red(r2)


def _cross_checks(rep, S1, S2, S3, J, verdicts) -> None:
    fails = rep.property_failures
    n = S1.alphabet_size
    F = Subgroup.free_group(n)
    for name, S in (("s1", S1), ("s2", S2), ("s3", S3), ("join", J)):
        d = index(S, F)
        if d != INFINITE and S.rank != d * (n - 1) + 1:
            fails.append(f"nielsen_schreier:{name}")
    if not hanna_neumann_holds(S1.rank, S2.rank, S3.rank):
        fails.append("hanna_neumann")
    i1 = index(S1, J)
    i2 = index(S2, J)
    for a, b in ((rep.index_s3_s1, i1), (rep.index_s3_s2, i2)):
        if math.isfinite(a) and math.isfinite(b) and a * b != rep.index_s3_join:
            fails.append("index_multiplicativity")
    for verdict, idx in zip(verdicts, (rep.index_s3_s1, rep.index_s3_s2)):
        if bool(verdict) != math.isfinite(idx):
            fails.append("burnside_vs_index")
    if rep.conclusion is not None and rep.conclusion != math.isfinite(rep.index_s3_join):
        fails.append("burnside_vs_index")


def run_trial(cfg: TrialConfig, trial: int) -> TrialReport:
    rng = cfg.trial_rng(trial)
    mode = cfg.trial_mode(trial)
    if mode is Mode.RANDOM_COVERING:
        S1 = random_finite_index_subgroup(cfg, rng, rng.randint(1, cfg.covering_degree))
        S2 = random_finite_index_subgroup(cfg, rng, rng.randint(1, cfg.covering_degree))
    else:
        S1 = random_subgroup(cfg, rng)
        S2 = random_subgroup(cfg, rng)
    rep = check_main_theorem(S1, S2)
    rep.trial, rep.mode, rep.seed = trial, mode.value, cfg.seed
    return rep


@dataclass
class BatchSummary:
    trials: int = 0
    by_mode: dict[str, dict[str, int]] = field(default_factory=dict)
    property_failures: dict[str, int] = field(default_factory=dict)
    violations: list[TrialReport] = field(default_factory=list)
    elapsed: float = 0.0

    def add(self, rep: TrialReport) -> None:
        self.trials += 1
        counts = self.by_mode.setdefault(
            rep.mode, {"trials": 0, "premise": 0, "conclusion": 0, "vacuous": 0, "violations": 0}
        )
        counts["trials"] += 1
        counts["premise"] += rep.premise
        counts["vacuous"] += not rep.premise
        counts["conclusion"] += bool(rep.conclusion)
        counts["violations"] += rep.violation
        for name in rep.property_failures:
            self.property_failures[name] = self.property_failures.get(name, 0) + 1
        if rep.violation:
            self.violations.append(rep)

    @property
    def ok(self) -> bool:
        return not self.violations

    def format(self) -> str:
        lines = [f"trials: {self.trials}"]
        for mode, c in sorted(self.by_mode.items()):
            lines.append(
                f"{mode}: trials={c['trials']} premise={c['premise']} "
                f"conclusion={c['conclusion']} vacuous={c['vacuous']} violations={c['violations']}"
            )
        for name in ("nielsen_schreier", "hanna_neumann", "index_multiplicativity", "burnside_vs_index"):
            total = sum(v for k, v in self.property_failures.items() if k.split(":")[0] == name)
            lines.append(f"{name} failures: {total}")
        lines.append(f"violations: {len(self.violations)}")
        for rep in self.violations:
            g1 = ",".join(format_word(w) for w in rep.generators1)
            g2 = ",".join(format_word(w) for w in rep.generators2)
            lines.append(f"  trial {rep.trial}: gens1={g1} gens2={g2} witness={rep.witness}")
        return "\n".join(lines) + "\n"


def write_csv(reports, out) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for rep in reports:
        writer.writerow(rep.csv_row())
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text)
    return text


def _run_chunk(args) -> list[TrialReport]:
    cfg, trials = args
    return [run_trial(cfg, t) for t in trials]


def run_batch(cfg: TrialConfig, out=None, workers: int = 1) -> tuple[BatchSummary, list[TrialReport]]:
    """Run ``cfg.trials`` trials; write the CSV to ``out`` when given.

    Parallel runs (``workers > 1``) produce the same reports as serial ones.
    """
    if out is not None:
        parent = Path(out).resolve().parent
        if not parent.is_dir():
            raise OSError(f"output directory does not exist: {parent}")
    t0 = time.perf_counter()
    ids = list(range(cfg.trials))
    if workers > 1 and cfg.trials > 1:
        chunks = [ids[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            reports = [r for part in pool.map(_run_chunk, [(cfg, c) for c in chunks]) for r in part]
        reports.sort(key=lambda r: r.trial)
    else:
        reports = [run_trial(cfg, t) for t in ids]
    summary = BatchSummary()
    for rep in reports:
        summary.add(rep)
    summary.elapsed = time.perf_counter() - t0
    log.info("%d trials in %.2fs", cfg.trials, summary.elapsed)
    write_csv(reports, out)
    return summary, reports
