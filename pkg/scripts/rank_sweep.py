"""Rank of random finite-index subgroups against d(n-1)+1, and the
reduced-rank ratio r(S1 ∩ S2) / 2 r(S1) r(S2) over random word pairs.

    python scripts/rank_sweep.py --samples 200 --seed 1
"""

import argparse
import random
from collections import Counter

from stallings.harness import TrialConfig, random_finite_index_subgroup, random_subgroup
from stallings.subgroups import pullback


def reduced(S):
    return max(S.rank - 1, 0)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--max-degree", type=int, default=8)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args()
    rng = random.Random(args.seed)

    print("n  d  samples  rank  expected  mismatches")
    for n in (2, 3):
        for d in range(1, args.max_degree + 1):
            ranks = Counter(
                random_finite_index_subgroup(TrialConfig(alphabet_size=n), rng, d).rank
                for _ in range(args.samples // args.max_degree or 1)
            )
            expected = d * (n - 1) + 1
            bad = sum(c for r, c in ranks.items() if r != expected)
            print(f"{n}  {d}  {sum(ranks.values()):7d}  {sorted(ranks)}  {expected:8d}  {bad}")

    ratios = []
    for _ in range(args.samples):
        n = rng.randint(2, 3)
        cfg = TrialConfig(alphabet_size=n, num_generators=rng.randint(1, 4), max_word_length=6)
        S1, S2 = random_subgroup(cfg, rng), random_subgroup(cfg, rng)
        r3 = reduced(pullback(S1, S2))
        if r3:
            ratios.append(r3 / (2 * reduced(S1) * reduced(S2)))
    print(f"\nintersections with positive reduced rank: {len(ratios)}/{args.samples}")
    if ratios:
        print(f"max ratio {max(ratios):.3f}, mean {sum(ratios) / len(ratios):.3f}")


if __name__ == "__main__":
    main()
