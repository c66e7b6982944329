"""Batch check of the finite-index transfer theorem.

    python scripts/verify_main_theorem.py --trials 1000 --seed 0 --out runs/coverings.csv
"""

import argparse
import logging
import sys
import time

from stallings.harness import Mode, TrialConfig, run_batch


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("-n", "--alphabet-size", type=int, default=2)
    p.add_argument("--mode", choices=[m.name for m in Mode], default="RANDOM_COVERING")
    p.add_argument("--num-gens", type=int, default=2)
    p.add_argument("--max-len", type=int, default=6)
    p.add_argument("--degree", type=int, default=6)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=None, help="CSV path")
    p.add_argument("-v", "--verbose", action="store_true")
    args = p.parse_args()
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)

    cfg = TrialConfig(
        alphabet_size=args.alphabet_size,
        mode=Mode[args.mode],
        num_generators=args.num_gens,
        max_word_length=args.max_len,
        covering_degree=args.degree,
        trials=args.trials,
        seed=args.seed,
    )
    t0 = time.perf_counter()
    summary, _ = run_batch(cfg, args.out, workers=args.workers)
    print(summary.format())
    print(f"elapsed: {time.perf_counter() - t0:.2f}s")
    return 0 if summary.ok else 1


if __name__ == "__main__":
    sys.exit(main())
