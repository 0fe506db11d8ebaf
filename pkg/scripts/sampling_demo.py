"""Random-subgraph sampling demo: empirical means of n', m', x(G')
against their exact expectations pn, p^2 m, p^4 * (odd pairs).

Usage: python scripts/sampling_demo.py [--n 10] [--m 20] [--p 1/2]
       [--trials 20000] [--seed 7]
"""
from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from itertools import combinations
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from oddplanar.bounds import sampling_experiment
from oddplanar.graphs import Multigraph
from oddplanar.oracle import random_drawing


def run(n: int, m: int, p: Fraction, trials: int, seed: int) -> None:
    rng = random.Random(f"{seed}:demo")
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    g = Multigraph(tuple(range(n)), tuple((i, uv) for i, uv in enumerate(sorted(pairs[:m]))))
    d = random_drawing(g, seed, model="convex")
    stats = sampling_experiment(d, p, trials, seed)
    print(f"drawing: n={n} m={m} odd pairs={len(d.odd_pairs())} p={p} trials={trials}")
    for name, mean, se, exp in (
        ("n'", stats.mean_n, stats.se_n, stats.expected_n),
        ("m'", stats.mean_m, stats.se_m, stats.expected_m),
        ("x ", stats.mean_x, stats.se_x, stats.expected_x),
    ):
        print(f"  {name}: mean {float(mean):9.4f} (se {se:.4f})   expected {float(exp):9.4f}")
    print(f"  x >= 2m'-8n' violations: {stats.law_violations}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--m", type=int, default=20)
    ap.add_argument("--p", default="1/2")
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    run(args.n, args.m, Fraction(args.p), args.trials, args.seed)
