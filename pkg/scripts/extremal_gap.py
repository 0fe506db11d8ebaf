"""Empirical gap explorer: how close does local search get to the known
density bounds for drawings with at most k odd crossings per edge?

Whether the true maximum ever exceeds the k-planar maximum is open; this
prints best-found edge counts next to both bounds so the gap is visible.

Usage: python scripts/extremal_gap.py [--kmax 2] [--nmax 12] [--budget 400]
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from oddplanar.bounds import mk_upper, modd_upper
from oddplanar.oracle import EnumerationBudget, extremal_search


def run(kmax: int, nmax: int, budget: int, seed: int) -> None:
    print(f"{'k':>2} {'n':>3} {'best m':>7} {'mk_upper':>9} {'modd_upper':>11} {'gap':>5}")
    for k in range(0, kmax + 1):
        for n in range(5, nmax + 1):
            res = extremal_search(k, n, EnumerationBudget(0, budget, 60.0), seed=seed)
            gap = res.target_upper - res.edge_count
            print(
                f"{k:>2} {n:>3} {res.edge_count:>7} {mk_upper(k, n):>9} "
                f"{modd_upper(k, n):>11} {gap:>5}"
            )


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmax", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=12)
    ap.add_argument("--budget", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    run(args.kmax, args.nmax, args.budget, args.seed)
