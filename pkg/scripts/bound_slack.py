#!/usr/bin/env python3
"""How far achieved nilpotency indices sit below the proven bounds.

Prints, per group order, the largest observed index/bound ratio for the
graded bound n*d and for the theorem-2 bound nQ.
"""
import argparse
from collections import defaultdict

from almostnil.experiments import GradedBoundConfig, Theorem2Config, graded_bound_sweep, theorem2_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=120)
    args = ap.parse_args()

    graded = graded_bound_sweep(GradedBoundConfig(count=args.count))
    by_n = defaultdict(list)
    for r in graded.records:
        by_n[r["n"]].append(r["index"] / r["bound"])
    print("graded bound index <= n*d")
    for n in sorted(by_n):
        vals = by_n[n]
        print(f"  n={n}: {len(vals)} instances, max ratio {max(vals):.3f}, mean {sum(vals) / len(vals):.3f}")

    t2 = theorem2_sweep(Theorem2Config(count=min(args.count, 100), samples=100))
    ratios = [r["index"] / r["nQ"] for r in t2.records if r["index"] is not None]
    print("theorem-2 bound index(Z) <= nQ")
    print(f"  {len(ratios)} instances, max ratio {max(ratios):.4f}")
    tight = sorted(t2.records, key=lambda r: -r["index"] / r["nQ"])[:5]
    for r in tight:
        print(f"  {r['label']:>14s}: dim {r['dim']:2d}, d={r['d']}, m={r['m']:2d}, index {r['index']} of {r['nQ']}")


if __name__ == "__main__":
    main()
