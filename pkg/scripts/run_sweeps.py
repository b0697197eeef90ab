#!/usr/bin/env python3
"""Run the seeded sweeps and write a JSON summary.

    python3 scripts/run_sweeps.py --only theorem2 oracle --out results.json
"""
import argparse
import json
import sys

from almostnil.experiments import (
    ActionConfig,
    GradedBoundConfig,
    OracleConfig,
    Theorem1Config,
    Theorem2Config,
    bergman_sweep,
    config_dict,
    graded_bound_sweep,
    lift_sweep,
    oracle_sweep,
    theorem1_sweep,
    theorem2_sweep,
)
from almostnil.formats import write_atomic

SWEEPS = {
    "graded-bound": (graded_bound_sweep, GradedBoundConfig),
    "theorem2": (theorem2_sweep, Theorem2Config),
    "oracle": (oracle_sweep, OracleConfig),
    "lift": (lift_sweep, ActionConfig),
    "theorem1": (theorem1_sweep, Theorem1Config),
    "bergman-isaacs": (bergman_sweep, ActionConfig),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", nargs="*", choices=sorted(SWEEPS), default=sorted(SWEEPS))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()

    summary, ok = {}, True
    for name in args.only:
        fn, cfg_cls = SWEEPS[name]
        cfg = cfg_cls(seed=args.seed)
        res = fn(cfg)
        ok &= res.ok
        print(f"{name:15s} {res.count:4d} instances  {len(res.failures):3d} failing  {res.seconds:7.1f}s")
        summary[name] = {"config": config_dict(cfg), "count": res.count, "failures": res.failures,
                         "seconds": round(res.seconds, 3), "records": res.records}
    if args.out:
        write_atomic(args.out, json.dumps(summary, default=str) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
