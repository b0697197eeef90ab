"""Acceptance criteria, one test each.

Every test prints a single ``[criterion k] PASS|FAIL ...`` line. All
tolerances are exact; runtime limits are wall-clock seconds measured around
the sweep. Run directly with ``python3 tests/test_acceptance.py`` for the
summary alone.
"""
from __future__ import annotations

import sys
import time
from functools import lru_cache

import pytest

from almostnil.experiments import (
    ActionConfig,
    GradedBoundConfig,
    OracleConfig,
    Theorem1Config,
    Theorem2Config,
    bergman_sweep,
    graded_bound_sweep,
    lift_sweep,
    oracle_sweep,
    theorem1_sweep,
    theorem2_sweep,
)
from almostnil.factory import diagonal_conjugation, gen_matrix_algebra, gen_triangular
from almostnil.gradings import graded_hypotheses
from almostnil.pipelines import bergman_isaacs_check, theorem2_construct
from almostnil.tower import bounds_for

# pinned thresholds
GRADED_MIN, GRADED_SECONDS = 200, 60.0
THEOREM2_MIN, THEOREM2_SECONDS = 100, 300.0
ORACLE_MIN, ORACLE_MAX_W, ORACLE_SECONDS = 50, 3, 120.0
TOWER_SAMPLES = 1000
LIFT_MIN, LIFT_SECONDS = 100, 120.0
THEOREM1_GROUPS, THEOREM1_SECONDS = ("C2", "C3", "C4", "S3", "C6"), 600.0

TOWER_CHECKS = (
    "centralizer chain descends",
    "sampled insertions into centralizers land in I_e",
    "products with b-representatives drop one level",
    "one-sided products with centralizers descend a level mod I_e",
)


def format_line(k: int, passed: bool, detail: str) -> str:
    return f"[criterion {k}] {'PASS' if passed else 'FAIL'} {detail}"


@lru_cache(maxsize=None)
def _theorem2():
    return theorem2_sweep(Theorem2Config(count=THEOREM2_MIN, max_dim=40, d_max=2, samples=TOWER_SAMPLES))


def criterion_1():
    r = graded_bound_sweep(GradedBoundConfig(count=240, groups=(2, 3, 6), max_dim=60))
    dims_ok = all(x["dim"] <= 60 for x in r.records)
    ok = r.ok and r.count >= GRADED_MIN and dims_ok and r.seconds < GRADED_SECONDS
    worst = max(r.records, key=lambda x: x["index"] / x["bound"])
    return ok, (f"{r.count} graded instances, {len(r.failures)} with index > nd; "
                f"tightest index/nd = {worst['index']}/{worst['bound']}; {r.seconds:.1f}s")


def criterion_2():
    r = _theorem2()
    m0 = sum(x["m"] == 0 for x in r.records)
    ie0 = sum(x["label"].startswith("zero") for x in r.records)
    ok = r.ok and r.count >= THEOREM2_MIN and m0 > 0 and ie0 > 0 and r.seconds < THEOREM2_SECONDS
    return ok, (f"{r.count} instances ({m0} with m = 0, {ie0} with I_e = 0), "
                f"{len(r.failures)} failing; {r.seconds:.1f}s")


def criterion_3():
    r = oracle_sweep(OracleConfig(count=60, max_w=ORACLE_MAX_W))
    ok = r.ok and r.count >= ORACLE_MIN and r.seconds < ORACLE_SECONDS
    levels = sum(x["levels"] for x in r.records)
    return ok, f"{r.count} towers, {levels} levels compared, {len(r.failures)} mismatching; {r.seconds:.1f}s"


def criterion_4():
    r = _theorem2()
    bad = []
    for x in r.records:
        missing = [c for c in TOWER_CHECKS if c not in x["checks"]]
        failed = [c for c in TOWER_CHECKS if not x["checks"].get(c, False)]
        if missing or failed:
            bad.append((x["label"], failed))
    return not bad, f"{r.count} towers with {TOWER_SAMPLES} insertion samples each, {len(bad)} violating"


def criterion_5():
    results = []
    u = gen_triangular(2, False, 5, graded=True)
    rep = theorem2_construct(graded_hypotheses(u.algebra, u.grading))
    e12 = u.algebra.span([u.algebra.unit_vector(u.algebra.basis_names.index("E12"))])
    results.append(rep.ok and rep.ideal.carrier == e12 and rep.achieved_index == 2)
    f = gen_matrix_algebra(2, 5)
    rep = theorem2_construct(graded_hypotheses(f.algebra, f.grading))
    results.append(rep.ok and rep.ideal.carrier.is_zero() and rep.achieved_codim == 4)
    s = gen_triangular(4, True, 5, graded=True)
    rep = theorem2_construct(graded_hypotheses(s.algebra, s.grading, s.grading.identity_component))
    results.append(rep.ok and rep.ideal.carrier == s.algebra.whole() and rep.achieved_index == 4)
    return all(results), "upper-triangular 2x2, full 2x2, strict 4x4: " + ", ".join(
        "ok" if x else "MISMATCH" for x in results)


def criterion_6():
    r = lift_sweep(ActionConfig(count=120))
    ok = r.ok and r.count >= LIFT_MIN and r.seconds < LIFT_SECONDS
    return ok, f"{r.count} action instances, {len(r.failures)} failing lifts; {r.seconds:.1f}s"


def criterion_7():
    r = theorem1_sweep(Theorem1Config(groups=THEOREM1_GROUPS, per_group=6, max_dim=40))
    covered = {x["group"] for x in r.records if x["passed"]}
    stages_ok = all(x["passed"] for x in r.records)
    ok = r.ok and covered == set(THEOREM1_GROUPS) and stages_ok and r.seconds < THEOREM1_SECONDS
    return ok, (f"{r.count} runs over {', '.join(THEOREM1_GROUPS)}, {len(r.failures)} failing; "
                f"{r.seconds:.1f}s")


def criterion_8():
    a, b = bounds_for(2, 1), bounds_for(2, 2)
    got1 = {"H": a.H, "T": a.T, "S": a.S, "U": a.U, "Q": a.Q, "N": a.N, "h": a.h}
    got2 = {"W_1": b.W_at(1), "N": b.N, "T": b.T, "S": b.S, "U": b.U, "Q": b.Q}
    want1 = {"H": 2, "T": 2, "S": 2, "U": 1, "Q": 4, "N": 4, "h": 13}
    want2 = {"W_1": 18, "N": 7, "T": 9, "S": 9, "U": 2, "Q": 41}
    return got1 == want1 and got2 == want2, f"bounds(2,1) = {got1}; bounds(2,2) = {got2}"


def criterion_9():
    r = bergman_sweep(ActionConfig(count=120))
    inst = gen_triangular(3, True, 5)
    extra = bergman_isaacs_check(inst.algebra, diagonal_conjugation(inst, [1, -1, 1]))
    ok = r.ok and extra.ok and r.count > 0
    return ok, f"{r.count + 1} instances with nilpotent fixed points, {len(r.failures) + (not extra.ok)} over h^d"


CRITERIA = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
            6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9}


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, acceptance_log, capsys):
    t0 = time.perf_counter()
    passed, detail = CRITERIA[k]()
    line = format_line(k, passed, f"{detail} [{time.perf_counter() - t0:.1f}s total]")
    acceptance_log.append(line)
    with capsys.disabled():
        print("\n" + line)
    assert passed, detail


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        passed, detail = CRITERIA[k]()
        print(format_line(k, passed, detail), flush=True)
        failed += not passed
    sys.exit(1 if failed else 0)
