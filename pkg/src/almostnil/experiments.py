"""Seeded instance sweeps shared by the acceptance suite and scripts/.

Each sweep takes a frozen config, walks a deterministic seed range and
returns one record per instance plus wall-clock time.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Iterator

from .factory import (
    gen_cayley_action,
    gen_matrix_algebra,
    gen_random_graded,
    gen_random_scaling,
    gen_triangular,
)
from .formats import Instance
from .gradings import HypothesisError, graded_hypotheses, graded_nilpotency_bound_check
from .groups import cyclic_group, symmetric_group
from .pipelines import (
    bergman_isaacs_check,
    invariant_hypotheses,
    invariant_ideal_lift,
    theorem1_construct,
    theorem2_construct,
)
from .tower import brute_force_level, build_tower


@dataclass
class SweepResult:
    name: str
    records: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def count(self) -> int:
        return len(self.records)

    @property
    def failures(self) -> list[dict]:
        return [r for r in self.records if not r["passed"]]

    @property
    def ok(self) -> bool:
        return not self.failures


def _timed(name: str, records: Iterator[dict]) -> SweepResult:
    t0 = time.perf_counter()
    out = list(records)
    return SweepResult(name, out, time.perf_counter() - t0)


@dataclass(frozen=True)
class GradedBoundConfig:
    count: int = 240
    groups: tuple[int, ...] = (2, 3, 6)
    max_dim: int = 60
    seed: int = 0


def graded_bound_sweep(cfg: GradedBoundConfig = GradedBoundConfig()) -> SweepResult:
    """Index of A against n*d on path algebras without idempotents
    (so A_e is nilpotent)."""

    def run():
        for i in range(cfg.count):
            n = cfg.groups[i % len(cfg.groups)]
            inst = gen_random_graded(cfg.seed + i, cyclic_group(n), max_dim=cfg.max_dim, idempotents=False,
                                     ideal="zero")
            bc = graded_nilpotency_bound_check(inst.algebra, inst.grading)
            yield dict(bc.to_dict(), seed=cfg.seed + i, dim=inst.algebra.dim, passed=bc.ok)

    return _timed("graded-bound", run())


@dataclass(frozen=True)
class Theorem2Config:
    count: int = 100
    max_dim: int = 40
    d_max: int = 2
    samples: int = 1000
    seed: int = 0


def theorem2_instances(cfg: Theorem2Config) -> Iterator[tuple[str, Instance]]:
    """Mixed C2 corpus: the three hand-checked matrix instances, plus random
    path algebras cycling through suggested, zero and m = 0 ideals."""
    t4 = gen_triangular(4, True, 5, True)
    t4.ideal = t4.grading.identity_component
    ut2 = gen_triangular(2, False, 5, True)
    ut2.ideal = ut2.algebra.zero_space()
    m2 = gen_matrix_algebra(2, 5)
    m2.ideal = m2.algebra.zero_space()
    fixed = [("strict-4", t4), ("upper-2", ut2), ("full-2", m2)]
    yield from fixed[: cfg.count]
    seed, made = cfg.seed, len(fixed)
    kinds = ("suggested", "zero", "m0")
    while made < cfg.count:
        kind = kinds[made % 3]
        if kind == "m0":
            inst = gen_random_graded(seed, max_dim=cfg.max_dim, idempotents=False, ideal="full")
            seed += 1
            if inst.algebra.nilpotency_index(inst.ideal) > cfg.d_max:
                continue
        else:
            inst = gen_random_graded(seed, max_dim=cfg.max_dim, d_max=cfg.d_max, ideal=kind)
            seed += 1
        made += 1
        yield f"{kind}-{seed - 1}", inst


def theorem2_sweep(cfg: Theorem2Config = Theorem2Config()) -> SweepResult:
    def run():
        for label, inst in theorem2_instances(cfg):
            hyp = graded_hypotheses(inst.algebra, inst.grading, inst.ideal)
            rep = theorem2_construct(hyp, samples=cfg.samples)
            yield {
                "label": label, "dim": inst.algebra.dim, "d": hyp.d, "m": hyp.m, "passed": rep.ok,
                "index": rep.achieved_index, "nQ": rep.bounds.nQ, "codim": rep.achieved_codim,
                "Z_dim": rep.ideal.carrier.dim,
                "checks": {c.name: c.passed for c in rep.checks.checks},
                "failures": [c.to_dict() for c in rep.checks.failures()],
            }

    return _timed("theorem2", run())


@dataclass(frozen=True)
class OracleConfig:
    count: int = 60
    max_w: int = 3
    max_dim: int = 14
    budget: int = 200_000
    seed: int = 0


def oracle_sweep(cfg: OracleConfig = OracleConfig()) -> SweepResult:
    """Brute-force tuple enumeration against the span recursion at every level,
    with W cycling through 1..max_w."""

    def run():
        for i in range(cfg.count):
            w = 1 + i % cfg.max_w
            kind = ("suggested", "zero")[i % 2]
            inst = gen_random_graded(cfg.seed + i, max_dim=cfg.max_dim, d_max=2, ideal=kind)
            hyp = graded_hypotheses(inst.algebra, inst.grading, inst.ideal)
            tower = build_tower(hyp, W_override=w)
            mism = []
            for s in range(1, tower.N + 1):
                brute = brute_force_level(tower, s, w, budget=cfg.budget)
                mism.extend((s, g) for g in tower.nonidentity() if brute[g] != tower.A(g, s))
            yield {"seed": cfg.seed + i, "W": w, "dim": inst.algebra.dim, "levels": tower.N,
                   "mismatches": mism, "passed": not mism}

    return _timed("oracle", run())


@dataclass(frozen=True)
class ActionConfig:
    count: int = 120
    orders: tuple[int, ...] = (2, 3, 4, 6)
    max_dim: int = 40
    seed: int = 0


def action_instances(cfg: ActionConfig) -> Iterator[Instance]:
    """Scaling actions of cyclic groups interleaved with translation actions
    of S3 on Cayley quivers."""
    s3 = symmetric_group(3)
    for i in range(cfg.count):
        seed = cfg.seed + i
        if i % 5 == 4:
            yield gen_cayley_action(seed, s3, max_dim=cfg.max_dim, signed=bool(i % 2))
        else:
            yield gen_random_scaling(seed, cfg.orders[i % len(cfg.orders)], max_dim=cfg.max_dim)


def lift_sweep(cfg: ActionConfig = ActionConfig()) -> SweepResult:
    def run():
        for inst in action_instances(cfg):
            rep = invariant_ideal_lift(inst.algebra, inst.action, inst.ideal)
            yield {"meta": inst.meta, "dim": inst.algebra.dim, "index": rep.index, "bound": rep.bergman_bound,
                   "passed": rep.ok, "failures": [c.to_dict() for c in rep.checks.failures()]}

    return _timed("lift", run())


@dataclass(frozen=True)
class Theorem1Config:
    groups: tuple[str, ...] = ("C2", "C3", "C4", "S3", "C6")
    per_group: int = 4
    max_dim: int = 40
    samples: int = 200
    seed: int = 0


def theorem1_instances(cfg: Theorem1Config) -> Iterator[tuple[str, Instance]]:
    for name in cfg.groups:
        for j in range(cfg.per_group):
            seed = cfg.seed + j
            if name == "S3":
                inst = gen_cayley_action(seed, symmetric_group(3), max_dim=cfg.max_dim, signed=bool(j % 2))
            elif j % 2:
                inst = gen_cayley_action(seed, cyclic_group(int(name[1:])), max_dim=cfg.max_dim)
            else:
                inst = gen_random_scaling(seed, int(name[1:]), max_dim=cfg.max_dim)
            yield name, inst


def theorem1_sweep(cfg: Theorem1Config = Theorem1Config()) -> SweepResult:
    def run():
        for name, inst in theorem1_instances(cfg):
            hyp = invariant_hypotheses(inst.algebra, inst.action, inst.ideal)
            rep = theorem1_construct(hyp, inst.series, samples=cfg.samples)
            yield {"group": name, "meta": inst.meta, "dim": inst.algebra.dim, "passed": rep.ok,
                   "index": rep.achieved_index, "bound": rep.composed_bound, "codim": rep.achieved_codim,
                   "series_length": len(inst.series), "stages": len(rep.stages),
                   "failures": [c.to_dict() for c in rep.checks.failures()]}

    return _timed("theorem1", run())


def bergman_sweep(cfg: ActionConfig = ActionConfig()) -> SweepResult:
    """Every action instance whose fixed points are nilpotent; the rest are
    counted as skipped (the bound says nothing about them)."""

    def run():
        for inst in action_instances(cfg):
            try:
                rep = bergman_isaacs_check(inst.algebra, inst.action)
            except HypothesisError:
                continue
            yield dict(rep.to_dict(), dim=inst.algebra.dim, meta=inst.meta)

    return _timed("bergman-isaacs", run())


def config_dict(cfg) -> dict:
    return asdict(cfg)
