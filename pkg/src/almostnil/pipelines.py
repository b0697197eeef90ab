"""End-to-end constructions of nilpotent ideals with verified bounds."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .algebra import Algebra, IdealHandle
from .checks import CheckList
from .groups import PrimeSeries, find_prime_series, quotient_group, restrict, validate_series
from .gradings import (
    GradedHypotheses,
    GroupAction,
    HypothesisError,
    eigen_grading,
    fixed_subalgebra,
    graded_hypotheses,
    is_invariant,
    translates,
    validate_action,
)
from .linalg import Subspace, intersect, kernel, prime_factors, span, sum_, sum_all
from .tower import BoundSet, CentralizerTower, bergman_isaacs_h, bounds_for, build_tower, check_tower

log = logging.getLogger(__name__)


@dataclass
class ConstructionReport:
    bounds: Optional[BoundSet]
    ideal: IdealHandle
    achieved_index: Optional[int]
    achieved_codim: int
    checks: CheckList
    tower_summary: list = field(default_factory=list)
    stages: list[dict] = field(default_factory=list)
    composed_bound: Optional[int] = None
    notes: list[str] = field(default_factory=list)
    tower: Optional[CentralizerTower] = None

    @property
    def ok(self) -> bool:
        return self.checks.ok

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.ok,
            "bounds": self.bounds.to_dict() if self.bounds else None,
            "achieved_index": self.achieved_index,
            "achieved_codim": self.achieved_codim,
            "composed_bound": self.composed_bound,
            "ideal": {"dim": self.ideal.carrier.dim, "vectors": self.ideal.carrier.basis.tolist()},
            "checks": [c.to_dict() for c in self.checks.checks],
            "tower_summary": self.tower_summary,
            "stages": self.stages,
            "notes": self.notes,
        }


def _homogeneous_parts(alg: Algebra, hyp: GradedHypotheses, z: Subspace) -> list[Subspace]:
    return [intersect(z, hyp.grading[g]) for g in hyp.grading.group.elements()]


def theorem2_construct(
    hyp: GradedHypotheses,
    samples: int = 1000,
    seed: int = 0,
    N_override: Optional[int] = None,
) -> ConstructionReport:
    """Build the centralizer tower and the ideal generated by the top-level
    centralizers together with ``I_e``; verify it is a homogeneous nilpotent
    ideal within the stated bounds."""
    alg, grp = hyp.algebra, hyp.grading.group
    e = grp.identity
    bounds = bounds_for(hyp.n, hyp.d)
    tower = build_tower(hyp, N_override=N_override)
    N = tower.N
    ie = hyp.ideal.carrier
    checks = check_tower(tower, samples=samples, seed=seed)

    gens = sum_all([tower.A(g, N) for g in tower.nonidentity()] + [ie], alg.dim, alg.p)
    z = alg.ideal_closure(gens).carrier
    checks.add("Z is a two-sided ideal", alg.is_left_ideal(z) and alg.is_right_ideal(z))
    parts = _homogeneous_parts(alg, hyp, z)
    checks.add("Z is homogeneous", sum(q.dim for q in parts) == z.dim,
               {"component_dims": [q.dim for q in parts], "dim": z.dim})
    checks.add("I_e inside Z", z.contains(ie))

    ze = parts[e]
    ze_index = alg.nilpotency_index(ze)
    checks.add("(Z_e)^Q = 0", ze_index is not None and ze_index <= bounds.Q,
               {"index": ze_index, "Q": bounds.Q})
    index = alg.nilpotency_index(z)
    checks.add("Z^(nQ) = 0", index is not None and index <= bounds.nQ, {"index": index, "nQ": bounds.nQ})

    if N >= 2:
        # Z_e lies in level N-2 pair products plus conjugates of I_e, modulo I_e
        cover = [ie]
        for g in tower.nonidentity():
            gi = grp.inv(g)
            cover.append(alg.subspace_product(tower.A(gi, N - 2), tower.A(g, N - 2)))
            cover.append(alg.subspace_product(alg.subspace_product(hyp.grading[gi], ie), hyp.grading[g]))
        checks.add("Z_e covered by level N-2 pair products and conjugated I_e",
                   sum_all(cover, alg.dim, alg.p).contains(ze))

    return ConstructionReport(
        bounds=bounds,
        ideal=IdealHandle(z, True, True),
        achieved_index=index,
        achieved_codim=alg.dim - z.dim,
        checks=checks,
        tower_summary=tower.summary(),
        composed_bound=bounds.nQ,
        stages=[{
            "kind": "graded", "group_order": hyp.n, "dim": alg.dim, "d": hyp.d, "m": hyp.m,
            "Q": bounds.Q, "bound": bounds.nQ, "index": index, "codim": alg.dim - z.dim,
            "Z_e_index": ze_index,
        }],
        tower=tower,
    )


@dataclass
class InvariantHypotheses:
    algebra: Algebra
    action: GroupAction
    ideal: IdealHandle
    fixed: Subspace
    d: int
    m: int

    @property
    def n(self) -> int:
        return self.action.group.order


def invariant_hypotheses(alg: Algebra, action: GroupAction, ideal: Optional[Subspace] = None,
                         check_action: bool = True) -> InvariantHypotheses:
    """Validate an ideal ``I`` of the fixed-point subalgebra (default 0)."""
    n = action.group.order
    if n % alg.p == 0:
        raise HypothesisError(f"characteristic {alg.p} divides |G| = {n}")
    if check_action:
        rep = validate_action(alg, action)
        if not rep.ok:
            raise HypothesisError(f"invalid action: {rep.checks.failures()[0]}")
    fixed = fixed_subalgebra(alg, action)
    i = alg.zero_space() if ideal is None else ideal
    if not fixed.contains(i):
        raise HypothesisError("I is not inside the fixed-point subalgebra")
    if not (i.contains(alg.subspace_product(fixed, i)) and i.contains(alg.subspace_product(i, fixed))):
        raise HypothesisError("I is not a two-sided ideal of the fixed-point subalgebra")
    d = alg.nilpotency_index(i)
    if d is None:
        raise HypothesisError("I is not nilpotent")
    return InvariantHypotheses(alg, action, IdealHandle(i, True, True), fixed, d, fixed.dim - i.dim)


@dataclass
class LiftReport:
    ideal: IdealHandle
    index: Optional[int]
    bergman_bound: int
    checks: CheckList

    @property
    def ok(self) -> bool:
        return self.checks.ok

    def to_dict(self) -> dict:
        return {
            "passed": self.ok,
            "index": self.index,
            "bergman_bound": self.bergman_bound,
            "ideal": {"dim": self.ideal.carrier.dim, "vectors": self.ideal.carrier.basis.tolist()},
            "checks": [c.to_dict() for c in self.checks.checks],
        }


def invariant_ideal_lift(alg: Algebra, action: GroupAction, i: Subspace, d: Optional[int] = None) -> LiftReport:
    """Two-sided ideal generated by all translates of ``i``.

    ``i`` should be a nilpotent ideal of the fixed points of some normal
    subgroup; the result is checked for invariance and nilpotency directly.
    """
    n = action.group.order
    if n % alg.p == 0:
        raise HypothesisError(f"characteristic {alg.p} divides |G| = {n}")
    d = alg.nilpotency_index(i) if d is None else d
    k = alg.ideal_closure(translates(alg, action, i))
    checks = CheckList()
    checks.add("K is G-invariant", is_invariant(alg, action, k.carrier))
    checks.add("I inside K", k.carrier.contains(i))
    checks.add("K is a two-sided ideal", alg.is_left_ideal(k.carrier) and alg.is_right_ideal(k.carrier))
    index = alg.nilpotency_index(k.carrier)
    checks.add("K is nilpotent", index is not None)
    bound = bergman_isaacs_h(n) ** d if d is not None else 0
    checks.add("index of K <= h^d", index is not None and d is not None and index <= bound,
               {"index": index, "h^d": bound})
    return LiftReport(k, index, bound, checks)


def _fixed_by(alg: Algebra, action: GroupAction, elems) -> Subspace:
    eye = np.eye(alg.dim, dtype=np.int64)
    out = alg.whole()
    for h in elems:
        out = intersect(out, kernel((action.matrices[h] - eye) % alg.p, alg.p, alg.dim))
    return out


def _check_roots(p: int, n: int) -> None:
    if n % p == 0:
        raise HypothesisError(f"characteristic {p} divides |G| = {n}")
    for q in prime_factors(n):
        if (p - 1) % q:
            raise HypothesisError(f"F_{p} lacks a primitive {q}-th root of unity")


def _recurse(alg: Algebra, action: GroupAction, ideal: Subspace, series: PrimeSeries,
             stages: list, samples: int, seed: int, depth: int) -> tuple[Subspace, int, CheckList]:
    grp = action.group
    if len(series) == 1:
        grading = eigen_grading(alg, action)
        hyp = graded_hypotheses(alg, grading, ideal)
        rep = theorem2_construct(hyp, samples=samples, seed=seed)
        stage = dict(rep.stages[0], depth=depth, passed=rep.ok)
        stages.append(stage)
        log.debug("graded stage at depth %d: %s", depth, stage)
        for c in rep.checks.checks:
            c.name = f"[depth {depth}, |G|={grp.order}] {c.name}"
        return rep.ideal.carrier, rep.bounds.nQ, rep.checks

    checks = CheckList()
    top = series.chain[-2]
    # fixed points of the normal subgroup, acted on by the prime-order quotient
    c_space = _fixed_by(alg, action, top)
    c_alg, emb = alg.subalgebra(c_space)
    qgrp, coset_of = quotient_group(grp, top)
    reps = [min(x for x in grp.elements() if coset_of[x] == q) for q in qgrp.elements()]
    mats = []
    for g in reps:
        imgs = (emb @ action.matrices[g].T) % alg.p
        mats.append(c_space.coords(imgs).T)
    well_defined = all(
        np.array_equal(c_space.coords((emb @ action.matrices[x].T) % alg.p).T, mats[coset_of[x]])
        for x in grp.elements()
    )
    checks.add(f"[depth {depth}] quotient action on fixed points is well defined", well_defined)
    c_action = GroupAction.build(c_alg, qgrp, mats)
    c_ideal = span(c_space.coords(ideal.basis), c_alg.dim, alg.p) if ideal.dim else c_alg.zero_space()
    c_series = validate_series(qgrp, [[qgrp.identity], list(qgrp.elements())])
    j_c, _, sub = _recurse(c_alg, c_action, c_ideal, c_series, stages, samples, seed, depth + 1)
    checks.checks.extend(sub.checks)
    j = span((j_c.basis @ emb) % alg.p, alg.dim, alg.p) if j_c.dim else alg.zero_space()

    lift = invariant_ideal_lift(alg, action, j)
    for c in lift.checks.checks:
        checks.add(f"[depth {depth}] {c.name}", c.passed, c.witness)
    k = lift.ideal
    stages.append({"kind": "lift", "depth": depth, "group_order": grp.order, "dim": alg.dim,
                   "index": lift.index, "bound": lift.index, "bergman_bound": lift.bergman_bound,
                   "K_dim": k.carrier.dim})

    quo, proj, sec = alg.quotient(k)
    hgrp, elems = restrict(grp, top)
    hmats = [(proj @ action.matrices[x] @ sec.T) % alg.p for x in elems]
    h_action = GroupAction.build(quo, hgrp, hmats)
    pos = {x: i for i, x in enumerate(elems)}
    h_series = validate_series(hgrp, [[pos[x] for x in s] for s in series.chain[:-1]])
    zbar, zbound, sub = _recurse(quo, h_action, quo.zero_space(), h_series, stages, samples, seed, depth + 1)
    checks.checks.extend(sub.checks)
    lifted = span((zbar.basis @ sec) % alg.p, alg.dim, alg.p) if zbar.dim else alg.zero_space()
    z = sum_(k.carrier, lifted)
    return z, (lift.index or 0) * zbound, checks


def theorem1_construct(hyp: InvariantHypotheses, series: Optional[PrimeSeries] = None,
                       samples: int = 200, seed: int = 0) -> ConstructionReport:
    """Nilpotent ideal of A from a nilpotent ideal of the fixed points, by
    recursion along a prime series of the acting group."""
    alg, action = hyp.algebra, hyp.action
    grp = action.group
    if series is None:
        series = find_prime_series(grp)
        if series is None:
            raise HypothesisError("acting group is not soluble")
    series = validate_series(grp, series.chain)
    _check_roots(alg.p, grp.order)
    stages: list[dict] = []
    z, bound, checks = _recurse(alg, action, hyp.ideal.carrier, series, stages, samples, seed, 0)
    checks.add("H is a two-sided ideal of A", alg.is_left_ideal(z) and alg.is_right_ideal(z))
    index = alg.nilpotency_index(z)
    checks.add("H is nilpotent", index is not None)
    checks.add("index of H <= composed stage bound", index is not None and index <= bound,
               {"index": index, "bound": bound})
    graded = sum(s["kind"] == "graded" for s in stages)
    checks.add("one graded stage per series step", graded == len(series), {"graded": graded, "series": len(series)})
    return ConstructionReport(
        bounds=None,
        ideal=IdealHandle(z, True, True),
        achieved_index=index,
        achieved_codim=alg.dim - z.dim,
        checks=checks,
        stages=stages,
        composed_bound=bound,
        notes=["lift stages close J under all group translates before generating the ideal"],
    )


@dataclass
class BergmanIsaacsReport:
    n: int
    d: int
    h: int
    bound: int
    index: Optional[int]

    @property
    def ok(self) -> bool:
        return self.index is not None and self.index <= self.bound

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "h": self.h, "bound": self.bound, "index": self.index, "passed": self.ok}


def bergman_isaacs_check(alg: Algebra, action: GroupAction) -> BergmanIsaacsReport:
    n = action.group.order
    if n % alg.p == 0:
        raise HypothesisError(f"characteristic {alg.p} divides |G| = {n}")
    d = alg.nilpotency_index(fixed_subalgebra(alg, action))
    if d is None:
        raise HypothesisError("fixed-point subalgebra is not nilpotent")
    h = bergman_isaacs_h(n)
    return BergmanIsaacsReport(n, d, h, h**d, alg.nilpotency_index())
