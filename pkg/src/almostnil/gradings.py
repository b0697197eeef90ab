"""Group gradings, automorphism actions, fixed points and eigenspace gradings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .algebra import Algebra, IdealHandle
from .checks import CheckList
from .groups import FiniteGroup
from .linalg import FieldSpec, Subspace, intersect, kernel, sum_all


class HypothesisError(ValueError):
    """Input does not satisfy the hypotheses an operation requires."""


@dataclass(frozen=True, eq=False)
class Grading:
    group: FiniteGroup
    components: tuple[Subspace, ...]

    def __getitem__(self, g: int) -> Subspace:
        return self.components[g]

    @property
    def identity_component(self) -> Subspace:
        return self.components[self.group.identity]

    def dims(self) -> list[int]:
        return [c.dim for c in self.components]

    def labels(self) -> Optional[list[int]]:
        """Grade of each basis vector when the grading is basis-aligned, else ``None``."""
        if not self.components:
            return None
        n = self.components[0].ambient
        out = [-1] * n
        for g, c in enumerate(self.components):
            for row in c.basis:
                nz = np.flatnonzero(row)
                if len(nz) != 1:
                    return None
                out[int(nz[0])] = g
        return None if -1 in out else out

    @classmethod
    def from_labels(cls, alg: Algebra, group: FiniteGroup, labels: Sequence[int]) -> "Grading":
        if len(labels) != alg.dim:
            raise HypothesisError("one grade label per basis vector is required")
        comps = []
        for g in group.elements():
            idx = [i for i, lab in enumerate(labels) if lab == g]
            comps.append(alg.span([alg.unit_vector(i) for i in idx]))
        return cls(group, tuple(comps))

    @classmethod
    def trivial(cls, alg: Algebra, group: FiniteGroup) -> "Grading":
        return cls.from_labels(alg, group, [group.identity] * alg.dim)


@dataclass
class GradingReport:
    checks: CheckList
    dims: list[int]

    @property
    def ok(self) -> bool:
        return self.checks.ok


def validate_grading(alg: Algebra, grading: Grading) -> GradingReport:
    checks = CheckList()
    grp = grading.group
    comps = grading.components
    checks.add("one component per group element", len(comps) == grp.order, len(comps))
    total = sum(c.dim for c in comps)
    joint = sum_all(comps, alg.dim, alg.p)
    checks.add("components form a direct sum", total == joint.dim, {"sum_of_dims": total, "dim_of_sum": joint.dim})
    checks.add("components span the algebra", joint.dim == alg.dim, {"dim_of_sum": joint.dim, "dim": alg.dim})
    witness = None
    for g in grp.elements():
        for h in grp.elements():
            u, v = comps[g], comps[h]
            if not u.dim or not v.dim:
                continue
            prods = alg.pair_products(u.basis, v.basis)
            target = comps[grp.mul(g, h)]
            res = target.residual(prods.reshape(-1, alg.dim)).reshape(prods.shape)
            bad = np.argwhere(res.any(axis=2))
            if bad.size:
                a, b = bad[0]
                witness = {"g": g, "h": h, "x": u.basis[a].tolist(), "y": v.basis[b].tolist(),
                           "product": prods[a, b].tolist()}
                break
        if witness:
            break
    checks.add("A_g A_h inside A_gh", witness is None, witness)
    return GradingReport(checks, grading.dims())


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Left action: ``matrices[g] @ x`` is the image of x under g."""

    group: FiniteGroup
    matrices: np.ndarray
    p: int

    def __getitem__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def apply(self, g: int, x) -> np.ndarray:
        return (self.matrices[g] @ np.asarray(x, dtype=np.int64)) % self.p

    @classmethod
    def build(cls, alg: Algebra, group: FiniteGroup, matrices) -> "GroupAction":
        m = np.array(matrices, dtype=np.int64) % alg.p
        if m.shape != (group.order, alg.dim, alg.dim):
            raise HypothesisError(f"action matrices of shape {m.shape}")
        m.setflags(write=False)
        return cls(group, m, alg.p)

    @classmethod
    def from_generators(cls, alg: Algebra, group: FiniteGroup, gens: dict[int, np.ndarray]) -> "GroupAction":
        """Extend matrices given on generators to the whole group."""
        p = alg.p
        mats: dict[int, np.ndarray] = {group.identity: np.eye(alg.dim, dtype=np.int64)}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, mg in gens.items():
                    y = group.mul(x, g)
                    if y not in mats:
                        mats[y] = (mats[x] @ (np.asarray(mg, dtype=np.int64) % p)) % p
                        nxt.append(y)
            frontier = nxt
        if len(mats) != group.order:
            raise HypothesisError("generators do not generate the group")
        return cls.build(alg, group, [mats[g] for g in group.elements()])

    @classmethod
    def trivial(cls, alg: Algebra, group: FiniteGroup) -> "GroupAction":
        return cls.build(alg, group, np.broadcast_to(np.eye(alg.dim, dtype=np.int64), (group.order, alg.dim, alg.dim)))


@dataclass
class ActionReport:
    checks: CheckList

    @property
    def ok(self) -> bool:
        return self.checks.ok


def validate_action(alg: Algebra, action: GroupAction) -> ActionReport:
    checks = CheckList()
    grp, p, d = action.group, alg.p, alg.dim
    m = action.matrices
    checks.add("matrix shape", m.shape == (grp.order, d, d), list(m.shape))
    if m.shape != (grp.order, d, d):
        return ActionReport(checks)
    eye = np.eye(d, dtype=np.int64)
    checks.add("identity acts trivially", np.array_equal(m[grp.identity] % p, eye))
    hom = None
    for g in grp.elements():
        for h in grp.elements():
            if not np.array_equal((m[g] @ m[h]) % p, m[grp.mul(g, h)] % p):
                hom = {"g": g, "h": h}
                break
        if hom:
            break
    checks.add("rho(g) rho(h) = rho(gh)", hom is None, hom)
    auto = None
    for g in grp.elements():
        cols = m[g].T % p
        lhs = alg.pair_products(cols, cols)
        rhs = (alg.constants @ m[g].T) % p
        bad = np.argwhere((lhs != rhs).any(axis=2))
        if bad.size:
            auto = {"g": g, "i": int(bad[0][0]), "j": int(bad[0][1])}
            break
    checks.add("each rho(g) is multiplicative", auto is None, auto)
    return ActionReport(checks)


def fixed_subalgebra(alg: Algebra, action: GroupAction) -> Subspace:
    eye = np.eye(alg.dim, dtype=np.int64)
    out = alg.whole()
    for g in action.group.elements():
        out = intersect(out, kernel((action.matrices[g] - eye) % alg.p, alg.p, alg.dim))
    assert alg.is_multiplicatively_closed(out), "fixed points not closed under product"
    return out


def _check_characteristic(p: int, n: int) -> None:
    if n % p == 0:
        raise HypothesisError(f"characteristic {p} divides group order {n}")


def averaging_matrix(alg: Algebra, action: GroupAction) -> np.ndarray:
    n = action.group.order
    _check_characteristic(alg.p, n)
    return (action.matrices.sum(axis=0) % alg.p) * pow(n, -1, alg.p) % alg.p


def average(alg: Algebra, action: GroupAction, x) -> np.ndarray:
    return (averaging_matrix(alg, action) @ np.asarray(x, dtype=np.int64)) % alg.p


def translates(alg: Algebra, action: GroupAction, s: Subspace) -> Subspace:
    """Span of all images of ``s`` under the group."""
    if not s.dim:
        return s
    rows = [(s.basis @ action.matrices[g].T) % alg.p for g in action.group.elements()]
    return alg.span(np.vstack(rows))


def is_invariant(alg: Algebra, action: GroupAction, s: Subspace) -> bool:
    return all(alg.span((s.basis @ action.matrices[g].T) % alg.p) == s for g in action.group.elements()) if s.dim else True


def eigen_grading(alg: Algebra, action: GroupAction, omega: Optional[int] = None) -> Grading:
    """Grading of A by a cyclic group of prime order q acting on it.

    With ``g`` the least-index generator, the component of ``g^k`` is the
    ``omega^k``-eigenspace of ``rho(g)``.
    """
    grp = action.group
    q = grp.order
    if not grp.is_cyclic_of_prime_order():
        raise HypothesisError(f"group of order {q} is not cyclic of prime order")
    fld = FieldSpec(alg.p)
    _check_characteristic(alg.p, q)
    if omega is None:
        if not fld.has_root_of_unity(q):
            raise HypothesisError(f"F_{alg.p} has no primitive {q}-th root of unity")
        omega = fld.root_of_unity(q)
    elif pow(omega, q, alg.p) != 1 or omega % alg.p == 1:
        raise HypothesisError(f"{omega} is not a primitive {q}-th root of unity mod {alg.p}")
    g = grp.generator()
    eye = np.eye(alg.dim, dtype=np.int64)
    comps: list[Optional[Subspace]] = [None] * q
    elem = grp.identity
    for k in range(q):
        lam = pow(omega, k, alg.p)
        comps[elem] = kernel((action.matrices[g] - lam * eye) % alg.p, alg.p, alg.dim)
        elem = grp.mul(elem, g)
    grading = Grading(grp, tuple(comps))
    if sum(grading.dims()) != alg.dim:
        raise HypothesisError("rho(g) is not diagonalizable over F_p")
    return grading


@dataclass
class GradedHypotheses:
    """A grading together with a nilpotent ideal ``I_e`` of the identity component."""

    algebra: Algebra
    grading: Grading
    ideal: IdealHandle
    d: int
    m: int

    @property
    def n(self) -> int:
        return self.grading.group.order

    @property
    def identity_component(self) -> Subspace:
        return self.grading.identity_component


def graded_hypotheses(alg: Algebra, grading: Grading, ideal: Optional[Subspace] = None) -> GradedHypotheses:
    """Check the graded hypotheses and compute ``d`` and ``m``.

    ``ideal`` defaults to the zero ideal.
    """
    rep = validate_grading(alg, grading)
    if not rep.ok:
        raise HypothesisError(f"invalid grading: {rep.checks.failures()[0]}")
    ae = grading.identity_component
    ie = alg.zero_space() if ideal is None else ideal
    if not ae.contains(ie):
        raise HypothesisError("I_e is not inside A_e")
    left = ie.contains(alg.subspace_product(ae, ie))
    right = ie.contains(alg.subspace_product(ie, ae))
    if not (left and right):
        raise HypothesisError("I_e is not a two-sided ideal of A_e")
    d = alg.nilpotency_index(ie)
    if d is None:
        raise HypothesisError("I_e is not nilpotent")
    return GradedHypotheses(alg, grading, IdealHandle(ie, True, True), d, ae.dim - ie.dim)


@dataclass
class BoundCheck:
    n: int
    d: Optional[int]
    index: Optional[int]
    bound: Optional[int]

    @property
    def ok(self) -> bool:
        return self.index is not None and self.bound is not None and self.index <= self.bound

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "index": self.index, "bound": self.bound, "ok": self.ok}


def graded_nilpotency_bound_check(alg: Algebra, grading: Grading) -> BoundCheck:
    """If A_e is nilpotent of index d, compare the index of A with n*d."""
    d = alg.nilpotency_index(grading.identity_component)
    if d is None:
        raise HypothesisError("identity component is not nilpotent")
    n = grading.group.order
    return BoundCheck(n, d, alg.nilpotency_index(), n * d)
