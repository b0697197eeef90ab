import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from almostnil.algebra import Algebra
from almostnil.factory import (
    QuiverSpec,
    cayley_quiver,
    diagonal_conjugation,
    gen_action_from_permutation,
    gen_cayley_action,
    gen_path_algebra,
    gen_random_graded,
    gen_random_scaling,
    gen_triangular,
)
from almostnil.gradings import GroupAction, HypothesisError, fixed_subalgebra, graded_hypotheses, is_invariant
from almostnil.groups import cyclic_group, symmetric_group
from almostnil.pipelines import (
    bergman_isaacs_check,
    invariant_hypotheses,
    invariant_ideal_lift,
    theorem1_construct,
    theorem2_construct,
)
from oracles import naive_nilpotency


def E(alg, name):
    return alg.unit_vector(alg.basis_names.index(name))


def test_theorem2_upper_triangular(upper2):
    u = upper2.algebra
    rep = theorem2_construct(graded_hypotheses(u, upper2.grading))
    assert rep.ok
    assert rep.ideal.carrier == u.span([E(u, "E12")])
    assert rep.achieved_index == 2 and rep.bounds.nQ == 8 and rep.bounds.Q == 4


def test_theorem2_full_matrices(full2):
    rep = theorem2_construct(graded_hypotheses(full2.algebra, full2.grading))
    assert rep.ok and rep.ideal.carrier.is_zero()
    assert rep.achieved_index == 1 and rep.achieved_codim == 4


def test_theorem2_codimension_zero(strict4):
    a = strict4.algebra
    rep = theorem2_construct(graded_hypotheses(a, strict4.grading, strict4.grading.identity_component))
    assert rep.ok and rep.ideal.carrier == a.whole()
    assert rep.achieved_index == 4 and rep.bounds.Q == 41 and rep.bounds.nQ == 82


@settings(max_examples=25)
@given(st.integers(0, 5000), st.sampled_from(["suggested", "zero"]))
def test_theorem2_random(seed, ideal):
    inst = gen_random_graded(seed, max_dim=20, d_max=2, ideal=ideal)
    rep = theorem2_construct(graded_hypotheses(inst.algebra, inst.grading, inst.ideal), samples=100)
    assert rep.ok, rep.checks.failures()
    z = rep.ideal.carrier
    assert rep.achieved_index == naive_nilpotency(inst.algebra, z.basis)


def strict3_conjugation():
    inst = gen_triangular(3, True, 5)
    return inst.algebra, diagonal_conjugation(inst, [1, -1, 1])


def test_lift_examples():
    a, act = strict3_conjugation()
    fixed = a.span([E(a, "E13")])
    rep = invariant_ideal_lift(a, act, fixed)
    assert rep.ok and rep.ideal.carrier == fixed and rep.index == 2
    triv = GroupAction.trivial(a, cyclic_group(2))
    s = a.span([E(a, "E12")])
    assert invariant_ideal_lift(a, triv, s).ideal.carrier == a.ideal_closure(s).carrier
    swap = Algebra.from_products(5, 2, [(0, 0, 0, 1), (1, 1, 1, 1)])
    act2 = GroupAction.build(swap, cyclic_group(2), [np.eye(2, dtype=np.int64), [[0, 1], [1, 0]]])
    assert invariant_ideal_lift(swap, act2, swap.zero_space()).ideal.carrier.is_zero()


@given(st.integers(0, 5000), st.sampled_from([2, 3, 4]))
def test_lift_random(seed, order):
    inst = gen_random_scaling(seed, order, max_dim=24)
    rep = invariant_ideal_lift(inst.algebra, inst.action, inst.ideal)
    assert rep.ok and is_invariant(inst.algebra, inst.action, rep.ideal.carrier)


def test_theorem1_conjugation_full(full2):
    a = full2.algebra
    act = diagonal_conjugation(full2, [1, -1])
    rep = theorem1_construct(invariant_hypotheses(a, act, a.zero_space()))
    assert rep.ok and rep.ideal.carrier.is_zero() and rep.achieved_codim == 4


def test_theorem1_trivial_action():
    a = gen_triangular(3, True, 5).algebra
    act = GroupAction.trivial(a, cyclic_group(2))
    hyp = invariant_hypotheses(a, act, a.whole())
    assert (hyp.d, hyp.m) == (3, 0)
    rep = theorem1_construct(hyp)
    assert rep.ok and rep.ideal.carrier == a.whole() and rep.achieved_index == 3


def test_theorem1_s3_on_path_algebra():
    g = symmetric_group(3)
    q, vperm, aperm = cayley_quiver(g, [1, 2], 3, True)
    pa = gen_path_algebra(q, cyclic_group(1), 7)
    act = gen_action_from_permutation(pa, g, vperm, aperm)
    i = fixed_subalgebra(pa.algebra, act) & pa.arrow_ideal()
    rep = theorem1_construct(invariant_hypotheses(pa.algebra, act, i))
    assert rep.ok
    assert [s["kind"] for s in rep.stages].count("graded") == 2
    assert rep.achieved_index <= rep.composed_bound


def test_theorem1_needs_roots_of_unity():
    tri = gen_triangular(2, True, 5).algebra
    # F_5 has no primitive cube root of unity
    with pytest.raises(HypothesisError):
        theorem1_construct(invariant_hypotheses(tri, GroupAction.trivial(tri, cyclic_group(3)), tri.zero_space()))
    tri7 = gen_triangular(2, True, 7).algebra
    hyp = invariant_hypotheses(tri7, GroupAction.trivial(tri7, cyclic_group(3)), tri7.zero_space())
    assert theorem1_construct(hyp).ok


@settings(max_examples=15)
@given(st.integers(0, 5000), st.sampled_from(["C4", "C6", "S3"]))
def test_theorem1_random(seed, group):
    if group == "S3":
        inst = gen_cayley_action(seed, symmetric_group(3), max_dim=24)
    else:
        inst = gen_random_scaling(seed, int(group[1:]), max_dim=24)
    rep = theorem1_construct(invariant_hypotheses(inst.algebra, inst.action, inst.ideal), inst.series, samples=50)
    assert rep.ok, rep.checks.failures()


def test_bergman_isaacs_examples():
    a, act = strict3_conjugation()
    rep = bergman_isaacs_check(a, act)
    assert (rep.d, rep.h, rep.bound, rep.index) == (2, 13, 169, 3) and rep.ok
    z = Algebra.from_products(5, 1, [])
    rep = bergman_isaacs_check(z, GroupAction.trivial(z, cyclic_group(1)))
    assert rep.h == 5 and rep.index == 2 and rep.ok


def test_bergman_isaacs_rejects_non_nilpotent_fixed_points(upper2):
    u = upper2.algebra
    with pytest.raises(HypothesisError):
        bergman_isaacs_check(u, GroupAction.trivial(u, cyclic_group(2)))
    q = QuiverSpec(1, ((0, 0, 0),), 3, False)
    pa = gen_path_algebra(q, cyclic_group(1), 3)
    with pytest.raises(HypothesisError):
        bergman_isaacs_check(pa.algebra, GroupAction.trivial(pa.algebra, cyclic_group(3)))
