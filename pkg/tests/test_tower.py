import numpy as np
import pytest
from hypothesis import given, strategies as st

from almostnil.factory import gen_random_graded
from almostnil.gradings import graded_hypotheses
from almostnil.groups import cyclic_group
from almostnil.tower import (
    BudgetExceeded,
    ProductSpanTable,
    Representative,
    bergman_isaacs_h,
    bounds_for,
    brute_force_level,
    build_tower,
    check_tower,
    level_zero,
    theta_kernel,
)


def E(alg, name):
    return alg.unit_vector(alg.basis_names.index(name))


def hyp_of(inst, ideal=None):
    return graded_hypotheses(inst.algebra, inst.grading, inst.algebra.zero_space() if ideal is None else ideal)


def test_bounds_small_cases():
    b = bounds_for(2, 1)
    assert (b.H, b.T, b.S, b.U, b.Q, b.N, b.h, b.nQ, b.nd) == (2, 2, 2, 1, 4, 4, 13, 8, 2)
    b = bounds_for(2, 2)
    assert (b.W_at(1), b.N, b.U, b.T, b.S, b.Q, b.nQ) == (18, 7, 2, 9, 9, 41, 82)
    assert b.Q_short == 25 and b.bergman == 169


def test_bergman_h_values():
    assert bergman_isaacs_h(1) == 5
    assert bergman_isaacs_h(2) == 13
    # product over i of (C(3,i)+1) = 2*4*4*2
    assert bergman_isaacs_h(3) == 65


@given(st.integers(1, 8), st.integers(1, 5))
def test_bounds_monotone_in_level(n, d):
    b = bounds_for(n, d)
    assert len(b.W) == b.N == d * d + 3
    assert all(b.W[i] + 1 == b.W[i + 1] for i in range(b.N - 1))
    assert b.Q >= b.Q_short >= 1 and b.nQ == n * b.Q


def test_theta_kernel_example(full2):
    hyp = hyp_of(full2)
    a = full2.algebra
    _, proj = level_zero(hyp)
    ag = full2.grading[1]
    k = theta_kernel(a, proj, ag, a.zero_space(), a.span([E(a, "E21")]), left_unit=True)
    assert k == a.span([E(a, "E21")])


def test_theta_kernel_trivial_when_quotient_vanishes(strict4):
    hyp = hyp_of(strict4, strict4.grading.identity_component)
    _, proj = level_zero(hyp)
    a = strict4.algebra
    ag = strict4.grading[1]
    assert proj.shape[0] == 0
    assert theta_kernel(a, proj, ag, a.whole(), a.whole(), True, True) == ag


def test_product_span_table_examples(full2):
    a = full2.algebra
    g2 = cyclic_group(2)
    pool = [Representative(E(a, n), 1, 0, "x_pair") for n in ("E12", "E21")]
    t = ProductSpanTable(a, g2, pool, 2)
    assert t[0, 2] == a.span([E(a, "E11"), E(a, "E22")])
    assert t[1, 1] == a.span([E(a, "E12"), E(a, "E21")])
    assert t[0, 1].is_zero() and t[1, 2].is_zero()
    empty = ProductSpanTable(a, g2, [], 3)
    assert all(empty[h, s].is_zero() for h in (0, 1) for s in (1, 2, 3))
    idem = [Representative(E(a, n), 0, 0, "x_identity") for n in ("E11", "E22")]
    t = ProductSpanTable(a, g2, idem, 3)
    assert all(t[0, s] == a.span([E(a, "E11"), E(a, "E22")]) for s in (1, 2, 3))


def _distinct_elements(reps, kind):
    return {tuple(r.element.tolist()) for r in reps if r.kind == kind}


def test_level_zero_representatives(full2, upper2):
    lvl, _ = level_zero(hyp_of(full2))
    a = full2.algebra
    assert _distinct_elements(lvl.reps, "x_identity") == {tuple(E(a, "E11")), tuple(E(a, "E22"))}
    assert _distinct_elements(lvl.reps, "x_pair") == {tuple(E(a, "E12")), tuple(E(a, "E21"))}
    lvl, _ = level_zero(hyp_of(upper2))
    assert not _distinct_elements(lvl.reps, "x_pair")


def test_towers_of_micro_instances(full2, upper2, strict4):
    t = build_tower(hyp_of(full2))
    a = full2.algebra
    assert all(t.A(1, s).is_zero() for s in range(1, t.N + 1))
    assert _distinct_elements(t.levels[1].reps, "b") == {tuple(E(a, "E12")), tuple(E(a, "E21"))}
    assert not _distinct_elements(t.levels[1].reps, "x_pair")
    t = build_tower(hyp_of(upper2))
    u = upper2.algebra
    assert all(t.A(1, s) == u.span([E(u, "E12")]) for s in range(t.N + 1))
    assert not _distinct_elements(t.levels[1].reps, "b")
    t = build_tower(hyp_of(strict4, strict4.grading.identity_component))
    assert all(t.A(1, s) == strict4.grading[1] for s in range(t.N + 1))
    assert not t.pool(t.N)


def test_brute_force_examples(full2, strict4):
    t = build_tower(hyp_of(full2), W_override=2)
    assert brute_force_level(t, 1, 2)[1].is_zero()
    t1 = build_tower(hyp_of(full2), W_override=1)
    assert all(brute_force_level(t1, s, 1)[1] == t1.A(1, s) for s in range(1, t1.N + 1))
    t = build_tower(hyp_of(strict4, strict4.grading.identity_component), W_override=2)
    assert brute_force_level(t, 1, 2)[1] == strict4.grading[1]
    with pytest.raises(BudgetExceeded):
        brute_force_level(t, 1, 5)


@given(st.integers(0, 2000), st.sampled_from(["suggested", "zero"]), st.integers(1, 2))
def test_span_recursion_matches_enumeration(seed, ideal, w):
    inst = gen_random_graded(seed, max_dim=10, d_max=2, ideal=ideal)
    t = build_tower(hyp_of(inst, inst.ideal), W_override=w)
    for s in range(1, t.N + 1):
        brute = brute_force_level(t, s, w, budget=50_000)
        assert all(brute[g] == t.A(g, s) for g in t.nonidentity())


@given(st.integers(0, 2000), st.sampled_from([2, 3]))
def test_tower_checks_hold(seed, n):
    inst = gen_random_graded(seed, cyclic_group(n), max_dim=16, d_max=1)
    t = build_tower(hyp_of(inst, inst.ideal))
    checks = check_tower(t, samples=100, seed=seed)
    assert checks.ok, checks.failures()


def test_periodic_span_table_matches_direct(full2):
    a = full2.algebra
    pool = [Representative(E(a, n), 1, 0, "x_pair") for n in ("E12", "E21")]
    t = ProductSpanTable(a, cyclic_group(2), pool, 9)
    for s in range(1, 10):
        expect_e = a.span([E(a, "E11"), E(a, "E22")]) if s % 2 == 0 else a.zero_space()
        assert t[0, s] == expect_e
    assert np.all([t[1, s].dim == (2 if s % 2 else 0) for s in range(1, 10)])
