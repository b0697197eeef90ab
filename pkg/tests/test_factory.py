from hypothesis import given, strategies as st

from almostnil.factory import (
    QuiverSpec,
    default_prime,
    gen_cayley_action,
    gen_path_algebra,
    gen_random_graded,
    gen_random_scaling,
    gen_triangular,
    generate,
    validate_instance,
)
from almostnil.formats import emit_instance
from almostnil.gradings import graded_hypotheses
from almostnil.groups import cyclic_group, symmetric_group
from almostnil.tower import build_tower


def test_triangular_family():
    a = gen_triangular(3, True, 5).algebra
    assert a.dim == 3 and a.nilpotency_index() == 3
    u = gen_triangular(2, False, 5).algebra
    assert u.dim == 3
    idem = [i for i in range(3) if u.multiply(u.unit_vector(i), u.unit_vector(i)).tolist() == u.unit_vector(i).tolist()]
    assert len(idem) == 2
    s4 = gen_triangular(4, True, 5, graded=True)
    assert s4.grading.dims() == [2, 4]


def test_single_loop_path_algebra():
    pa = gen_path_algebra(QuiverSpec(1, ((0, 0, 1),), 3, True), cyclic_group(2), 5)
    assert pa.algebra.basis_names == ("v0", "a0", "a0.0")
    a = pa.algebra
    assert pa.grading[0] == a.span([a.unit_vector(0), a.unit_vector(2)])
    assert pa.grading[1] == a.span([a.unit_vector(1)])
    hyp = graded_hypotheses(a, pa.grading, pa.suggested_ideal)
    assert pa.suggested_ideal == a.span([a.unit_vector(2)])
    assert (hyp.d, hyp.m) == (2, 1)


def test_two_cycle_path_algebra():
    pa = gen_path_algebra(QuiverSpec(2, ((0, 1, 1), (1, 0, 1)), 3, True), cyclic_group(2), 5)
    a = pa.algebra
    names = a.basis_names
    cycles = [a.unit_vector(names.index(n)) for n in ("a0.1", "a1.0")]
    verts = [a.unit_vector(names.index(n)) for n in ("v0", "v1")]
    assert pa.grading.identity_component == a.span(verts + cycles)
    hyp = graded_hypotheses(a, pa.grading, pa.suggested_ideal)
    assert pa.suggested_ideal == a.span(cycles)
    assert (hyp.d, hyp.m) == (2, 2)


def test_default_primes():
    assert default_prime(2) == 3
    assert default_prime(3) == 7
    assert default_prime(6) == 7
    assert default_prime(4, exponent=4) == 5
    assert default_prime(6, exponent=6) == 7


def test_determinism():
    for fam, kw in (("random-graded", {"group": "C3"}), ("random-scaling", {"order": 4}),
                    ("cayley-action", {"group": "S3"})):
        assert emit_instance(generate(fam, 11, **kw)) == emit_instance(generate(fam, 11, **kw))


def test_seed_sweep_validates():
    for seed in range(100):
        assert validate_instance(gen_random_graded(seed, cyclic_group(1 + seed % 6), max_dim=30))
        if seed % 4 == 0:
            assert validate_instance(gen_random_scaling(seed, 2 + seed % 3, max_dim=30))
            assert validate_instance(gen_cayley_action(seed, symmetric_group(3), max_dim=30))


@given(st.integers(0, 10_000))
def test_codimension_zero_towers_are_constant(seed):
    inst = gen_random_graded(seed, max_dim=20, idempotents=False, ideal="full")
    hyp = graded_hypotheses(inst.algebra, inst.grading, inst.ideal)
    assert hyp.m == 0
    if hyp.d > 3:
        return
    t = build_tower(hyp)
    assert all(t.A(g, s) == inst.grading[g] for g in t.nonidentity() for s in range(t.N + 1))


@given(st.integers(0, 10_000), st.integers(5, 60))
def test_dimension_cap_respected(seed, cap):
    assert gen_random_graded(seed, max_dim=cap).algebra.dim <= cap
