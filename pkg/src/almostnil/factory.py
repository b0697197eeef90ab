"""Generators of valid test instances.

Everything here is constructive: path algebras are associative by design,
actions come from quiver symmetries and arrow scalings, and all randomness
flows from an explicit seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Optional, Sequence

import numpy as np

from .algebra import Algebra
from .formats import Instance
from .gradings import Grading, GroupAction, fixed_subalgebra, validate_action, validate_grading
from .groups import FiniteGroup, cyclic_group, find_prime_series, symmetric_group
from .linalg import FieldSpec, is_prime, prime_factors


def default_prime(n: int, exponent: int = 1) -> int:
    """Smallest prime p not dividing n with p = 1 mod every prime factor of n
    and mod ``exponent``."""
    mods = set(prime_factors(n)) | ({exponent} if exponent > 1 else set())
    p = 2
    while True:
        if is_prime(p) and n % p and all((p - 1) % q == 0 for q in mods):
            return p
        p += 1


def _matrix_units(pairs: list[tuple[int, int]], p: int) -> Algebra:
    idx = {pr: i for i, pr in enumerate(pairs)}
    prods = []
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c and (a, d) in idx:
                prods.append((i, j, idx[(a, d)], 1))
    return Algebra.from_products(p, len(pairs), prods, [f"E{a + 1}{b + 1}" for a, b in pairs])


def parity_grading(alg: Algebra, pairs: list[tuple[int, int]]) -> Grading:
    return Grading.from_labels(alg, cyclic_group(2), [(b - a) % 2 for a, b in pairs])


def gen_triangular(k: int, strict: bool = True, p: int = 5, graded: bool = False) -> Instance:
    """Upper-triangular k x k matrices (strictly, if ``strict``); with
    ``graded`` the C2-grading by (j - i) mod 2 is attached."""
    if k < 1:
        raise ValueError("k must be positive")
    pairs = [(i, j) for i in range(k) for j in range(k) if (j > i if strict else j >= i)]
    alg = _matrix_units(pairs, p)
    inst = Instance(alg, meta={"family": "triangular", "k": k, "strict": strict})
    if graded:
        inst.grading = parity_grading(alg, pairs)
        inst.group = inst.grading.group
    return inst


def gen_matrix_algebra(k: int, p: int = 5, graded: bool = True) -> Instance:
    """Full k x k matrices, optionally C2-graded by (j - i) mod 2."""
    pairs = [(i, j) for i in range(k) for j in range(k)]
    alg = _matrix_units(pairs, p)
    inst = Instance(alg, meta={"family": "matrix", "k": k})
    if graded:
        inst.grading = parity_grading(alg, pairs)
        inst.group = inst.grading.group
    return inst


def diagonal_conjugation(inst: Instance, signs: Sequence[int]) -> GroupAction:
    """C2 acting on a matrix-unit algebra by conjugation with diag(signs)."""
    alg = inst.algebra
    p = alg.p
    mat = np.zeros((alg.dim, alg.dim), dtype=np.int64)
    for i, name in enumerate(alg.basis_names):
        a, b = int(name[1]) - 1, int(name[2]) - 1
        mat[i, i] = (signs[a] * signs[b]) % p
    grp = cyclic_group(2)
    return GroupAction.build(alg, grp, [np.eye(alg.dim, dtype=np.int64), mat])


@dataclass(frozen=True)
class QuiverSpec:
    vertices: int
    arrows: tuple[tuple[int, int, int], ...]  # (source, target, grade label)
    truncation: int
    include_vertex_idempotents: bool = True


@dataclass
class PathAlgebra:
    """A truncated path algebra with its basis bookkeeping.

    ``basis[i]`` is ``("v", u)`` for the idempotent at u or ``("p", arrows)``
    for a path, arrows read left to right.
    """

    quiver: QuiverSpec
    group: FiniteGroup
    algebra: Algebra
    basis: list[tuple]
    grading: Grading
    suggested_ideal: object = None
    meta: dict = field(default_factory=dict)

    def path_length(self, i: int) -> int:
        kind, val = self.basis[i]
        return 0 if kind == "v" else len(val)

    def arrow_ideal(self):
        return self.algebra.span([self.algebra.unit_vector(i) for i in range(self.algebra.dim) if self.path_length(i) > 0])


def _enumerate_paths(q: QuiverSpec) -> list[tuple[int, ...]]:
    out = []
    frontier = [(a,) for a in range(len(q.arrows))]
    length = 1
    while frontier and length < q.truncation:
        out.extend(frontier)
        frontier = [pth + (a,) for pth in frontier for a in range(len(q.arrows)) if q.arrows[pth[-1]][1] == q.arrows[a][0]]
        length += 1
    return out


def gen_path_algebra(q: QuiverSpec, group: FiniteGroup, p: int) -> PathAlgebra:
    """Paths of length 1..L-1 (plus vertex idempotents if requested);
    products concatenate and vanish past the truncation length L."""
    if q.truncation < 1:
        raise ValueError("truncation length must be at least 1")
    for s, t, lab in q.arrows:
        if not (0 <= s < q.vertices and 0 <= t < q.vertices and 0 <= lab < group.order):
            raise ValueError(f"invalid arrow {(s, t, lab)}")
    basis: list[tuple] = []
    if q.include_vertex_idempotents:
        basis.extend(("v", u) for u in range(q.vertices))
    basis.extend(("p", pth) for pth in _enumerate_paths(q))
    index = {b: i for i, b in enumerate(basis)}

    def src(b):
        return b[1] if b[0] == "v" else q.arrows[b[1][0]][0]

    def tgt(b):
        return b[1] if b[0] == "v" else q.arrows[b[1][-1]][1]

    prods = []
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if tgt(x) != src(y):
                continue
            if x[0] == "v":
                prods.append((i, j, j, 1))
            elif y[0] == "v":
                prods.append((i, j, i, 1))
            else:
                z = ("p", x[1] + y[1])
                if z in index:
                    prods.append((i, j, index[z], 1))

    def name(b):
        return f"v{b[1]}" if b[0] == "v" else "a" + ".".join(map(str, b[1]))

    alg = Algebra.from_products(p, len(basis), prods, [name(b) for b in basis])
    labels = [group.identity if b[0] == "v" else group.prod(q.arrows[a][2] for a in b[1]) for b in basis]
    grading = Grading.from_labels(alg, group, labels)
    ie = alg.span([alg.unit_vector(i) for i, b in enumerate(basis) if b[0] == "p" and labels[i] == group.identity])
    return PathAlgebra(q, group, alg, basis, grading, ie)


def path_character_matrix(pa: PathAlgebra, scalars: Sequence[int]) -> np.ndarray:
    """Diagonal automorphism scaling each arrow a by ``scalars[a]``."""
    p = pa.algebra.p
    diag = []
    for kind, val in pa.basis:
        c = 1
        if kind == "p":
            for a in val:
                c = c * scalars[a] % p
        diag.append(c)
    return np.diag(diag).astype(np.int64)


def gen_action_from_scaling(pa: PathAlgebra, character: Sequence[int]) -> GroupAction:
    """Cyclic group generated by the arrow scaling ``character``."""
    p = pa.algebra.p
    orders = []
    for c in character:
        c %= p
        if c == 0:
            raise ValueError("scalars must be nonzero roots of unity")
        k, x = 1, c
        while x != 1:
            x = x * c % p
            k += 1
        orders.append(k)
    r = lcm(*orders) if orders else 1
    gen = path_character_matrix(pa, character)
    mats, cur = [], np.eye(pa.algebra.dim, dtype=np.int64)
    for _ in range(r):
        mats.append(cur)
        cur = (cur @ gen) % p
    return GroupAction.build(pa.algebra, cyclic_group(r), mats)


def gen_action_from_permutation(
    pa: PathAlgebra,
    group: FiniteGroup,
    vertex_perm: Sequence[Sequence[int]],
    arrow_perm: Sequence[Sequence[int]],
    length_character: Optional[Sequence[int]] = None,
) -> GroupAction:
    """Action by quiver symmetries: ``g`` sends vertex u to ``vertex_perm[g][u]``
    and arrow a to ``arrow_perm[g][a]``; a path of length k is further scaled
    by ``length_character[g] ** k`` when given."""
    alg, p = pa.algebra, pa.algebra.p
    index = {b: i for i, b in enumerate(pa.basis)}
    mats = []
    for g in group.elements():
        m = np.zeros((alg.dim, alg.dim), dtype=np.int64)
        chi = 1 if length_character is None else length_character[g]
        for i, (kind, val) in enumerate(pa.basis):
            if kind == "v":
                m[index[("v", vertex_perm[g][val])], i] = 1
            else:
                img = ("p", tuple(arrow_perm[g][a] for a in val))
                m[index[img], i] = pow(chi, len(val), p)
        mats.append(m)
    return GroupAction.build(alg, group, mats)


def cayley_quiver(group: FiniteGroup, connections: Sequence[int], truncation: int, idempotents: bool,
                  copies: int = 1) -> tuple[QuiverSpec, list[list[int]], list[list[int]]]:
    """Quiver on the group elements with arrows x -> x*s for s in ``connections``;
    returns it with the vertex and arrow permutations of left multiplication."""
    arrows, key = [], {}
    for x in group.elements():
        for s in connections:
            for c in range(copies):
                key[(x, s, c)] = len(arrows)
                arrows.append((x, group.mul(x, s), 0))
    q = QuiverSpec(group.order, tuple(arrows), truncation, idempotents)
    vperm = [[group.mul(g, x) for x in group.elements()] for g in group.elements()]
    aperm = [[key[(group.mul(g, x), s, c)] for (x, s, c) in key] for g in group.elements()]
    return q, vperm, aperm


def _random_quiver(rng, group: FiniteGroup, vertices: int, arrows: int, truncation: int,
                   idempotents: bool, label_pool: Optional[Sequence[int]] = None) -> QuiverSpec:
    labels = list(group.elements()) if label_pool is None else list(label_pool)
    arr = tuple(
        (int(rng.integers(vertices)), int(rng.integers(vertices)), int(labels[int(rng.integers(len(labels)))]))
        for _ in range(arrows)
    )
    return QuiverSpec(vertices, arr, truncation, idempotents)


def _fit(rng, group, p, vertices, arrows, truncation, idempotents, max_dim, label_pool=None) -> PathAlgebra:
    q = _random_quiver(rng, group, vertices, arrows, truncation, idempotents, label_pool)
    while True:
        dim = len(_enumerate_paths(q)) + (q.vertices if q.include_vertex_idempotents else 0)
        if dim <= max_dim:
            return gen_path_algebra(q, group, p)
        if q.truncation > 2:
            q = QuiverSpec(q.vertices, q.arrows, q.truncation - 1, q.include_vertex_idempotents)
        else:
            q = QuiverSpec(q.vertices, q.arrows[:-1], q.truncation, q.include_vertex_idempotents)


def ideal_with_index_at_most(alg: Algebra, ideal, d_max: int):
    """Smallest power of ``ideal`` whose nilpotency index is at most ``d_max``."""
    cur, k = ideal, 1
    while True:
        d = alg.nilpotency_index(cur)
        if d is not None and d <= d_max:
            return cur
        k += 1
        cur = alg.power(ideal, k)


def gen_random_graded(seed: int, group: Optional[FiniteGroup] = None, p: Optional[int] = None,
                      max_dim: int = 40, idempotents: Optional[bool] = None, d_max: Optional[int] = None,
                      ideal: str = "suggested") -> Instance:
    """Random graded path algebra with a hypothesis ideal.

    ``ideal`` is "suggested" (grade-e paths, cut down to index ``d_max``),
    "zero", or "full" (all of A_e; only nilpotent without idempotents).
    """
    rng = np.random.default_rng(seed)
    group = group or cyclic_group(2)
    p = p or default_prime(group.order)
    if idempotents is None:
        idempotents = bool(rng.integers(2))
    vertices = int(rng.integers(1, 5))
    arrows = int(rng.integers(1, 7))
    truncation = int(rng.integers(2, 6))
    pa = _fit(rng, group, p, vertices, arrows, truncation, idempotents, max_dim)
    alg = pa.algebra
    if ideal == "zero":
        ie = alg.zero_space()
    elif ideal == "full":
        ie = pa.grading.identity_component
    else:
        ie = pa.suggested_ideal
    if d_max is not None and ideal != "zero":
        ie = ideal_with_index_at_most(alg, ie, d_max)
    return Instance(alg, group=group, grading=pa.grading, ideal=ie,
                    meta={"family": "random-graded", "seed": seed, "quiver": _quiver_meta(pa.quiver)})


def _quiver_meta(q: QuiverSpec) -> dict:
    return {"vertices": q.vertices, "arrows": [list(a) for a in q.arrows], "truncation": q.truncation,
            "idempotents": q.include_vertex_idempotents}


def gen_random_scaling(seed: int, order: int, p: Optional[int] = None, max_dim: int = 40,
                       idempotents: Optional[bool] = None, ideal: str = "arrows") -> Instance:
    """Random path algebra with C_order acting by arrow scalings.

    ``ideal`` is "arrows" (fixed part of the arrow ideal), "zero", or "fixed"
    (all fixed points; nilpotent only without idempotents).
    """
    rng = np.random.default_rng(seed)
    grp = cyclic_group(order)
    p = p or default_prime(order, exponent=order)
    fld = FieldSpec(p)
    omega = fld.root_of_unity(order) if order > 1 else 1
    if idempotents is None:
        idempotents = bool(rng.integers(2))
    pa = _fit(rng, grp, p, int(rng.integers(1, 5)), int(rng.integers(1, 7)), int(rng.integers(2, 6)),
              idempotents, max_dim)
    # exponent of the scaling per arrow; include a generator so the action is faithful
    expo = [int(rng.integers(order)) for _ in pa.quiver.arrows]
    if expo and order > 1:
        expo[0] = 1
    chars = [pow(omega, k, p) for k in expo]
    gen = path_character_matrix(pa, chars)
    mats, cur = [], np.eye(pa.algebra.dim, dtype=np.int64)
    for _ in range(order):
        mats.append(cur)
        cur = (cur @ gen) % p
    action = GroupAction.build(pa.algebra, grp, mats)
    return _action_instance(pa, action, ideal, {"family": "random-scaling", "seed": seed, "order": order})


def _action_instance(pa: PathAlgebra, action: GroupAction, ideal: str, meta: dict) -> Instance:
    alg = pa.algebra
    fixed = fixed_subalgebra(alg, action)
    if ideal == "zero":
        i = alg.zero_space()
    elif ideal == "fixed":
        i = fixed
    else:
        i = fixed & pa.arrow_ideal()
    meta = dict(meta, quiver=_quiver_meta(pa.quiver))
    series = find_prime_series(action.group)
    return Instance(alg, group=action.group, action=action, ideal=i, series=series, meta=meta)


def gen_cayley_action(seed: int, group: FiniteGroup, p: Optional[int] = None, max_dim: int = 40,
                      idempotents: Optional[bool] = None, ideal: str = "arrows",
                      signed: bool = False) -> Instance:
    """Path algebra of a Cayley quiver of ``group`` with the group acting by
    left translation (optionally twisted by a sign on path length)."""
    rng = np.random.default_rng(seed)
    p = p or default_prime(group.order)
    if idempotents is None:
        idempotents = bool(rng.integers(2))
    nconn = int(rng.integers(1, 3))
    conns = sorted({int(x) for x in rng.integers(group.order, size=nconn)})
    truncation = int(rng.integers(2, 5))
    while True:
        q, vperm, aperm = cayley_quiver(group, conns, truncation, idempotents)
        dim = len(_enumerate_paths(q)) + (q.vertices if idempotents else 0)
        if dim <= max_dim or truncation == 2:
            break
        truncation -= 1
    if dim > max_dim:
        conns = conns[:1]
        q, vperm, aperm = cayley_quiver(group, conns, 2, idempotents)
    pa = gen_path_algebra(q, _trivial_group(), p)
    chi = None
    if signed:
        chi = _sign_character(group, p)
    action = gen_action_from_permutation(pa, group, vperm, aperm, chi)
    return _action_instance(pa, action, ideal, {"family": "cayley-action", "seed": seed, "order": group.order,
                                                  "connections": conns, "signed": signed})


def _trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def _sign_character(group: FiniteGroup, p: int) -> list[int]:
    """A homomorphism G -> {+1, -1}: -1 off the (lexicographically least)
    index-2 subgroup, or trivial if there is none."""
    from .groups import _normal_subgroups

    whole = frozenset(group.elements())
    for h in sorted(_normal_subgroups(group, whole), key=lambda s: tuple(sorted(s))):
        if 2 * len(h) == group.order:
            return [1 if g in h else p - 1 for g in group.elements()]
    return [1] * group.order


FAMILIES = ("triangular", "matrix", "path", "random-graded", "random-scaling", "cayley-action")


def generate(family: str, seed: int = 0, **params) -> Instance:
    """Entry point used by the command line."""
    if family == "triangular":
        return gen_triangular(params.get("k", 3), params.get("strict", True), params.get("p") or 5,
                              params.get("graded", True))
    if family == "matrix":
        return gen_matrix_algebra(params.get("k", 2), params.get("p") or 5)
    if family == "path":
        grp = cyclic_group(params.get("order", 2))
        q = QuiverSpec(params["vertices"], tuple(tuple(a) for a in params["arrows"]), params["truncation"],
                       params.get("idempotents", True))
        pa = gen_path_algebra(q, grp, params.get("p") or default_prime(grp.order))
        return Instance(pa.algebra, group=grp, grading=pa.grading, ideal=pa.suggested_ideal,
                        meta={"family": "path", "quiver": _quiver_meta(q)})
    if family == "random-graded":
        grp = _group_by_name(params.get("group", "C2"))
        return gen_random_graded(seed, grp, params.get("p"), params.get("max_dim", 40), params.get("idempotents"),
                                 params.get("d_max"), params.get("ideal", "suggested"))
    if family == "random-scaling":
        return gen_random_scaling(seed, params.get("order", 2), params.get("p"), params.get("max_dim", 40),
                                  params.get("idempotents"), params.get("ideal", "arrows"))
    if family == "cayley-action":
        grp = _group_by_name(params.get("group", "S3"))
        return gen_cayley_action(seed, grp, params.get("p"), params.get("max_dim", 40), params.get("idempotents"),
                                 params.get("ideal", "arrows"), params.get("signed", False))
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _group_by_name(name: str) -> FiniteGroup:
    if name.upper().startswith("C"):
        return cyclic_group(int(name[1:]))
    if name.upper().startswith("S"):
        return symmetric_group(int(name[1:]))
    raise ValueError(f"unknown group {name!r} (use Cn or Sn)")


def validate_instance(inst: Instance) -> bool:
    ok = not inst.algebra.validate_associativity()
    if inst.grading is not None:
        ok &= validate_grading(inst.algebra, inst.grading).ok
    if inst.action is not None:
        ok &= validate_action(inst.algebra, inst.action).ok
    return ok


__all__ = [
    "QuiverSpec", "PathAlgebra", "gen_triangular", "gen_matrix_algebra", "gen_path_algebra",
    "gen_action_from_scaling", "gen_action_from_permutation", "gen_random_graded", "gen_random_scaling",
    "gen_cayley_action", "default_prime", "generate", "validate_instance",
]
