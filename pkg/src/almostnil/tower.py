"""Generalized centralizers of a graded algebra.

For each non-identity grade g the tower holds a descending chain of
subspaces ``A_g(0) >= A_g(1) >= ... >= A_g(N)`` together with the
representatives fixed at each level. Level s is cut out by requiring
``L * y * R`` to lie in ``I_e`` for every product ``L`` (left) and ``R``
(right) of representatives of lower levels whose grades close up to the
identity and whose total length is at most ``W_s``.

Those constraints are linear in L and in R separately, so instead of
enumerating tuples we track the span of all products of exactly t
representatives in each grade (:class:`ProductSpanTable`). The literal
enumeration survives as :func:`brute_force_level`, used to cross-check.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Optional

import numpy as np

from .algebra import Algebra
from .gradings import GradedHypotheses
from .checks import CheckList
from .linalg import Subspace, kernel, quotient_data, quotient_map, span, sum_, sum_all

KINDS = ("x_identity", "x_pair", "b")


@dataclass(frozen=True)
class BoundSet:
    n: int
    d: int
    N: int
    W: tuple[int, ...]  # W[s-1] = W_s for s = 1..N
    H: int
    T: int
    S: int
    U: int
    Q: int
    Q_short: int
    nd: int
    h: int
    bergman: int
    nQ: int

    def W_at(self, s: int) -> int:
        return self.W[s - 1]

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in ("n", "d", "nd", "h", "bergman", "N", "H", "T", "S", "U", "Q", "Q_short", "nQ")}
        out["W"] = list(self.W)
        return out


def bergman_isaacs_h(n: int) -> int:
    prod = 1
    for i in range(n + 1):
        prod *= comb(n, i) + 1
    return 1 + prod


def bounds_for(n: int, d: int) -> BoundSet:
    """All numeric constants of the construction for a group of order n and
    ideal index d. ``Q`` is the larger of the two readings, (U+d+1)(S-1)+1."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    N = d * d + 3
    W = tuple(2 * d**3 * (n - 1) + 1 + s for s in range(1, N + 1))
    H = d * d + 1
    T = d * (H - 1) + 1
    S = (T - 1) * (n - 1) + 1
    U = d * (n - 1)
    Q = (U + d + 1) * (S - 1) + 1
    h = bergman_isaacs_h(n)
    return BoundSet(
        n=n, d=d, N=N, W=W, H=H, T=T, S=S, U=U, Q=Q,
        Q_short=(U + 1) * (S - 1) + 1, nd=n * d, h=h, bergman=h**d, nQ=n * Q,
    )


@dataclass(frozen=True, eq=False)
class Representative:
    element: np.ndarray
    grade: int
    level: int
    kind: str

    def to_dict(self) -> dict:
        return {"element": self.element.tolist(), "grade": self.grade, "level": self.level, "kind": self.kind}


@dataclass
class Level:
    s: int
    W: int
    centralizers: dict[int, Subspace]
    reps: list[Representative]
    # for each pattern (g, g^-1): span of the chosen products x_g(s) x_{g^-1}(s)
    pair_spans: dict[int, Subspace] = field(default_factory=dict)


class ProductSpanTable:
    """``spans[t][h]``: span of all products of exactly t pool elements whose
    grades multiply to h, for 1 <= t <= W. Length 0 is the formal unit."""

    def __init__(self, alg: Algebra, group, pool: list[Representative], W: int):
        self.alg, self.group, self.W = alg, group, W
        n, dim, p = group.order, alg.dim, alg.p
        by_grade = [[] for _ in range(n)]
        for r in pool:
            by_grade[r.grade].append(r.element)
        self.generators = [span(np.array(v), dim, p) if v else alg.zero_space() for v in by_grade]
        self.spans: list[Optional[list[Subspace]]] = [None]
        if W >= 1:
            self.spans.append(list(self.generators))
        seen = {self._state_key(1): 1} if W >= 1 else {}
        t = 2
        while t <= W:
            prev = self.spans[t - 1]
            row = []
            for h in range(n):
                parts = []
                for h1 in range(n):
                    h2 = group.mul(group.inv(h1), h)
                    parts.append(alg.subspace_product(prev[h1], self.generators[h2]))
                row.append(sum_all(parts, dim, p))
            self.spans.append(row)
            key = self._state_key(t)
            if key in seen:
                # the sequence of rows is periodic from here on
                start = seen[key]
                period = t - start
                for u in range(t + 1, W + 1):
                    self.spans.append(self.spans[u - period])
                break
            seen[key] = t
            t += 1
        self._cumulative: dict[tuple[int, int], Subspace] = {}

    def _state_key(self, t: int) -> tuple[bytes, ...]:
        return tuple(s.key() for s in self.spans[t])

    def __getitem__(self, key: tuple[int, int]) -> Subspace:
        h, t = key
        return self.spans[t][h]

    def cumulative(self, h: int, k: int) -> Subspace:
        """Sum of ``spans[t][h]`` over 1 <= t <= k."""
        k = min(k, self.W)
        if k <= 0:
            return self.alg.zero_space()
        hit = self._cumulative.get((h, k))
        if hit is None:
            hit = self.spans[1][h] if k == 1 else self.cumulative(h, k - 1) + self.spans[k][h]
            self._cumulative[(h, k)] = hit
        return hit


def product_span_table(alg: Algebra, group, pool: list[Representative], W: int) -> ProductSpanTable:
    return ProductSpanTable(alg, group, pool, W)


def left_constraint(alg: Algebra, proj: np.ndarray, left: Subspace, unit: bool) -> np.ndarray:
    """Stack of ``proj @ (l * -)`` over the basis l of ``left`` (and the unit)."""
    d, m = alg.dim, proj.shape[0]
    blocks = []
    if unit:
        blocks.append(proj.reshape(1, m, d))
    if left.dim:
        t = (left.basis @ alg.constants.reshape(d, d * d)) % alg.p  # [l, j*d + k]
        t = t.reshape(left.dim, d, d) @ proj.T % alg.p  # [l, j, c]
        blocks.append(t.transpose(0, 2, 1))
    if not blocks:
        return np.zeros((0, d), dtype=np.int64)
    return np.concatenate(blocks).reshape(-1, d)


def theta_kernel(
    alg: Algebra,
    proj: np.ndarray,
    target: Subspace,
    left: Subspace,
    right: Subspace,
    left_unit: bool = False,
    right_unit: bool = False,
    left_rows: Optional[np.ndarray] = None,
) -> Subspace:
    """``{y in target : l*y*r in I_e for all l in left, r in right}``.

    ``proj`` has kernel I_e on A_e. A side flagged as unit also includes the
    empty product. ``left_rows`` may carry a precomputed :func:`left_constraint`.
    """
    if not target.dim or proj.shape[0] == 0:
        return target
    p, d = alg.p, alg.dim
    y = target.basis
    k = y.shape[0]
    parts = []
    if right_unit:
        parts.append(y.reshape(k, 1, d))
    if right.dim:
        parts.append(alg.pair_products(y, right.basis))
    if not parts:
        return target
    v = np.concatenate(parts, axis=1)  # [j, r, :]
    nr = v.shape[1]
    lrows = left_constraint(alg, proj, left, left_unit) if left_rows is None else left_rows
    if not lrows.shape[0]:
        return target
    t = (lrows @ v.reshape(-1, d).T) % p  # [(l, c), (j, r)]
    cons = t.reshape(-1, k, nr).transpose(0, 2, 1).reshape(-1, k)
    ker = kernel(cons, p, k)
    if ker.dim == k:
        return target
    return span((ker.basis @ y) % p, d, p) if ker.dim else alg.zero_space()


def _select_pairs(alg: Algebra, proj: np.ndarray, xs: Subspace, ys: Subspace):
    """Greedy choice, in lexicographic order of basis pairs, of products
    ``x*y`` whose images modulo I_e form a basis of the span of all such images."""
    if not xs.dim or not ys.dim or proj.shape[0] == 0:
        return [], alg.zero_space()
    prods = alg.pair_products(xs.basis, ys.basis)
    images = (prods.reshape(-1, alg.dim) @ proj.T) % alg.p
    m = proj.shape[0]
    target_rank = span(images, m, alg.p).dim
    chosen, cur = [], span(np.zeros((0, m), dtype=np.int64), m, alg.p)
    for idx, img in enumerate(images):
        if len(chosen) == target_rank:
            break
        if img.any() and not cur.member(img):
            cur = cur + span(img.reshape(1, -1), m, alg.p)
            chosen.append(divmod(idx, ys.dim))
    pair_span = alg.span(np.array([prods[a, b] for a, b in chosen])) if chosen else alg.zero_space()
    return [(xs.basis[a].copy(), ys.basis[b].copy()) for a, b in chosen], pair_span


@dataclass
class CentralizerTower:
    hyp: GradedHypotheses
    N: int
    levels: list[Level]
    proj: np.ndarray
    W_override: Optional[int] = None

    @property
    def algebra(self) -> Algebra:
        return self.hyp.algebra

    @property
    def group(self):
        return self.hyp.grading.group

    def nonidentity(self) -> list[int]:
        e = self.group.identity
        return [g for g in self.group.elements() if g != e]

    def A(self, g: int, s: int) -> Subspace:
        if g == self.group.identity:
            raise KeyError("centralizers exist only for non-identity grades")
        return self.levels[s].centralizers[g]

    def pool(self, below: int) -> list[Representative]:
        return [r for lvl in self.levels[:below] for r in lvl.reps]

    def summary(self) -> list[dict]:
        return [
            {
                "level": lvl.s,
                "W": lvl.W,
                "dims": {str(g): c.dim for g, c in lvl.centralizers.items()},
                "reps": {k: sum(r.kind == k for r in lvl.reps) for k in KINDS},
            }
            for lvl in self.levels
        ]

    def dump(self) -> list[dict]:
        out = []
        for lvl in self.levels:
            out.append({
                "level": lvl.s,
                "W": lvl.W,
                "centralizers": {str(g): {"dim": c.dim, "basis": c.basis.tolist()} for g, c in lvl.centralizers.items()},
                "representatives": [r.to_dict() for r in lvl.reps],
            })
        return out


def _pair_reps(alg, proj, grp, cents: dict[int, Subspace], s: int):
    reps, spans = [], {}
    for g in sorted(cents):
        pairs, spans[g] = _select_pairs(alg, proj, cents[g], cents[grp.inv(g)])
        for x, y in pairs:
            reps.append(Representative(x, g, s, "x_pair"))
            reps.append(Representative(y, grp.inv(g), s, "x_pair"))
    return reps, spans


def level_zero(hyp: GradedHypotheses) -> tuple[Level, np.ndarray]:
    """Level 0 and the projection of A_e onto A_e/I_e."""
    alg, grp = hyp.algebra, hyp.grading.group
    ae, ie = hyp.identity_component, hyp.ideal.carrier
    proj, comp = quotient_map(ae, ie)
    reps = [Representative(row.copy(), grp.identity, 0, "x_identity") for row in comp]
    cents = {g: hyp.grading[g] for g in grp.elements() if g != grp.identity}
    pair_reps, spans = _pair_reps(alg, proj, grp, cents, 0)
    return Level(0, 0, cents, reps + pair_reps, spans), proj


def kernel_stage(tower: CentralizerTower, s: int, W: int) -> dict[int, Subspace]:
    """``A_g(s)`` for all non-identity g from the representatives of levels < s."""
    alg, grp = tower.algebra, tower.group
    e = grp.identity
    table = ProductSpanTable(alg, grp, tower.pool(s), W)
    left_cache: dict[tuple[bytes, bool], np.ndarray] = {}
    out = {}
    for g in tower.nonidentity():
        cur = tower.hyp.grading[g]
        done = set()
        for h1 in grp.elements():
            h2 = grp.inv(grp.mul(h1, g))
            for b in range(W + 1):
                if b == 0 and h2 != e:
                    continue
                left = table.cumulative(h1, W - b)
                right = table[h2, b] if b else alg.zero_space()
                lu, ru = h1 == e, b == 0
                key = (left.key(), lu, right.key(), ru)
                if key in done or (not left.dim and not lu) or (b and not right.dim):
                    continue
                done.add(key)
                lk = (left.key(), lu)
                if lk not in left_cache:
                    left_cache[lk] = left_constraint(alg, tower.proj, left, lu)
                cur = theta_kernel(alg, tower.proj, cur, left, right, lu, ru, left_rows=left_cache[lk])
                if not cur.dim:
                    break
            if not cur.dim:
                break
        out[g] = cur
    return out


def next_level(tower: CentralizerTower, s: int, W: Optional[int] = None) -> Level:
    alg, grp = tower.algebra, tower.group
    if W is None:
        W = tower.W_override if tower.W_override is not None else bounds_for(tower.hyp.n, tower.hyp.d).W_at(s)
    cents = kernel_stage(tower, s, W)
    reps = []
    for g in sorted(cents):
        _, comp = quotient_data(tower.hyp.grading[g], cents[g])
        reps.extend(Representative(row.copy(), g, s, "b") for row in comp)
    pair_reps, spans = _pair_reps(alg, tower.proj, grp, cents, s)
    return Level(s, W, cents, reps + pair_reps, spans)


def build_tower(hyp: GradedHypotheses, N_override: Optional[int] = None, W_override: Optional[int] = None) -> CentralizerTower:
    N = bounds_for(hyp.n, hyp.d).N if N_override is None else N_override
    lvl0, proj = level_zero(hyp)
    tower = CentralizerTower(hyp, N, [lvl0], proj, W_override)
    for s in range(1, N + 1):
        tower.levels.append(next_level(tower, s))
    return tower


class BudgetExceeded(RuntimeError):
    pass


def _distinct(pool: list[Representative]) -> list[Representative]:
    seen, out = set(), []
    for r in pool:
        key = (r.grade, r.element.tobytes())
        if key not in seen:
            seen.add(key)
            out.append(r)
    return out


def enumerate_insertions(group, pool: list[Representative], g: int, W: int) -> Iterator[tuple[tuple, int]]:
    """All ``(tuple, l)`` with tuple a sequence of pool elements of length
    1..W and 0 <= l <= len(tuple) such that inserting grade g before position
    l gives grade product e."""
    for k in range(1, W + 1):
        for tup in itertools.product(pool, repeat=k):
            grades = [r.grade for r in tup]
            for l in range(k + 1):
                if group.prod(grades[:l] + [g] + grades[l:]) == group.identity:
                    yield tup, l


def brute_force_level(tower: CentralizerTower, s: int, W: int, budget: int = 2_000_000) -> dict[int, Subspace]:
    """Centralizers of level s by literal enumeration of representative tuples."""
    if W > 4:
        raise BudgetExceeded("brute force is limited to W <= 4")
    alg, grp, proj = tower.algebra, tower.group, tower.proj
    pool = _distinct(tower.pool(s))
    if sum(len(pool) ** k for k in range(1, W + 1)) > budget:
        raise BudgetExceeded(f"{len(pool)} representatives with W={W}")
    out = {}
    for g in tower.nonidentity():
        ag = tower.hyp.grading[g]
        if not ag.dim or proj.shape[0] == 0:
            out[g] = ag
            continue
        rows = []
        for tup, l in enumerate_insertions(grp, pool, g, W):
            vals = []
            for y in ag.basis:
                prod = None
                for r in tup[:l]:
                    prod = r.element if prod is None else alg.multiply(prod, r.element)
                prod = y if prod is None else alg.multiply(prod, y)
                for r in tup[l:]:
                    prod = alg.multiply(prod, r.element)
                vals.append(proj @ prod % alg.p)
            rows.append(np.array(vals).T)
        if not rows:
            out[g] = ag
            continue
        ker = kernel(np.vstack(rows), alg.p, ag.dim)
        out[g] = span((ker.basis @ ag.basis) % alg.p, alg.dim, alg.p) if ker.dim else alg.zero_space()
    return out


def _literal_product(alg: Algebra, factors) -> np.ndarray:
    out = factors[0]
    for f in factors[1:]:
        out = alg.multiply(out, f)
    return out


def sample_insertions(tower: CentralizerTower, samples: int, rng: np.random.Generator, max_tries: int = 20):
    """Random tuples of lower-level representatives with a random centralizer
    inserted; returns ``(number checked, first failure or None)``."""
    alg, grp, proj = tower.algebra, tower.group, tower.proj
    checked = 0
    nonid = tower.nonidentity()
    if not nonid or tower.N < 1 or proj.shape[0] == 0:
        return 0, None
    for _ in range(samples):
        for _ in range(max_tries):
            s = int(rng.integers(1, tower.N + 1))
            pool = tower.pool(s)
            if not pool:
                continue
            g = nonid[int(rng.integers(len(nonid)))]
            cent = tower.A(g, s)
            W = tower.levels[s].W
            k = int(rng.integers(1, W + 1))
            tup = [pool[int(i)] for i in rng.integers(len(pool), size=k)]
            grades = [r.grade for r in tup]
            spots = [l for l in range(k + 1) if grp.prod(grades[:l] + [g] + grades[l:]) == grp.identity]
            if not spots:
                continue
            l = spots[int(rng.integers(len(spots)))]
            coeffs = rng.integers(alg.p, size=cent.dim)
            y = (coeffs @ cent.basis) % alg.p if cent.dim else np.zeros(alg.dim, dtype=np.int64)
            val = _literal_product(alg, [r.element for r in tup[:l]] + [y] + [r.element for r in tup[l:]])
            checked += 1
            if (proj @ val % alg.p).any():
                return checked, {"level": s, "grade": g, "position": l,
                                 "grades": grades, "y": y.tolist()}
            break
    return checked, None


def check_tower(tower: CentralizerTower, samples: int = 1000, seed: int = 0) -> CheckList:
    alg, grp, hyp = tower.algebra, tower.group, tower.hyp
    ie = hyp.ideal.carrier
    n, m = hyp.n, hyp.m
    checks = CheckList()
    nonid = tower.nonidentity()

    bad = [(g, k) for g in nonid for k in range(tower.N) if not tower.A(g, k).contains(tower.A(g, k + 1))]
    checks.add("centralizer chain descends", not bad, bad[:1])

    lvl0 = tower.levels[0].reps
    checks.add("level-0 representative count <= 2(n-1)m + m", len(lvl0) <= 2 * (n - 1) * m + m, len(lvl0))
    over = [(lvl.s, sum(r.kind == "x_pair" for r in lvl.reps)) for lvl in tower.levels[1:]
            if sum(r.kind == "x_pair" for r in lvl.reps) > 2 * (n - 1) * m]
    checks.add("x-representatives per level <= 2(n-1)m", not over, over[:1])

    checked, fail = sample_insertions(tower, samples, np.random.default_rng(seed))
    c = checks.add("sampled insertions into centralizers land in I_e", fail is None, fail)
    c.witness = c.witness if fail else {"sampled": checked}

    if tower.W_override is None:
        # y_g(l+1) b_h(l) and b_h(l) y_g(l+1) are centralizers of level l
        bad = None
        for l in range(1, tower.N):
            bspans = {h: alg.span([r.element for r in tower.levels[l].reps if r.kind == "b" and r.grade == h])
                      for h in nonid}
            for g in nonid:
                for h in nonid:
                    gh, hg = grp.mul(g, h), grp.mul(h, g)
                    if gh == grp.identity or not bspans[h].dim:
                        continue
                    ok = tower.A(gh, l).contains(alg.subspace_product(tower.A(g, l + 1), bspans[h])) and \
                        tower.A(hg, l).contains(alg.subspace_product(bspans[h], tower.A(g, l + 1)))
                    if not ok:
                        bad = {"level": l, "g": g, "h": h}
                        break
                if bad:
                    break
            if bad:
                break
        checks.add("products with b-representatives drop one level", bad is None, bad)

    # a_{g^-1} y_g(k+1) = y_{g^-1}(k) y_g(k) mod I_e, and symmetrically
    bad = None
    for k in range(tower.N):
        for g in nonid:
            gi = grp.inv(g)
            lhs = alg.subspace_product(hyp.grading[gi], tower.A(g, k + 1))
            rhs = sum_(alg.subspace_product(tower.A(gi, k), tower.A(g, k)), ie)
            lhs2 = alg.subspace_product(tower.A(g, k + 1), hyp.grading[gi])
            rhs2 = sum_(alg.subspace_product(tower.A(g, k), tower.A(gi, k)), ie)
            if not (rhs.contains(lhs) and rhs2.contains(lhs2)):
                bad = {"level": k, "g": g}
                break
        if bad:
            break
    checks.add("one-sided products with centralizers descend a level mod I_e", bad is None, bad)

    # representatives reproduce A_e and pair products modulo I_e
    x_e = alg.span([r.element for r in lvl0 if r.kind == "x_identity"])
    checks.add("x_e(0) spans A_e modulo I_e", sum_(x_e, ie).contains(hyp.identity_component))
    bad = None
    for lvl in tower.levels:
        for g in nonid:
            prods = alg.subspace_product(tower.A(g, lvl.s), tower.A(grp.inv(g), lvl.s))
            if not sum_(lvl.pair_spans[g], ie).contains(prods):
                bad = {"level": lvl.s, "g": g}
                break
        if bad:
            break
    checks.add("chosen pair products span A_g(s) A_g^-1(s) modulo I_e", bad is None, bad)
    return checks
