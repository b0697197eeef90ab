"""Exact linear algebra over prime fields.

Vectors and matrices are ``numpy`` int64 arrays holding canonical residues
``0..p-1``. A :class:`Subspace` is stored by its reduced row-echelon basis,
so two subspaces are equal exactly when their arrays are equal.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# keeps p**2 * (inner dimension) inside int64 for every dense product below
MAX_PRIME = 1 << 20


class DimensionError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.p >= MAX_PRIME:
            raise ValueError(f"characteristic {self.p} exceeds {MAX_PRIME}")

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, -1, self.p)

    def has_root_of_unity(self, q: int) -> bool:
        return (self.p - 1) % q == 0

    def root_of_unity(self, q: int) -> int:
        """Smallest primitive q-th root of unity in F_p."""
        if not self.has_root_of_unity(q):
            raise ValueError(f"F_{self.p} has no primitive {q}-th root of unity")
        for x in range(1, self.p):
            if pow(x, q, self.p) == 1 and all(pow(x, q // r, self.p) != 1 for r in prime_factors(q)):
                return x
        raise AssertionError("unreachable")  # pragma: no cover


def as_matrix(m, p: int, cols: int | None = None) -> np.ndarray:
    a = np.asarray(m, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, cols if cols is not None else (a.shape[1] if a.ndim == 2 else 0)), dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a % p


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def rref(m, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form mod p with zero rows dropped, plus pivot columns."""
    a = np.array(m, dtype=np.int64, copy=True)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    a %= p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m, p: int) -> int:
    return len(rref(m, p)[1])


def inverse(m, p: int) -> np.ndarray:
    a = as_matrix(m, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise DimensionError("inverse of a non-square matrix")
    r, piv = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of F_p^ambient in canonical RREF form."""

    p: int
    ambient: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient == other.ambient
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.p, self.ambient, self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(p={self.p}, ambient={self.ambient}, basis={self.basis.tolist()})"

    def key(self) -> bytes:
        return self.basis.tobytes()

    def is_zero(self) -> bool:
        return self.dim == 0

    def residual(self, vectors: np.ndarray) -> np.ndarray:
        """Reduce rows of ``vectors`` modulo this subspace (zero rows iff members)."""
        v = as_matrix(vectors, self.p, self.ambient)
        if not self.dim:
            return v
        return (v - v[:, list(self.pivots)] @ self.basis) % self.p

    def member(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if v.shape[-1] != self.ambient:
            raise DimensionError(f"vector length {v.shape[-1]} != ambient {self.ambient}")
        return not self.residual(v).any()

    def contains(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return not self.residual(other.basis).any()

    def coords(self, vectors) -> np.ndarray:
        """Coordinates of member vectors with respect to ``basis``."""
        v = as_matrix(vectors, self.p, self.ambient)
        return v[:, list(self.pivots)]

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)


def _check_same(u: Subspace, v: Subspace) -> None:
    if u.ambient != v.ambient or u.p != v.p:
        raise DimensionError(f"ambient mismatch: F_{u.p}^{u.ambient} vs F_{v.p}^{v.ambient}")


def span(vectors: Iterable[Sequence[int]] | np.ndarray, ambient: int, p: int) -> Subspace:
    a = np.asarray(vectors if isinstance(vectors, np.ndarray) else list(vectors), dtype=np.int64)
    if a.size == 0:
        return zero(ambient, p)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.shape[1] != ambient:
        raise DimensionError(f"vectors of length {a.shape[1]} in ambient {ambient}")
    r, piv = rref(a, p)
    r.setflags(write=False)
    return Subspace(p, ambient, r, tuple(piv))


def zero(ambient: int, p: int) -> Subspace:
    b = np.zeros((0, ambient), dtype=np.int64)
    b.setflags(write=False)
    return Subspace(p, ambient, b, ())


def full(ambient: int, p: int) -> Subspace:
    return span(np.eye(ambient, dtype=np.int64), ambient, p) if ambient else zero(0, p)


def sum_(u: Subspace, v: Subspace) -> Subspace:
    _check_same(u, v)
    if not v.dim:
        return u
    if not u.dim:
        return v
    return span(np.vstack([u.basis, v.basis]), u.ambient, u.p)


def sum_all(spaces: Iterable[Subspace], ambient: int, p: int) -> Subspace:
    rows = [s.basis for s in spaces if s.dim]
    if not rows:
        return zero(ambient, p)
    return span(np.vstack(rows), ambient, p)


def kernel(f, p: int, cols: int | None = None) -> Subspace:
    """Null space of ``f`` viewed as the map v -> f @ v from F^cols."""
    a = as_matrix(f, p, cols)
    n = a.shape[1] if cols is None else cols
    if a.shape[0] == 0:
        return full(n, p)
    r, piv = rref(a, p)
    free = [c for c in range(n) if c not in set(piv)]
    if not free:
        return zero(n, p)
    out = np.zeros((len(free), n), dtype=np.int64)
    for k, c in enumerate(free):
        out[k, c] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = (-r[i, c]) % p
    return span(out, n, p)


def annihilator(u: Subspace) -> np.ndarray:
    """Rows spanning the functionals that vanish on ``u``."""
    if not u.dim:
        return np.eye(u.ambient, dtype=np.int64)
    return kernel(u.basis, u.p).basis


def intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_same(u, v)
    if u.contains(v):
        return v
    if v.contains(u):
        return u
    return kernel(np.vstack([annihilator(u), annihilator(v)]), u.p, u.ambient)


def quotient_data(v: Subspace, u: Subspace) -> tuple[int, np.ndarray]:
    """Codimension of ``u`` in ``v`` and complement vectors taken greedily from v's basis."""
    _check_same(u, v)
    if not v.contains(u):
        raise ValueError("quotient_data requires U inside V")
    codim = v.dim - u.dim
    picked = []
    cur = u
    for row in v.basis:
        if len(picked) == codim:
            break
        if not cur.member(row):
            picked.append(row)
            cur = sum_(cur, span(row.reshape(1, -1), v.ambient, v.p))
    out = np.array(picked, dtype=np.int64).reshape(len(picked), v.ambient)
    return codim, out


def quotient_map(v: Subspace, u: Subspace) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(P, C)``: for x in v, ``P @ x`` are the coefficients of x on the
    complement ``C`` in the basis ``[u.basis; C]`` of v, so ``P @ x == 0`` iff x in u."""
    codim, comp = quotient_data(v, u)
    p = v.p
    if codim == 0:
        return np.zeros((0, v.ambient), dtype=np.int64), comp
    b = np.vstack([u.basis, comp]) if u.dim else comp
    cols = list(v.pivots)
    binv = inverse(b[:, cols], p)
    proj = np.zeros((v.ambient, v.dim), dtype=np.int64)
    proj[cols] = binv
    return proj[:, u.dim:].T.copy(), comp
