"""Finite-dimensional associative algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .linalg import (
    DimensionError,
    FieldSpec,
    Subspace,
    full,
    quotient_data,
    quotient_map,
    span,
    sum_,
    zero,
)


class MisuseError(ValueError):
    """Raised when an operation's precondition is violated by the caller."""


@dataclass(frozen=True, eq=False)
class Algebra:
    """Associative algebra over F_p.

    ``constants[i, j, k]`` is the coefficient of ``e_k`` in ``e_i * e_j``.
    """

    field: FieldSpec
    constants: np.ndarray
    basis_names: tuple[str, ...] = ()

    def __post_init__(self):
        c = np.asarray(self.constants, dtype=np.int64) % self.p
        d = c.shape[0] if c.ndim == 3 else 0
        if c.size and c.shape != (d, d, d):
            raise DimensionError(f"structure constants of shape {c.shape}")
        if not c.size:
            c = np.zeros((d, d, d), dtype=np.int64)
        c.setflags(write=False)
        object.__setattr__(self, "constants", c)
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i}" for i in range(d)))
        elif len(self.basis_names) != d:
            raise DimensionError("basis_names length differs from dimension")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return self.constants.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.p == other.p
            and self.basis_names == other.basis_names
            and np.array_equal(self.constants, other.constants)
        )

    def __repr__(self):
        return f"Algebra(F_{self.p}, dim={self.dim})"

    @classmethod
    def from_products(cls, p: int, dim: int, products, basis_names: Sequence[str] = ()) -> "Algebra":
        """Build from sparse ``(i, j, k, coeff)`` quadruples."""
        c = np.zeros((dim, dim, dim), dtype=np.int64)
        for i, j, k, v in products:
            c[i, j, k] = (c[i, j, k] + v) % p
        return cls(FieldSpec(p), c, tuple(basis_names))

    def products(self) -> list[tuple[int, int, int, int]]:
        return [tuple(int(t) for t in idx) + (int(self.constants[idx]),) for idx in zip(*np.nonzero(self.constants))]

    def unit_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def whole(self) -> Subspace:
        return full(self.dim, self.p)

    def zero_space(self) -> Subspace:
        return zero(self.dim, self.p)

    def span(self, vectors) -> Subspace:
        return span(vectors, self.dim, self.p)

    def multiply(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if x.shape[-1] != self.dim or y.shape[-1] != self.dim:
            raise DimensionError("element length differs from algebra dimension")
        d = self.dim
        t = (x @ self.constants.reshape(d, d * d)) % self.p
        return (y @ t.reshape(d, d)) % self.p

    def left_matrix(self, x) -> np.ndarray:
        """Matrix of y -> x*y acting on column vectors."""
        x = np.asarray(x, dtype=np.int64)
        d = self.dim
        return ((x @ self.constants.reshape(d, d * d)) % self.p).reshape(d, d).T.copy()

    def right_matrix(self, y) -> np.ndarray:
        """Matrix of x -> x*y acting on column vectors."""
        y = np.asarray(y, dtype=np.int64)
        return (np.einsum("ijk,j->ki", self.constants, y) % self.p)

    def pair_products(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """All products xs[a] * ys[b], shape (len(xs), len(ys), dim)."""
        d = self.dim
        xs = np.asarray(xs, dtype=np.int64).reshape(-1, d)
        ys = np.asarray(ys, dtype=np.int64).reshape(-1, d)
        t = (xs @ self.constants.reshape(d, d * d)) % self.p
        t = t.reshape(len(xs), d, d)
        return np.einsum("bj,ajk->abk", ys, t) % self.p

    def validate_associativity(self) -> list[tuple[int, int, int]]:
        """Basis triples (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k)."""
        c = self.constants
        bad = []
        for i in range(self.dim):
            left = np.einsum("jm,mkl->jkl", c[i], c) % self.p
            right = np.einsum("jkm,ml->jkl", c, c[i]) % self.p
            for j, k in zip(*np.nonzero((left != right).any(axis=2))):
                bad.append((i, int(j), int(k)))
        return bad

    def subspace_product(self, u: Subspace, v: Subspace) -> Subspace:
        if not u.dim or not v.dim:
            return self.zero_space()
        return self.span(self.pair_products(u.basis, v.basis).reshape(-1, self.dim))

    def is_multiplicatively_closed(self, s: Subspace) -> bool:
        return s.contains(self.subspace_product(s, s))

    def power_chain(self, s: Subspace, limit: Optional[int] = None) -> list[Subspace]:
        """``[S, S^2, ...]`` ending at zero or at the first repeat."""
        if not self.is_multiplicatively_closed(s):
            raise MisuseError("power chain needs S*S inside S")
        chain = [s]
        while chain[-1].dim and (limit is None or len(chain) < limit):
            nxt = self.subspace_product(chain[-1], s)
            if nxt == chain[-1]:
                break
            chain.append(nxt)
        return chain

    def nilpotency_index(self, s: Optional[Subspace] = None) -> Optional[int]:
        """Least d with S^d = 0, or ``None`` if the powers stabilize above zero."""
        s = self.whole() if s is None else s
        if not s.dim:
            return 1
        chain = self.power_chain(s)
        if chain[-1].dim:
            return None
        return len(chain)

    def power(self, s: Subspace, k: int) -> Subspace:
        out = s
        for _ in range(k - 1):
            if not out.dim:
                break
            out = self.subspace_product(out, s)
        return out

    def is_left_ideal(self, s: Subspace) -> bool:
        return s.contains(self.subspace_product(self.whole(), s))

    def is_right_ideal(self, s: Subspace) -> bool:
        return s.contains(self.subspace_product(s, self.whole()))

    def ideal_handle(self, s: Subspace) -> "IdealHandle":
        return IdealHandle(s, self.is_left_ideal(s), self.is_right_ideal(s))

    def ideal_closure(self, s: Subspace) -> "IdealHandle":
        a = self.whole()
        cur = s
        while True:
            nxt = sum_(sum_(cur, self.subspace_product(a, cur)), self.subspace_product(cur, a))
            if nxt == cur:
                return IdealHandle(cur, True, True)
            cur = nxt

    def quotient(self, k: "IdealHandle") -> tuple["Algebra", np.ndarray, np.ndarray]:
        """``(A/K, projection, section)``; ``projection @ x`` gives quotient coordinates
        and the rows of ``section`` lift the quotient basis."""
        if not (k.is_left_closed and k.is_right_closed):
            raise MisuseError("quotient needs a two-sided ideal")
        if not (self.is_left_ideal(k.carrier) and self.is_right_ideal(k.carrier)):
            raise MisuseError("carrier is not a two-sided ideal")
        proj, sec = quotient_map(self.whole(), k.carrier)
        r = sec.shape[0]
        prods = self.pair_products(sec, sec).reshape(-1, self.dim)
        c = (prods @ proj.T % self.p).reshape(r, r, r)
        names = tuple(f"[{_describe(self, row)}]" for row in sec)
        q = Algebra(self.field, c, names)
        return q, proj, sec

    def subalgebra(self, s: Subspace) -> tuple["Algebra", np.ndarray]:
        """Present a multiplicatively closed subspace as a standalone algebra;
        returns it with the embedding whose rows are the images of its basis."""
        if not self.is_multiplicatively_closed(s):
            raise MisuseError("subspace is not a subalgebra")
        r = s.dim
        prods = self.pair_products(s.basis, s.basis).reshape(-1, self.dim)
        c = s.coords(prods).reshape(r, r, r)
        names = tuple(_describe(self, row) for row in s.basis)
        return Algebra(self.field, c, names), s.basis.copy()

    def unital_extension(self) -> "Algebra":
        """A# with the adjoined unit as the last basis vector."""
        d = self.dim
        c = np.zeros((d + 1, d + 1, d + 1), dtype=np.int64)
        c[:d, :d, :d] = self.constants
        for i in range(d + 1):
            c[d, i, i] = 1
            c[i, d, i] = 1
        return Algebra(self.field, c, self.basis_names + ("1",))


def _describe(alg: Algebra, v) -> str:
    terms = []
    for i in np.flatnonzero(v):
        c = int(v[i])
        terms.append(alg.basis_names[i] if c == 1 else f"{c}*{alg.basis_names[i]}")
    return "+".join(terms) or "0"


@dataclass(frozen=True)
class IdealHandle:
    carrier: Subspace
    is_left_closed: bool = False
    is_right_closed: bool = False

    @property
    def two_sided(self) -> bool:
        return self.is_left_closed and self.is_right_closed


def zero_algebra(dim: int, p: int) -> Algebra:
    return Algebra(FieldSpec(p), np.zeros((dim, dim, dim), dtype=np.int64))


def lift_complement(v: Subspace, u: Subspace) -> np.ndarray:
    return quotient_data(v, u)[1]
