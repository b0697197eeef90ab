"""Finite groups given by Cayley tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Optional, Sequence

import numpy as np

from .linalg import is_prime

SERIES_SEARCH_LIMIT = 64


class GroupAxiomError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message if witness is None else f"{message}: {witness}")
        self.witness = witness


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    table: np.ndarray
    identity: int
    names: tuple[str, ...]

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.identity == other.identity and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(np.flatnonzero(self.table[a] == self.identity)[0])

    def prod(self, elems: Iterable[int]) -> int:
        out = self.identity
        for g in elems:
            out = int(self.table[out, g])
        return out

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``gens``."""
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = int(self.table[x, g])
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_subgroup(self, h: Iterable[int]) -> bool:
        h = set(h)
        if self.identity not in h:
            return False
        return all(int(self.table[a, self.inv(b)]) in h for a in h for b in h)

    def is_normal(self, h: Iterable[int], within: Optional[Iterable[int]] = None) -> bool:
        h = frozenset(h)
        if not self.is_subgroup(h):
            raise GroupAxiomError("not a subgroup", sorted(h))
        ambient = self.elements() if within is None else within
        return all(self.prod((g, x, self.inv(g))) in h for g in ambient for x in h)

    def normal_closure(self, s: Iterable[int], within: Iterable[int]) -> frozenset[int]:
        within = list(within)
        gens = {self.prod((g, x, self.inv(g))) for g in within for x in s}
        return self.generated(gens)

    def is_cyclic_of_prime_order(self) -> bool:
        return is_prime(self.order)

    def generator(self) -> int:
        """Least-index element generating the whole group."""
        for g in self.elements():
            if len(self.generated([g])) == self.order:
                return g
        raise GroupAxiomError("group is not cyclic")


def validate_group(table, names: Sequence[str] = ()) -> FiniteGroup:
    t = np.asarray(table, dtype=np.int64)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise GroupAxiomError("table must be a non-empty square array", t.shape)
    n = t.shape[0]
    if t.min() < 0 or t.max() >= n:
        raise GroupAxiomError("table entries out of range")
    ids = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
    if not ids:
        raise GroupAxiomError("no two-sided identity")
    e = ids[0]
    for a in range(n):
        if not (t[a] == e).any() or not (t[:, a] == e).any():
            raise GroupAxiomError("element without inverse", a)
    lhs = t[t, :]  # lhs[a, b, c] = (ab)c
    rhs = t[:, t]  # rhs[a, b, c] = a(bc)
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        raise GroupAxiomError("associativity fails", tuple(int(x) for x in bad[0]))
    names = tuple(names) if names else tuple(f"g{i}" for i in range(n))
    if len(names) != n:
        raise GroupAxiomError("names length differs from order")
    t = t.copy()
    t.setflags(write=False)
    return FiniteGroup(t, e, names)


def cyclic_group(n: int) -> FiniteGroup:
    idx = np.arange(n)
    return validate_group((idx[:, None] + idx[None, :]) % n, [f"c{i}" for i in range(n)])


def permutation_group(perms: Sequence[Sequence[int]]) -> FiniteGroup:
    """Group table for a list of permutations closed under composition;
    ``(a*b)(x) = a(b(x))``."""
    perms = [tuple(q) for q in perms]
    index = {q: i for i, q in enumerate(perms)}
    n = len(perms)
    t = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            t[i, j] = index[tuple(a[x] for x in b)]
    return validate_group(t, ["".join(map(str, q)) for q in perms])


def symmetric_group(k: int) -> FiniteGroup:
    return permutation_group(sorted(permutations(range(k))))


def quotient_group(g: FiniteGroup, h: Iterable[int]) -> tuple[FiniteGroup, list[int]]:
    """``(G/H, coset_of)`` with cosets indexed by their least element."""
    h = frozenset(h)
    if not g.is_subgroup(h):
        raise GroupAxiomError("not a subgroup", sorted(h))
    if not g.is_normal(h):
        raise GroupAxiomError("subgroup is not normal", sorted(h))
    cosets: list[frozenset[int]] = []
    coset_of = [-1] * g.order
    for x in g.elements():
        if coset_of[x] < 0:
            c = frozenset(g.mul(x, y) for y in h)
            for y in c:
                coset_of[y] = len(cosets)
            cosets.append(c)
    reps = [min(c) for c in cosets]
    k = len(cosets)
    t = np.zeros((k, k), dtype=np.int64)
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            t[i, j] = coset_of[g.mul(a, b)]
    names = ["{" + ",".join(g.names[x] for x in sorted(c)) + "}" for c in cosets]
    return validate_group(t, names), coset_of


def restrict(g: FiniteGroup, h: Iterable[int]) -> tuple[FiniteGroup, list[int]]:
    """Subgroup ``h`` as a standalone group; returns it with the list mapping
    its indices back to elements of ``g``."""
    elems = sorted(h)
    if not g.is_subgroup(elems):
        raise GroupAxiomError("not a subgroup", elems)
    pos = {x: i for i, x in enumerate(elems)}
    t = np.array([[pos[g.mul(a, b)] for b in elems] for a in elems], dtype=np.int64)
    return validate_group(t, [g.names[x] for x in elems]), elems


@dataclass(frozen=True)
class PrimeSeries:
    """``{e} = G_0 < G_1 < ... < G_k = G``, each normal in the next with prime index."""

    chain: tuple[frozenset[int], ...]

    def __len__(self):
        return len(self.chain) - 1

    def quotient_orders(self) -> list[int]:
        return [len(b) // len(a) for a, b in zip(self.chain, self.chain[1:])]

    def as_lists(self) -> list[list[int]]:
        return [sorted(s) for s in self.chain]


def validate_series(g: FiniteGroup, chain: Sequence[Iterable[int]]) -> PrimeSeries:
    chain = tuple(frozenset(s) for s in chain)
    if not chain or chain[0] != frozenset([g.identity]) or chain[-1] != frozenset(g.elements()):
        raise GroupAxiomError("series must run from {e} to G")
    for a, b in zip(chain, chain[1:]):
        if not (a < b):
            raise GroupAxiomError("series containment not strict", (sorted(a), sorted(b)))
        if not g.is_subgroup(a) or not g.is_subgroup(b):
            raise GroupAxiomError("series term is not a subgroup")
        if not g.is_normal(a, within=b):
            raise GroupAxiomError("series term not normal in the next", sorted(a))
        if not is_prime(len(b) // len(a)):
            raise GroupAxiomError("series quotient of non-prime order", len(b) // len(a))
    return PrimeSeries(chain)


def _normal_subgroups(g: FiniteGroup, k: frozenset[int]) -> set[frozenset[int]]:
    found = {g.normal_closure([x], k) for x in sorted(k)}
    frontier = set(found)
    while frontier:
        nxt = set()
        for a in frontier:
            for b in list(found):
                c = g.generated(a | b)
                if c not in found:
                    nxt.add(c)
        found |= nxt
        frontier = nxt
    return found


def find_prime_series(g: FiniteGroup, limit: int = SERIES_SEARCH_LIMIT) -> Optional[PrimeSeries]:
    """A prime series for ``g``, or ``None`` when ``g`` is not soluble.

    At each step the lexicographically least normal subgroup of prime index
    (as a sorted element tuple) is taken.
    """
    if g.order > limit:
        raise ValueError(f"group order {g.order} exceeds search bound {limit}")

    def descend(k: frozenset[int]) -> Optional[list[frozenset[int]]]:
        if len(k) == 1:
            return [k]
        cands = [h for h in _normal_subgroups(g, k) if h != k and is_prime(len(k) // len(h))]
        for h in sorted(cands, key=lambda s: tuple(sorted(s))):
            rest = descend(h)
            if rest is not None:
                return rest + [k]
        return None

    chain = descend(frozenset(g.elements()))
    return None if chain is None else PrimeSeries(tuple(chain))
