"""Factorizations and sets of lengths in finitely generated submonoids of (N0, +).

Small queries run on the bitset dynamic program in :mod:`.kernels`. When the
queried value is too large for a value-indexed table (integer images of
Puiseux monoids with many denominator primes), a depth-first search over the
atoms takes over; it steps each atom's multiplicity through the residue class
forced by the gcd of the remaining atoms, so structured huge monoids stay
cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from . import kernels
from .caps import default_caps
from .errors import DomainError, ResourceError

FactorizationVector = tuple
LengthSet = tuple

# Above this estimated word-operation count the DP table is skipped.
DP_WORK_LIMIT = 5 * 10**7


@dataclass(frozen=True)
class IntSubmonoid:
    """Submonoid of (N0, +) given by its strictly ascending minimal generators.

    Build instances through :func:`minimalize`; the constructor only checks
    ordering and positivity.
    """

    atoms: tuple

    def __post_init__(self):
        atoms = tuple(int(a) for a in self.atoms)
        if not atoms:
            raise DomainError("a submonoid needs at least one atom")
        if atoms[0] <= 0 or any(x >= y for x, y in zip(atoms, atoms[1:])):
            raise DomainError(f"atoms must be positive and strictly ascending: {atoms}")
        object.__setattr__(self, "atoms", atoms)

    def __str__(self):
        return "<" + ", ".join(map(str, self.atoms)) + ">"

    def value(self, z: FactorizationVector) -> int:
        return sum(c * a for c, a in zip(z, self.atoms))


def _dp_affordable(atoms, n):
    return n * len(atoms) * (n // atoms[0] // 64 + 1) <= DP_WORK_LIMIT


class _Search:
    """Memoized suffix search: ``bits(i, r)`` is the length bitset of ``r`` over ``atoms[i:]``."""

    def __init__(self, atoms):
        self.atoms = atoms
        k = len(atoms)
        self.suffix_gcd = [0] * (k + 1)
        for i in range(k - 1, -1, -1):
            self.suffix_gcd[i] = math.gcd(atoms[i], self.suffix_gcd[i + 1])
        self.bits = lru_cache(maxsize=None)(self._bits)

    def counts(self, i, r):
        """Multiplicities ``c`` of ``atoms[i]`` leaving a remainder the rest can divide."""
        a = self.atoms[i]
        g = self.suffix_gcd[i + 1]
        if g == 0:
            if r % a == 0:
                yield r // a
            return
        d = math.gcd(a, g)
        if r % d:
            return
        step = g // d
        c = (r // d) * pow(a // d, -1, step) % step if step > 1 else 0
        top = r // a
        while c <= top:
            yield c
            c += step

    def _bits(self, i, r):
        if i == len(self.atoms):
            return 1 if r == 0 else 0
        if r % self.suffix_gcd[i]:
            return 0
        out = 0
        a = self.atoms[i]
        for c in self.counts(i, r):
            rest = self.bits(i + 1, r - c * a)
            if rest:
                out |= rest << c
        return out


def _length_bits(atoms, n):
    if n < 0:
        return 0
    if n == 0:
        return 1
    if _dp_affordable(atoms, n):
        return kernels.length_bits(atoms, n)
    return _Search(tuple(atoms)).bits(0, n)


def minimalize(gens: Iterable[int]) -> IntSubmonoid:
    """Minimal generating set of the submonoid generated by ``gens``."""
    values = sorted({int(g) for g in gens})
    if not values:
        raise DomainError("empty generator list")
    if values[0] <= 0:
        raise DomainError("generators must be positive")
    kept = []
    for g in values:
        if not kept or not _length_bits(kept, g):
            kept.append(g)
    return IntSubmonoid(tuple(kept))


def is_member(N: IntSubmonoid, n: int) -> bool:
    return n >= 0 and _length_bits(N.atoms, n) != 0


def length_set(N: IntSubmonoid, n: int) -> LengthSet:
    """Sorted set of lengths of ``n``; empty when ``n`` is not in ``N``."""
    return tuple(kernels.bits_to_list(_length_bits(N.atoms, n)))


def length_table(N: IntSubmonoid, n: int) -> list:
    """Length bitsets for every value ``0..n`` (one DP pass)."""
    return kernels.length_table(N.atoms, n)


def iter_factorizations(N: IntSubmonoid, n: int) -> Iterator[FactorizationVector]:
    """Exponent vectors with value ``n`` in lexicographic order."""
    if n < 0:
        return
    search = _Search(N.atoms)
    k = len(N.atoms)
    prefix = [0] * k

    def walk(i, r):
        if i == k:
            if r == 0:
                yield tuple(prefix)
            return
        a = N.atoms[i]
        for c in search.counts(i, r):
            if search.bits(i + 1, r - c * a):
                prefix[i] = c
                yield from walk(i + 1, r - c * a)
        prefix[i] = 0

    yield from walk(0, n)


def factorizations(N: IntSubmonoid, n: int, cap: int | None = None) -> list:
    """All factorizations of ``n`` in lexicographic order.

    Raises :class:`ResourceError` once more than ``cap`` vectors appear.
    """
    if cap is None:
        cap = default_caps().factorization_cap
    out = []
    for z in iter_factorizations(N, n):
        if len(out) >= cap:
            raise ResourceError(f"more than {cap} factorizations of {n}", cap=cap)
        out.append(z)
    return out
