"""Finitely generated Puiseux monoids (additive submonoids of Q>=0).

A monoid is stored by its minimal atoms together with the positive rational
``scale_factor`` that turns it into a plain integer submonoid. Lengths are
preserved by that rescaling, so small queries go straight to the integer
dynamic program. When the integer image is too large for a table (many
denominator primes multiply together) the queries switch to a search that
groups atoms by denominator and uses the fact that, once a denominator block
has been used up, the remainder must be expressible with the denominators
that are left.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import islice
from typing import Callable, Iterable, Iterator, Optional

from . import kernels, numsgp
from .arith import as_rational, gcd_all, lcm_all, prime_factors
from .errors import DomainError, InternalError
from .numsgp import IntSubmonoid


def canonical_scale(values: Iterable[Fraction]) -> Fraction:
    """Positive generator of the additive group spanned by ``values``: gcd(numerators)/lcm(denominators)."""
    values = list(values)
    return Fraction(gcd_all(v.numerator for v in values), lcm_all(v.denominator for v in values))


@dataclass(frozen=True)
class FGPuiseux:
    """Minimal atoms (ascending) plus the integer image ``atoms / scale_factor``."""

    atoms: tuple
    scale_factor: Fraction
    integer_image: IntSubmonoid = field(compare=False, repr=False)

    def __str__(self):
        return "<" + ", ".join(str(a) for a in self.atoms) + ">"

    def value(self, z) -> Fraction:
        return sum((c * a for c, a in zip(z, self.atoms)), Fraction(0))


class _BlockedLengths:
    """Length bitsets of rationals over a fixed atom list, grouped by denominator."""

    def __init__(self, atoms: Iterable[Fraction]):
        groups: dict[int, list[int]] = {}
        for a in atoms:
            groups.setdefault(a.denominator, []).append(a.numerator)
        # Largest denominators first: their primes tend to be private to the block.
        self.blocks = []
        for den in sorted(groups, reverse=True):
            nums = sorted(groups[den])
            g = gcd_all(nums)
            self.blocks.append((Fraction(g, den), tuple(n // g for n in nums)))
        k = len(self.blocks)
        self.suffix_lcm = [1] * (k + 1)
        for b in range(k - 1, -1, -1):
            self.suffix_lcm[b] = math.lcm(self.blocks[b][0].denominator, self.suffix_lcm[b + 1])
        self._tables: dict[int, list] = {}
        self.bits = lru_cache(maxsize=None)(self._bits)

    def _block_bits(self, b, m, bound):
        ints = self.blocks[b][1]
        table = self._tables.get(b)
        if table is None or len(table) <= m:
            if numsgp._dp_affordable(ints, bound):
                table = self._tables[b] = kernels.length_table(ints, bound)
            else:
                return numsgp._length_bits(ints, m)
        return table[m]

    def _bits(self, b, r):
        if b == len(self.blocks):
            return 1 if r == 0 else 0
        s, _ = self.blocks[b]
        t = self.suffix_lcm[b + 1]
        alpha, beta = s * t, r * t
        q = alpha.denominator
        if q % beta.denominator:
            return 0
        if q == 1:
            m, step = 0, 1
        else:
            m = (beta * q).numerator * pow(alpha.numerator, -1, q) % q
            step = q
        top = math.floor(r / s)
        out = 0
        while m <= top:
            here = self._block_bits(b, m, top)
            if here:
                rest = self.bits(b + 1, r - m * s)
                if rest:
                    out |= kernels.sumset_bits(here, rest)
            m += step
        return out


def _length_bits_over(atoms, x: Fraction) -> int:
    """Length bitset of ``x`` over the given (not necessarily minimal) atom list."""
    if x < 0:
        return 0
    if x == 0:
        return 1
    scale = canonical_scale(atoms)
    n = x / scale
    if n.denominator != 1:
        return 0
    ints = sorted(int(a / scale) for a in atoms)
    if numsgp._dp_affordable(ints, int(n)):
        return kernels.length_bits(ints, int(n))
    return _BlockedLengths(atoms).bits(0, x)


def _from_minimal(atoms) -> FGPuiseux:
    atoms = tuple(sorted(atoms))
    scale = canonical_scale(atoms)
    image = IntSubmonoid(tuple(int(a / scale) for a in atoms))
    return FGPuiseux(atoms, scale, image)


def normalize(gens: Iterable) -> FGPuiseux:
    """Monoid generated by ``gens``, reduced to its minimal generating set."""
    values = sorted({as_rational(g) for g in gens})
    if not values:
        raise DomainError("empty generator list")
    if values[0] <= 0:
        raise DomainError("generators must be positive")
    kept: list[Fraction] = []
    for g in values:
        # Only smaller generators can appear in a decomposition of g.
        if not kept or not _length_bits_over(kept, g):
            kept.append(g)
    return _from_minimal(kept)


def from_int_submonoid(N: IntSubmonoid) -> FGPuiseux:
    return _from_minimal(Fraction(a) for a in N.atoms)


def scale(M: FGPuiseux, q) -> FGPuiseux:
    """The monoid ``q*M``; atoms scale pointwise and the integer image is unchanged."""
    q = as_rational(q)
    if q <= 0:
        raise DomainError("scaling factor must be positive")
    return FGPuiseux(tuple(q * a for a in M.atoms), q * M.scale_factor, M.integer_image)


def is_member(M: FGPuiseux, x) -> bool:
    x = as_rational(x)
    n = x / M.scale_factor
    if n.denominator != 1:
        return False
    return _length_bits_over(M.atoms, x) != 0


def length_bits(M: FGPuiseux, x) -> int:
    return _length_bits_over(M.atoms, as_rational(x))


def length_set(M: FGPuiseux, x) -> tuple:
    return tuple(kernels.bits_to_list(length_bits(M, x)))


def factorizations(M: FGPuiseux, x, cap: Optional[int] = None) -> list:
    """Exponent vectors over ``M.atoms`` summing to ``x``, lexicographic order."""
    n = as_rational(x) / M.scale_factor
    if n.denominator != 1:
        return []
    return numsgp.factorizations(M.integer_image, int(n), cap=cap)


def denominator_primes(S: Iterable) -> tuple:
    """Primes dividing the denominator of some element of ``S``."""
    primes = set()
    for s in S:
        primes.update(prime_factors(as_rational(s).denominator))
    return tuple(sorted(primes))


def isomorphism_factor(M: FGPuiseux, M2: FGPuiseux) -> Optional[Fraction]:
    """The rational ``r`` with ``M = r*M2``, or None.

    Isomorphisms of Puiseux monoids are multiplications by positive
    rationals, which keep atoms ordered, so the only candidate sends the
    least atom of ``M2`` to the least atom of ``M``.
    """
    if len(M.atoms) != len(M2.atoms):
        return None
    r = M.atoms[0] / M2.atoms[0]
    if all(a == r * b for a, b in zip(M.atoms, M2.atoms)):
        return r
    return None


def is_bounded_denominators(gens: Iterable) -> bool:
    """Whether the denominators of ``<gens>`` are bounded.

    For a finite generating list every element's denominator divides the
    lcm of the generators' denominators, so the answer is always True;
    non-finitely generated monoids are probed via :func:`has_zero_limit_point`.
    """
    values = [as_rational(g) for g in gens]
    bound = lcm_all(v.denominator for v in values)
    return all(bound % v.denominator == 0 for v in values)


class Tri(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class AtomStream:
    """An infinite generating sequence with optional infimum metadata.

    ``declared_infimum`` is the infimum of the nonzero elements when the
    producer can certify it, else None.
    """

    generate: Callable[[], Iterator[Fraction]]
    declared_infimum: Optional[Fraction] = None


def has_zero_limit_point(stream: AtomStream, probe_count: int) -> Tri:
    """Tri-state probe for 0 being a limit point of the generated monoid."""
    if probe_count < 1:
        raise DomainError("probe_count must be at least 1")
    probed = list(islice(stream.generate(), probe_count))
    if any(a <= 0 for a in probed):
        raise DomainError("stream produced a nonpositive generator")
    inf = stream.declared_infimum
    if inf is None:
        return Tri.UNKNOWN
    if any(a < inf for a in probed):
        raise InternalError(f"stream element below its declared infimum {inf}")
    return Tri.YES if inf == 0 else Tri.NO


def certifies_bf(stream: AtomStream, probe_count: int = 16) -> bool:
    """True only when the probe certifies 0 is not a limit point (hence BF)."""
    return has_zero_limit_point(stream, probe_count) is Tri.NO
