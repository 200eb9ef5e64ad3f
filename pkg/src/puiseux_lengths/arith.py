"""Exact nonnegative rationals, primes and p-adic valuations.

Rationals are plain :class:`fractions.Fraction` values; ``Fraction`` already
keeps numerator and denominator reduced with a positive denominator, so the
helpers here only add the nonnegativity contract and parsing/formatting.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Callable, Iterable, Union

from .errors import DomainError, ResourceError

Rational = Fraction
RationalLike = Union[int, Fraction, str]

DEFAULT_PRIME_SEARCH_CAP = 10**6


def make_rational(n: int, d: int = 1) -> Fraction:
    """Return the reduced nonnegative rational ``n/d``."""
    if d == 0:
        raise DomainError("zero denominator")
    if d < 0 or n < 0:
        raise DomainError(f"negative rational {n}/{d}")
    return Fraction(n, d)


def as_rational(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"a/b"`` strings to a nonnegative Fraction."""
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            try:
                return make_rational(int(num), int(den))
            except ValueError:
                raise DomainError(f"not a rational: {value!r}") from None
        try:
            return make_rational(int(text))
        except ValueError:
            raise DomainError(f"not a rational: {value!r}") from None
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise DomainError(f"not a rational: {value!r}")
    q = Fraction(value)
    if q < 0:
        raise DomainError(f"negative rational {q}")
    return q


def parse_rational_list(text: str) -> list[Fraction]:
    """Parse a comma separated list such as ``"1, 2/3, 4"``."""
    items = [t for t in (s.strip() for s in text.split(",")) if t]
    if not items:
        raise DomainError("empty generator list")
    return [as_rational(t) for t in items]


def format_rational(q: Fraction) -> str:
    """Serialize as ``"num/den"`` (always with a slash, never a float)."""
    return f"{q.numerator}/{q.denominator}"


def numerator(q: RationalLike) -> int:
    return as_rational(q).numerator


def denominator(q: RationalLike) -> int:
    return as_rational(q).denominator


@total_ordering
class _Infinity:
    """Valuation of zero. Absorbs integer addition and exceeds every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinity"

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        if isinstance(other, int) or other is self:
            return False
        return NotImplemented

    def __hash__(self):
        return hash("puiseux_lengths.Infinity")


Infinity = _Infinity()
ExtValuation = Union[int, _Infinity]


# Deterministic Miller-Rabin: these bases are exact for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Miller-Rabin with the first thirteen prime bases is exact below
    3.3e24. Beyond that bound the test falls back to trial division,
    which is slow but never wrong.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        return _trial_division(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _trial_division(n: int) -> bool:
    if n % 2 == 0:
        return n == 2
    for f in range(3, math.isqrt(n) + 1, 2):
        if n % f == 0:
            return False
    return True


def prime_sieve(bound: int) -> bytearray:
    """Byte flags ``flags[k] == 1`` iff ``k`` is prime, for ``0 <= k <= bound``."""
    flags = bytearray([1]) * (bound + 1)
    for k in range(min(2, bound + 1)):
        flags[k] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, bound + 1, p)))
    return flags


def primes_up_to(bound: int) -> list[int]:
    """All primes in ``[2, bound]`` in ascending order."""
    if bound < 2:
        return []
    flags = prime_sieve(bound)
    return [k for k in range(2, bound + 1) if flags[k]]


def nth_prime(n: int) -> int:
    """The ``n``-th prime, 1-indexed (``nth_prime(1) == 2``)."""
    if n < 1:
        raise DomainError("prime index must be positive")
    bound = 16
    while True:
        ps = primes_up_to(bound)
        if len(ps) >= n:
            return ps[n - 1]
        bound *= 2


def next_prime_satisfying(
    lower: int,
    predicate: Callable[[int], bool] = lambda p: True,
    cap: int = DEFAULT_PRIME_SEARCH_CAP,
) -> int:
    """Smallest prime ``p >= lower`` with ``predicate(p)``.

    At most ``cap`` candidate integers are inspected; exceeding that raises
    :class:`ResourceError`.
    """
    n = max(lower, 2)
    for _ in range(cap):
        if is_prime(n) and predicate(n):
            return n
        n += 1
    raise ResourceError(f"no admissible prime in [{max(lower, 2)}, {n})", cap=cap)


def multiplicity(p: int, n: int) -> int:
    """Exponent of ``p`` in the positive integer ``n``."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def padic_valuation(p: int, r: RationalLike) -> ExtValuation:
    """``v_p(r) = v_p(n(r)) - v_p(d(r))``; zero maps to :data:`Infinity`."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    q = as_rational(r)
    if q == 0:
        return Infinity
    return multiplicity(p, q.numerator) - multiplicity(p, q.denominator)


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n >= 1`` in ascending order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


def gcd_all(values: Iterable[int]) -> int:
    out = 0
    for v in values:
        out = math.gcd(out, v)
    return out
