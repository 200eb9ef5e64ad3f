from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from puiseux_lengths.arith import (
    Infinity,
    as_rational,
    format_rational,
    gcd_all,
    is_prime,
    lcm_all,
    make_rational,
    multiplicity,
    next_prime_satisfying,
    nth_prime,
    padic_valuation,
    parse_rational_list,
    prime_factors,
    prime_sieve,
    primes_up_to,
)
from puiseux_lengths.errors import DomainError, ResourceError

small_primes = st.sampled_from(primes_up_to(100))
rationals = st.fractions(min_value=0, max_value=10**6, max_denominator=10**6)


def trial(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


@pytest.mark.parametrize("n, d, num, den", [(4, 6, 2, 3), (0, 7, 0, 1), (8, 5, 8, 5)])
def test_make_rational_examples(n, d, num, den):
    q = make_rational(n, d)
    assert (q.numerator, q.denominator) == (num, den)


@pytest.mark.parametrize("n, d", [(1, 0), (-1, 2), (1, -2)])
def test_make_rational_domain(n, d):
    with pytest.raises(DomainError):
        make_rational(n, d)


@given(st.integers(0, 1000), st.integers(1, 1000), st.integers(1, 50))
def test_make_rational_idempotent(n, d, k):
    q = make_rational(n, d)
    assert make_rational(q.numerator, q.denominator) == q
    assert make_rational(n * k, d * k) == q


def test_as_rational_forms():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(4) == Fraction(4)
    assert parse_rational_list("1, 2/3") == [Fraction(1), Fraction(2, 3)]
    for bad in ("x/2", "-1/2", 0.5, True):
        with pytest.raises(DomainError):
            as_rational(bad)


def test_format_always_has_denominator():
    assert format_rational(Fraction(6)) == "6/1"
    assert format_rational(Fraction(4, 6)) == "2/3"


@pytest.mark.parametrize(
    "p, r, v",
    [(2, Fraction(12), 2), (3, Fraction(5, 18), -2), (5, Fraction(7, 3), 0)],
)
def test_valuation_examples(p, r, v):
    assert padic_valuation(p, r) == v


def test_valuation_of_zero_is_infinite():
    v = padic_valuation(7, 0)
    assert v is Infinity
    assert v > 10**100 and v + 3 is Infinity


def test_valuation_rejects_nonprime():
    with pytest.raises(DomainError):
        padic_valuation(4, Fraction(1, 2))


@given(small_primes, rationals, rationals)
def test_valuation_axioms(p, r, s):
    vr, vs = padic_valuation(p, r), padic_valuation(p, s)
    assert padic_valuation(p, r * s) == vr + vs
    assert padic_valuation(p, r + s) >= min(vr, vs)


def test_sieve_matches_trial_division():
    flags = prime_sieve(10**4)
    assert [n for n in range(10**4 + 1) if flags[n]] == [n for n in range(10**4 + 1) if trial(n)]


@given(st.integers(0, 10**6))
def test_is_prime_matches_trial(n):
    assert is_prime(n) == trial(n)


def test_large_primes():
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)
    assert not is_prime(43 * 10**25 + 43)  # above the Miller-Rabin bound


def test_nth_prime_and_factors():
    assert [nth_prime(k) for k in range(1, 7)] == [2, 3, 5, 7, 11, 13]
    assert prime_factors(360) == [2, 3, 5]
    assert multiplicity(2, 48) == 4
    assert lcm_all([4, 6, 10]) == 60 and gcd_all([12, 18, 30]) == 6


def test_next_prime_respects_cap():
    assert next_prime_satisfying(14, lambda p: p % 4 == 1) == 17
    with pytest.raises(ResourceError):
        next_prime_satisfying(3, lambda p: p % 2 == 0, cap=1000)
