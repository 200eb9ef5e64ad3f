"""Sets of lengths of integers in the elementary monoid <1/p : p prime>.

A factorization of an integer ``n`` uses each atom ``1/p`` a multiple of
``p`` times, so its length is ``a_1 p_1 + ... + a_k p_k`` for a composition
``(a_1, ..., a_k)`` of ``n`` and distinct primes. Such a length forces every
``p_i`` below it, hence the formula restricted to primes ``<= B`` is complete
on ``[0, B]``; that window is what the reports certify.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from . import kernels
from .arith import nth_prime, prime_sieve, primes_up_to
from .errors import DomainError


def _bits_from_flags(flags: bytes) -> int:
    """Bitset with bit ``k`` set iff ``flags[k]``."""
    return int(bytes(flags[::-1]).translate(bytes.maketrans(b"\x00\x01", b"01")) or b"0", 2)


def _two_prime_sums(bound: int) -> int:
    """Bitset of ``{p + q <= bound : p, q prime}``."""
    primes = primes_up_to(bound)
    pbits = _bits_from_flags(prime_sieve(bound))
    mask = (1 << (bound + 1)) - 1
    out = 0
    for p in primes:
        if 2 * p > bound:
            break
        out |= (pbits >> p) << (2 * p)  # pairs p <= q
    return out & mask


def goldbach_set(B: int) -> tuple:
    """Integers ``n <= B`` that are a sum of two (not necessarily distinct) primes."""
    if B < 4:
        raise DomainError("bound must be at least 4")
    return tuple(kernels.bits_to_list(_two_prime_sums(B)))


def compositions(n: int, k: int) -> Iterator[tuple]:
    """Ordered ``k``-tuples of positive integers summing to ``n``, lexicographic."""
    if not 1 <= k <= n:
        raise DomainError("need 1 <= k <= n")
    for cuts in combinations(range(1, n), k - 1):
        bounds = (0,) + cuts + (n,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def _formula_bits_distinct(n, primes):
    # dp[j]: lengths using total multiplicity j, each prime at most once
    dp = [1] + [0] * n
    for p in primes:
        new = dp[:]
        for j in range(1, n + 1):
            for a in range(1, j + 1):
                if dp[j - a]:
                    new[j] |= dp[j - a] << (a * p)
        dp = new
    return dp[n]


def _formula_bits_free(n, primes):
    out = 0
    for k in range(1, n + 1):
        for comp in compositions(n, k):
            cur = 1
            for a in comp:
                step = 0
                for p in primes:
                    step |= cur << (a * p)
                cur = step
            out |= cur
    return out


def length_set_formula(n: int, B: int, distinct_primes: bool = True) -> tuple:
    """Lengths ``sum a_i p_i`` over compositions of ``n`` and primes ``p_i <= B``.

    With ``distinct_primes`` the primes of one composition are pairwise
    distinct (a knapsack over the primes); otherwise every part picks its
    prime independently (direct enumeration). Both give the same set.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if B < 2:
        raise DomainError("prime bound must be at least 2")
    primes = primes_up_to(B)
    bits = _formula_bits_distinct(n, primes) if distinct_primes else _formula_bits_free(n, primes)
    return tuple(kernels.bits_to_list(bits))


def cross_check_formula_vs_enumeration(n: int, t: int) -> bool:
    """Compare the formula with primes up to the ``t``-th prime against the
    set of lengths of ``n`` computed over the atoms ``1/2, ..., 1/p_t``.

    Both sides use the same finite prime set, so the comparison window is
    all of ``[0, n * p_t]``.
    """
    return _cross_check(n, t)[0]


def _cross_check(n, t):
    from .staged import elementary_monoid, truncated_length_set

    pt = nth_prime(t)
    E = elementary_monoid().materialize(t)
    window = n * pt
    enumerated = {l for l in truncated_length_set(E, n, t) if l <= window}
    formula = {l for l in length_set_formula(n, pt, True) if l <= window}
    return enumerated == formula, sorted(enumerated), sorted(formula)


@dataclass
class GoldbachReport:
    bound: int
    goldbach_set: tuple
    computed_L2: tuple
    agreement_window: tuple
    discrepancies: list
    weak_goldbach_ok: Optional[bool] = None
    weak_goldbach_failures: list = field(default_factory=list)
    L3_membership: Optional[list] = None
    L3_flags: Optional[list] = None

    def to_json(self):
        return {
            "bound": self.bound,
            "agreement_window": list(self.agreement_window),
            "goldbach": list(self.goldbach_set),
            "formula_L2": list(self.computed_L2),
            "discrepancies": self.discrepancies,
            "weak_goldbach_ok": self.weak_goldbach_ok,
            "weak_goldbach_failures": self.weak_goldbach_failures,
            "L3_membership": self.L3_membership,
            "L3_flags": self.L3_flags,
        }


def verify_weak_goldbach(B: int) -> dict:
    """Check that every odd ``n`` in ``[7, B]`` is a sum of three primes."""
    if B < 7:
        raise DomainError("bound must be at least 7")
    two = _two_prime_sums(B)
    mask = (1 << (B + 1)) - 1
    three = 0
    for p in primes_up_to(B):
        three |= two << p
    three &= mask
    failures = [n for n in range(7, B + 1, 2) if not three >> n & 1]
    return {"bound": B, "ok": not failures, "failures": failures}


def l3_membership(B: int) -> tuple:
    """Membership of each integer in ``[4, B]`` in the computed set of lengths of 3.

    Returns ``(rows, flags)``; a flag marks every value where the computed
    set disagrees with the claim that the set of lengths of 3 is Z>=7.
    """
    computed = set(length_set_formula(3, B, True))
    rows, flags = [], []
    for n in range(4, B + 1):
        inside = n in computed
        rows.append({"n": n, "in_formula_set": inside})
        if inside != (n >= 7):
            flags.append(
                {
                    "n": n,
                    "in_formula_set": inside,
                    "claimed": n >= 7,
                    "note": "computed set of lengths of 3 disagrees with Z>=7",
                }
            )
    return rows, flags


def verify_goldbach_theorem(B: int, check_l3: bool = False, weak: bool = True) -> GoldbachReport:
    """Compare the lengths of 2 with the Goldbach numbers on ``[4, B]``."""
    if B < 7:
        raise DomainError("bound must be at least 7")
    gold = goldbach_set(B)
    l2 = tuple(l for l in length_set_formula(2, B, True) if 4 <= l <= B)
    gs, ls = set(gold), set(l2)
    discrepancies = [{"n": n, "in_goldbach": n in gs, "in_formula_L2": n in ls} for n in sorted(gs ^ ls)]
    report = GoldbachReport(B, gold, l2, (4, B), discrepancies)
    if weak:
        wg = verify_weak_goldbach(B)
        report.weak_goldbach_ok = wg["ok"]
        report.weak_goldbach_failures = wg["failures"]
    if check_l3:
        report.L3_membership, report.L3_flags = l3_membership(B)
    return report
