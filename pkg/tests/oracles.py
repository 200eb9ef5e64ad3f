"""Slow reference implementations used only by the tests."""

from fractions import Fraction
from itertools import product


def brute_lengths(atoms, x):
    """Set of lengths of ``x`` by exhaustive exponent vectors (works for rationals)."""
    atoms = [Fraction(a) for a in atoms]
    x = Fraction(x)
    if x == 0:
        return {0}
    out = set()

    def walk(i, rest, length):
        if rest == 0:
            out.add(length)
            return
        if i == len(atoms):
            return
        c = 0
        while c * atoms[i] <= rest:
            walk(i + 1, rest - c * atoms[i], length + c)
            c += 1

    walk(0, x, 0)
    return out


def brute_factorizations(atoms, n):
    ranges = [range(n // a + 1) for a in atoms]
    return [z for z in product(*ranges) if sum(c * a for c, a in zip(z, atoms)) == n]


def brute_minimal(gens):
    """Generators that are not sums of two nonzero elements of the monoid."""
    gens = sorted(set(gens))
    keep = []
    for g in gens:
        if not any(brute_lengths([h for h in gens if h < g], g) - {0}):
            keep.append(g)
    return keep
