import json
import os
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from puiseux_lengths import puiseux
from puiseux_lengths.errors import DomainError, StateError
from puiseux_lengths.puiseux import Tri, has_zero_limit_point, normalize
from puiseux_lengths.staged import (
    PrimePool,
    atom_count,
    audit_full_ssl,
    audit_non_two,
    build_full_ssl,
    build_non_two,
    elementary_monoid,
    escalation_chain,
    longer_factorization,
    subset_enumeration,
    truncated_length_set,
    witness_length_two,
)

from conftest import GOLDENS
from oracles import brute_lengths


@pytest.fixture(scope="module")
def full_ssl():
    return build_full_ssl("all", 8)


@pytest.fixture(scope="module")
def non_two():
    return build_non_two(4)


def read_golden(name):
    with open(os.path.join(GOLDENS, name)) as fh:
        return [json.loads(line) for line in fh]


# -- elementary


def test_elementary_stages():
    E = elementary_monoid().materialize(4)
    assert E.atom_sequence(4) == (F(1, 2), F(1, 3), F(1, 5), F(1, 7))
    assert normalize(E.atom_sequence(2)).atoms == E.cumulative_atoms(2)
    assert all(s.witness is None for s in E.stages)
    assert truncated_length_set(E, 2, 4) == (4, 5, 6, 7, 8, 9, 10, 12, 14)
    assert has_zero_limit_point(E.atom_stream(), 6) is Tri.YES


def test_elementary_matches_brute_force():
    E = elementary_monoid().materialize(4)
    for x in (F(1), F(3, 2), F(13, 10), F(2)):
        assert set(truncated_length_set(E, x, 4)) == brute_lengths(E.atom_sequence(4), x)


# -- subset enumeration


def test_subset_enumeration_examples():
    assert subset_enumeration(1) == {2}
    assert subset_enumeration(2) == {3}
    assert subset_enumeration(3) == {2, 3}
    with pytest.raises(DomainError):
        subset_enumeration(0)


def test_subset_enumeration_is_bijective_on_prefix():
    seen = {subset_enumeration(n) for n in range(1, 2**8)}
    assert len(seen) == 2**8 - 1
    assert seen == {frozenset(i + 2 for i in range(8) if c >> i & 1) for c in range(1, 2**8)}


# -- full system of sets of lengths


def test_full_ssl_first_stage(full_ssl):
    s = full_ssl.stage(1)
    assert s.atoms == (F(4, 5),) and s.primes == (5,)
    assert s.witness.x == F(8, 5)
    assert truncated_length_set(full_ssl, F(8, 5), 1) == (2,)


def test_full_ssl_conditions(full_ssl):
    prev = None
    for s in full_ssl.stages:
        (p,) = s.primes
        assert all(a.denominator == p for a in s.atoms)
        assert p > 2 * s.witness.x and all(p > 2 * a for a in s.atoms)
        if prev is not None:
            assert min(s.atoms) > max(prev.atoms)
        prev = s
    assert len({s.primes[0] for s in full_ssl.stages}) == len(full_ssl.stages)


def test_full_ssl_stabilization(full_ssl):
    top = full_ssl.materialized
    for l in range(1, top + 1):
        x = full_ssl.stage(l).witness.x
        for t in range(l, top + 1):
            assert set(truncated_length_set(full_ssl, x, t)) == subset_enumeration(l)


def test_full_ssl_minimal_and_nested(full_ssl):
    for t in range(1, full_ssl.materialized + 1):
        assert normalize(full_ssl.atom_sequence(t)).atoms == full_ssl.cumulative_atoms(t)
        if t > 1:
            assert set(full_ssl.cumulative_atoms(t - 1)) < set(full_ssl.cumulative_atoms(t))


def test_full_ssl_audit(full_ssl):
    report = audit_full_ssl(full_ssl)
    assert report.ok, [c for c in report.checks if not c["ok"]]


def test_full_ssl_prime_pools():
    P = build_full_ssl("1mod4", 4)
    Q = build_full_ssl(PrimePool(3, 4), 4)
    assert all(s.primes[0] % 4 == 1 for s in P.stages)
    assert all(s.primes[0] % 4 == 3 for s in Q.stages)
    assert [s.witness.target for s in P.stages] == [s.witness.target for s in Q.stages]
    with pytest.raises(DomainError):
        PrimePool.parse("1mod")


def test_full_ssl_bf_certified(full_ssl):
    assert full_ssl.declared_infimum == F(4, 5)
    assert puiseux.certifies_bf(full_ssl.atom_stream(), 4)


def test_full_ssl_golden():
    M = build_full_ssl("all", 6)
    assert M.dump() == read_golden("full_ssl_6.jsonl")
    Q = build_full_ssl("3mod4", 4)
    assert Q.dump() == read_golden("full_ssl_3mod4_4.jsonl")


# -- no {2}


def test_non_two_seed_and_stage_three(non_two):
    assert non_two.atom_sequence(2) == (F(1), F(2, 3))
    s3 = non_two.stage(3)
    assert s3.pairs == ((1, 1), (1, 2), (2, 2))
    assert s3.primes == (5, 7, 11)
    assert s3.atoms == (F(2, 5), F(5, 21), F(4, 33))
    assert normalize(["1", "2/3"]).atoms == non_two.cumulative_atoms(2)


def test_non_two_counts(non_two):
    assert [atom_count(n) for n in range(1, 6)] == [1, 2, 5, 20, 230]
    assert [len(non_two.atom_sequence(n)) for n in range(1, 5)] == [1, 2, 5, 20]


def test_non_two_minimal_by_brute_force(non_two):
    atoms = non_two.atom_sequence(3)
    for i, a in enumerate(atoms):
        others = atoms[:i] + atoms[i + 1:]
        assert not brute_lengths(others, a) - {0}


def test_non_two_prime_rule(non_two):
    for n in range(3, 5):
        s = non_two.stage(n)
        forbidden = set(puiseux.denominator_primes(non_two.atom_sequence(n - 1)))
        assert len(set(s.primes)) == len(s.primes)
        assert not forbidden & set(s.primes)
        assert all(p % 2 == 1 for p in s.primes)


def test_longer_factorization_examples(non_two):
    assert longer_factorization(non_two, 1, 1) == ((0, 0, 5, 0, 0), 5)
    assert longer_factorization(non_two, 1, 2)[1] == 7
    assert longer_factorization(non_two, 2, 2)[1] == 11


def test_longer_factorization_state_error():
    M = build_non_two(3)
    with pytest.raises(StateError, match="stage 4"):
        longer_factorization(M, 1, 3)


def test_two_implies_more(non_two):
    k = len(non_two.atom_sequence(3))
    seq = non_two.atom_sequence(4)
    for i in range(1, k + 1):
        for j in range(i, k + 1):
            lengths = truncated_length_set(non_two, seq[i - 1] + seq[j - 1], 4)
            assert 2 in lengths
            assert any(l > 2 and l % 2 for l in lengths)


def test_escalation(non_two):
    for i, j in ((1, 1), (1, 2), (2, 2)):
        lens = [c[2] for c in escalation_chain(non_two, i, j)]
        assert len(lens) == 3 and lens == sorted(set(lens))


def test_non_two_audit(non_two):
    report = audit_non_two(non_two)
    assert report.ok, [c for c in report.checks if not c["ok"]]


def test_non_two_golden(non_two):
    assert non_two.dump() == read_golden("non_two_4.jsonl")


def test_non_two_needs_two_stages():
    with pytest.raises(DomainError):
        build_non_two(1)


def test_non_two_stream_has_no_certified_bound(non_two):
    assert has_zero_limit_point(non_two.atom_stream(), 5) is Tri.UNKNOWN


# -- truncations


def test_truncation_requires_materialized_stage():
    M = build_non_two(2)
    with pytest.raises(StateError):
        truncated_length_set(M, 2, 3)
    with pytest.raises(DomainError):
        truncated_length_set(M, 2, 0)


def test_truncated_zero(full_ssl, non_two):
    assert truncated_length_set(full_ssl, 0, 3) == (0,)
    assert truncated_length_set(non_two, 0, 2) == (0,)


@given(st.integers(0, 12), st.integers(1, 3))
def test_truncation_monotone(k, t):
    M = build_non_two(4)
    x = k * F(1, 3)
    assert set(truncated_length_set(M, x, t)) <= set(truncated_length_set(M, x, t + 1))


# -- witnesses


@pytest.mark.parametrize("gens, x", [(["2", "3"], F(4)), (["1", "2/3"], F(4, 3)), (["4/5"], F(8, 5))])
def test_witness_examples(gens, x):
    assert witness_length_two(normalize(gens)) == (x, (2,))


def test_witness_on_staged(full_ssl):
    x, cert = witness_length_two(full_ssl)
    assert (x, cert) == (F(8, 5), (2,))


def test_witness_needs_certified_infimum(non_two):
    with pytest.raises(DomainError):
        witness_length_two(non_two)


def test_two_pool_truncations():
    P, Q = build_full_ssl("1mod4", 8), build_full_ssl("3mod4", 8)
    # Both first stages rescale the same realization of {2}, so they must match.
    assert puiseux.isomorphism_factor(P.truncation(1), Q.truncation(1)) == F(14, 15)
    for s in range(1, 9):
        for t in range(1, 9):
            if (s, t) != (1, 1):
                assert puiseux.isomorphism_factor(P.truncation(s), Q.truncation(t)) is None, (s, t)
