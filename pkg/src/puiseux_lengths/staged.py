"""Infinite Puiseux monoids presented as nested finite stages.

Three presentations are supported:

* the elementary monoid ``<1/p : p prime>``, one atom per stage;
* a monoid whose system of sets of lengths contains every finite subset of
  Z>=2 (each stage glues in a rescaled integer monoid realizing the next
  subset), called "full-ssl" here;
* a monoid in which ``{2}`` is never a set of lengths (each stage adds
  ``(a_s + a_t)/p`` for every pair of earlier atoms), called "non-two".

Stages are materialized on request and cached. Every query runs on a finite
truncation, so its answers are subsets of the true sets of lengths; the
audits re-check the construction's invariants by direct computation.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, count
from typing import Callable, Iterator, Optional, Union

from . import kernels, puiseux
from .arith import (
    DEFAULT_PRIME_SEARCH_CAP,
    as_rational,
    format_rational,
    is_prime,
    next_prime_satisfying,
)
from .errors import DomainError, InternalError, ResourceError, StateError
from .puiseux import AtomStream, FGPuiseux
from .realization import RealizationResult, SearchBounds, realize


class Kind(str, enum.Enum):
    ELEMENTARY = "elementary"
    FULL_SSL = "full-ssl"
    NON_TWO = "non-two"


@dataclass(frozen=True)
class PrimePool:
    """Primes ``p`` with ``p % modulus == residue`` (``modulus == 1`` means all primes)."""

    residue: int = 0
    modulus: int = 1

    @property
    def name(self):
        return "all" if self.modulus == 1 else f"{self.residue}mod{self.modulus}"

    def __contains__(self, p):
        return p % self.modulus == self.residue % self.modulus and is_prime(p)

    @classmethod
    def parse(cls, text: str) -> "PrimePool":
        text = text.strip().lower()
        if text == "all":
            return cls()
        m = re.fullmatch(r"(\d+)\s*mod\s*(\d+)", text)
        if not m or int(m.group(2)) < 1:
            raise DomainError(f"bad prime pool {text!r}; use 'all' or e.g. '1mod4'")
        return cls(int(m.group(1)) % int(m.group(2)), int(m.group(2)))


ALL_PRIMES = PrimePool()


@dataclass(frozen=True)
class Witness:
    x: Fraction
    target: tuple


@dataclass(frozen=True)
class Stage:
    index: int
    atoms: tuple
    primes: tuple
    witness: Optional[Witness] = None
    # non-two: the pair (i, j) of 1-based atom indices behind each new atom
    pairs: tuple = ()
    # full-ssl: the realization that was rescaled, and the integer pre-shift
    realization: Optional[RealizationResult] = None
    shift: int = 1

    def to_json(self):
        out = {
            "index": self.index,
            "atoms": [format_rational(a) for a in self.atoms],
            "primes": list(self.primes),
            "witness": None,
        }
        if self.witness is not None:
            out["witness"] = {
                "x": format_rational(self.witness.x),
                "target": list(self.witness.target),
            }
        if self.pairs:
            out["pairs"] = [list(p) for p in self.pairs]
        if self.realization is not None:
            out["realization"] = dict(self.realization.to_json(), shift=self.shift)
        return out


@dataclass
class StagedMonoid:
    """Lazily extended nested union of finitely generated Puiseux monoids.

    Materialization mutates the cache; callers must not extend the same
    object from several threads at once.
    """

    kind: Kind
    prime_pool: PrimePool
    next_stage: Callable[["StagedMonoid"], Stage] = field(repr=False)
    declared_infimum: Optional[Fraction] = None
    stages: list = field(default_factory=list)
    _truncations: dict = field(default_factory=dict, repr=False)

    @property
    def materialized(self) -> int:
        return len(self.stages)

    def materialize(self, n: int) -> "StagedMonoid":
        while len(self.stages) < n:
            self.stages.append(self.next_stage(self))
        return self

    def stage(self, n: int) -> Stage:
        self._require(n)
        return self.stages[n - 1]

    def _require(self, t: int):
        if t < 1:
            raise DomainError("stage indices start at 1")
        if t > len(self.stages):
            raise StateError(f"stage {t} is not materialized (have {len(self.stages)})")

    def atom_sequence(self, t: int) -> tuple:
        """Atoms of stages ``1..t`` in construction order."""
        self._require(t)
        return tuple(a for s in self.stages[:t] for a in s.atoms)

    def cumulative_atoms(self, t: int) -> tuple:
        return tuple(sorted(self.atom_sequence(t)))

    def truncation(self, t: int) -> FGPuiseux:
        """The finitely generated monoid spanned by stages ``1..t`` (normalized)."""
        if t not in self._truncations:
            self._truncations[t] = puiseux.normalize(self.atom_sequence(t))
        return self._truncations[t]

    def atom_stream(self) -> AtomStream:
        def generate():
            for n in count(1):
                self.materialize(n)
                yield from self.stages[n - 1].atoms

        return AtomStream(generate, self.declared_infimum)

    def dump(self) -> list:
        return [s.to_json() for s in self.stages]


def subset_enumeration(n: int) -> frozenset:
    """The ``n``-th nonempty finite subset of Z>=2: bit ``i`` of ``n`` selects ``i + 2``."""
    if n < 1:
        raise DomainError("subset index must be positive")
    return frozenset(i + 2 for i in range(n.bit_length()) if n >> i & 1)


# -- elementary -------------------------------------------------------------


def _elementary_next(M: StagedMonoid) -> Stage:
    prev = M.stages[-1].primes[0] if M.stages else 1
    p = next_prime_satisfying(prev + 1)
    return Stage(len(M.stages) + 1, (Fraction(1, p),), (p,))


def elementary_monoid() -> StagedMonoid:
    """``<1/p : p prime>``; stage ``n`` contributes ``1/p_n``."""
    return StagedMonoid(Kind.ELEMENTARY, ALL_PRIMES, _elementary_next, Fraction(0))


# -- full system of sets of lengths -----------------------------------------


class _FullSSLBuilder:
    def __init__(self, bounds, prime_search_cap):
        self.bounds = bounds
        self.prime_search_cap = prime_search_cap
        self._realized = {}

    def realization(self, S):
        if S not in self._realized:
            self._realized[S] = realize(S, self.bounds)
        return self._realized[S]

    def __call__(self, M: StagedMonoid) -> Stage:
        index = len(M.stages) + 1
        S = subset_enumeration(index)
        try:
            r = self.realization(S)
        except ResourceError as exc:
            exc.args = (f"stage {index}: {exc}",)
            raise
        base_atoms, base_x = r.monoid.atoms, r.element
        used = {p for s in M.stages for p in s.primes}
        prev_max = max(M.stages[-1].atoms) if M.stages else None

        for c in count(1):
            atoms = [c * a for a in base_atoms]
            x = c * base_x
            if prev_max is not None and atoms[0] <= prev_max:
                continue

            def admissible(p, atoms=atoms, x=x):
                if p == 2 or p not in M.prime_pool or p in used:
                    return False
                if any(a % p == 0 for a in atoms):
                    return False
                if prev_max is None:
                    # first stage: bound by the unscaled element and atoms
                    return p > max(2 * x, 2 * atoms[-1])
                f = Fraction(p - 1, p)
                return p > 2 * f * x and p > 2 * f * atoms[-1] and prev_max < f * atoms[0]

            try:
                p = next_prime_satisfying(3, admissible, cap=self.prime_search_cap)
            except ResourceError as exc:
                raise ResourceError(f"stage {index}: prime pool {M.prime_pool.name} exhausted", exc.cap)
            break

        f = Fraction(p - 1, p)
        stage = Stage(
            index=index,
            atoms=tuple(f * a for a in atoms),
            primes=(p,),
            witness=Witness(f * x, tuple(sorted(S))),
            realization=r,
            shift=c,
        )
        problems = _full_ssl_stage_problems(stage, M.stages[-1] if M.stages else None)
        if problems:
            raise InternalError(f"stage {index} violates: {'; '.join(problems)}")
        return stage


def _full_ssl_stage_problems(stage: Stage, previous: Optional[Stage]) -> list:
    """Violations of the four stage conditions (empty when all hold)."""
    out = []
    p = stage.primes[0]
    local = puiseux.normalize(stage.atoms)
    if local.atoms != tuple(sorted(stage.atoms)):
        out.append("stage atoms are not a minimal generating set")
    w = stage.witness
    if not puiseux.is_member(local, w.x) or puiseux.length_set(local, w.x) != w.target:
        out.append("(1) witness length set differs from target")
    if any(a.denominator != p for a in stage.atoms):
        out.append(f"(2) some atom denominator differs from {p}")
    if not (p > 2 * w.x and all(p > 2 * a for a in stage.atoms)):
        out.append("(3) prime not above twice the witness and atoms")
    if previous is not None and not max(previous.atoms) < min(stage.atoms):
        out.append("(4) stage atoms do not exceed the previous stage")
    return out


def build_full_ssl(
    prime_pool: Union[PrimePool, str] = ALL_PRIMES,
    n_stages: int = 1,
    bounds: SearchBounds = SearchBounds(),
    prime_search_cap: int = DEFAULT_PRIME_SEARCH_CAP,
) -> StagedMonoid:
    """Materialize ``n_stages`` stages of the full-ssl construction.

    Stage ``l`` rescales a realization ``(N, x)`` of ``subset_enumeration(l)``
    by ``(p-1)/p`` for the smallest admissible pool prime ``p``, after an
    integer pre-shift that lifts its atoms above the previous stage.
    """
    if isinstance(prime_pool, str):
        prime_pool = PrimePool.parse(prime_pool)
    if n_stages < 1:
        raise DomainError("n_stages must be positive")
    M = StagedMonoid(Kind.FULL_SSL, prime_pool, _FullSSLBuilder(bounds, prime_search_cap))
    M.materialize(n_stages)
    # Stage atoms increase, so the least atom of stage 1 bounds every element.
    M.declared_infimum = min(M.stages[0].atoms)
    return M


# -- no {2} set of lengths ----------------------------------------------------


def _non_two_next(M: StagedMonoid) -> Stage:
    index = len(M.stages) + 1
    if index == 1:
        return Stage(1, (Fraction(1),), ())
    if index == 2:
        return Stage(2, (Fraction(2, 3),), (3,))
    seq = M.atom_sequence(index - 1)
    forbidden = set(puiseux.denominator_primes(seq))
    pairs, atoms, primes = [], [], []
    for s, t in combinations_with_replacement(range(1, len(seq) + 1), 2):
        total = seq[s - 1] + seq[t - 1]
        p = next_prime_satisfying(
            3,
            lambda q: q not in forbidden and total.numerator % q != 0,
        )
        forbidden.add(p)
        pairs.append((s, t))
        atoms.append(total / p)
        primes.append(p)
    return Stage(index, tuple(atoms), tuple(primes), pairs=tuple(pairs))


def build_non_two(n_stages: int = 2) -> StagedMonoid:
    """Materialize ``n_stages`` stages; stage sizes are 1, 2, 5, 20, 230, ..."""
    if n_stages < 2:
        raise DomainError("the non-two construction needs at least 2 stages")
    M = StagedMonoid(Kind.NON_TWO, ALL_PRIMES, _non_two_next)
    M.materialize(n_stages)
    for t in range(2, n_stages + 1):
        if M.truncation(t).atoms != M.cumulative_atoms(t):
            raise InternalError(f"stage {t} atoms are not a minimal generating set")
    return M


def atom_count(n: int) -> int:
    """``k_n`` for the non-two construction."""
    k = 1 if n == 1 else 2
    for _ in range(n - 2):
        k += k * (k + 1) // 2
    return k


# -- queries -------------------------------------------------------------------


def truncated_length_bits(M: StagedMonoid, x, t: int) -> int:
    M._require(t)
    return puiseux._length_bits_over(M.atom_sequence(t), as_rational(x))


def truncated_length_set(M: StagedMonoid, x, t: int) -> tuple:
    """Set of lengths of ``x`` over the atoms of stages ``1..t``."""
    return tuple(kernels.bits_to_list(truncated_length_bits(M, x, t)))


def witness_length_two(M: Union[FGPuiseux, StagedMonoid]):
    """An element whose set of lengths is ``{2}``, with that set as certificate.

    Needs a certified positive infimum ``q`` of the nonzero elements. If
    ``q`` is an atom the witness is ``2q``; otherwise it is ``2a`` for the
    least atom with ``q < a < 3q/2`` (three atoms already exceed ``3q``).
    """
    if isinstance(M, FGPuiseux):
        atoms, q = M.atoms, M.atoms[0]
        lengths = lambda x: puiseux.length_set(M, x)
    else:
        q = M.declared_infimum
        if M.materialized == 0:
            raise StateError("no stage materialized")
        atoms = M.cumulative_atoms(M.materialized)
        lengths = lambda x: truncated_length_set(M, x, M.materialized)
    if q is None or q <= 0:
        raise DomainError("infimum of the monoid is not certified positive")
    if q in atoms:
        x = 2 * q
    else:
        candidates = [a for a in atoms if q < a < Fraction(3, 2) * q]
        if not candidates:
            raise StateError("no materialized atom lies in (q, 3q/2)")
        x = 2 * candidates[0]
    cert = lengths(x)
    if cert != (2,):
        raise InternalError(f"witness {x} has lengths {cert}")
    return x, cert


def _pair_atom(M: StagedMonoid, pair, stage_index):
    """1-based index of the atom created for ``pair`` at stage ``stage_index``."""
    M._require(stage_index)
    stage = M.stages[stage_index - 1]
    offset = sum(len(s.atoms) for s in M.stages[: stage_index - 1])
    pos = stage.pairs.index(pair)
    return offset + pos + 1, stage.primes[pos]


def _stage_of(M: StagedMonoid, index: int) -> int:
    total = 0
    for s in M.stages:
        total += len(s.atoms)
        if index <= total:
            return s.index
    raise StateError(f"atom {index} is not materialized")


def longer_factorization(M: StagedMonoid, i: int, j: int):
    """The factorization ``p*a`` of ``a_i + a_j`` through the atom built for the pair.

    Returns the exponent vector over :meth:`StagedMonoid.atom_sequence` of
    that stage, and its length ``p``.
    """
    if M.kind is not Kind.NON_TWO:
        raise DomainError("longer_factorization needs a non-two monoid")
    if i < 1 or j < 1:
        raise DomainError("atom indices start at 1")
    i, j = sorted((i, j))
    # Stage 2 is a seed without pair atoms, so pairs inside A_1 are handled at stage 3.
    needed = max(_stage_of(M, j), 2) + 1 if j <= sum(len(s.atoms) for s in M.stages) else None
    if needed is None or needed > M.materialized:
        needed = needed or "beyond the materialized stages"
        raise StateError(f"pair ({i}, {j}) is processed at stage {needed}, not materialized")
    index, p = _pair_atom(M, (i, j), needed)
    z = [0] * len(M.atom_sequence(needed))
    z[index - 1] = p
    return tuple(z), p


def escalation_chain(M: StagedMonoid, i: int, j: int) -> list:
    """Factorizations of ``a_i + a_j`` of strictly increasing length.

    Starts from ``a_i + a_j`` and the factorization ``p*a`` of
    :func:`longer_factorization`; each further step trades two copies of the
    newest atom ``a`` for ``p'`` copies of the atom ``2a/p'`` built at the
    next stage. Each entry is ``(stage, {atom index: multiplicity}, length)``.
    """
    i, j = sorted((i, j))
    first, p = longer_factorization(M, i, j)
    stage = _stage_of(M, first.index(p) + 1)
    zi = {i: 1} if i != j else {i: 2}
    if i != j:
        zi[j] = 1
    chain = [(_stage_of(M, j), zi, 2)]
    z = {first.index(p) + 1: p}
    chain.append((stage, dict(z), p))
    newest = first.index(p) + 1
    while stage < M.materialized:
        stage += 1
        nxt, q = _pair_atom(M, (newest, newest), stage)
        z[newest] -= 2
        if z[newest] == 0:
            del z[newest]
        z[nxt] = q
        chain.append((stage, dict(z), sum(z.values())))
        newest = nxt
    return chain


# -- audits --------------------------------------------------------------------


@dataclass
class AuditReport:
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append({"check": name, "ok": bool(ok), "detail": detail})

    @property
    def ok(self):
        return all(c["ok"] for c in self.checks)

    def to_json(self):
        return {"ok": self.ok, "checks": self.checks}


def _check_nesting_and_minimality(M: StagedMonoid, report: AuditReport, start=1):
    for t in range(start, M.materialized + 1):
        if t > 1:
            prev = set(M.atom_sequence(t - 1))
            cur = set(M.atom_sequence(t))
            report.add(f"nesting A{t - 1} < A{t}", prev < cur)
        normalized = M.truncation(t).atoms
        report.add(f"minimal A{t}", normalized == M.cumulative_atoms(t))


def audit_full_ssl(M: StagedMonoid) -> AuditReport:
    """Stage conditions, nesting, minimality and witness stabilization."""
    report = AuditReport()
    for n, stage in enumerate(M.stages, start=1):
        problems = _full_ssl_stage_problems(stage, M.stages[n - 2] if n > 1 else None)
        report.add(f"conditions stage {n}", not problems, "; ".join(problems))
        target = tuple(sorted(subset_enumeration(n)))
        report.add(f"target stage {n}", stage.witness.target == target)
    _check_nesting_and_minimality(M, report)
    for ell in range(1, M.materialized + 1):
        stage = M.stages[ell - 1]
        for t in range(ell, M.materialized + 1):
            got = truncated_length_set(M, stage.witness.x, t)
            report.add(
                f"stabilization x{ell} at t={t}",
                got == stage.witness.target,
                f"got {list(got)}",
            )
    return report


def audit_non_two(M: StagedMonoid) -> AuditReport:
    """Nesting, minimality, and two-implies-more for pairs of earlier atoms."""
    report = AuditReport()
    _check_nesting_and_minimality(M, report, start=2)
    top = M.materialized
    if top >= 3:
        k = len(M.atom_sequence(top - 1))
        for i, j in combinations_with_replacement(range(1, k + 1), 2):
            seq = M.atom_sequence(top)
            x = seq[i - 1] + seq[j - 1]
            lengths = truncated_length_set(M, x, top)
            odd_long = [l for l in lengths if l > 2 and l % 2 == 1]
            report.add(
                f"pair ({i}, {j})",
                2 in lengths and len(lengths) >= 2 and bool(odd_long),
                f"lengths {list(lengths)[:8]}",
            )
        k_prev = len(M.atom_sequence(top - 2))
        for i, j in combinations_with_replacement(range(1, k_prev + 1), 2):
            if max(_stage_of(M, j), 2) + 1 >= top:
                continue  # processed at the top stage, nothing to escalate into yet
            chain = escalation_chain(M, i, j)
            seq = M.atom_sequence(top)
            x = seq[i - 1] + seq[j - 1]
            lens = [c[2] for c in chain]
            sums_ok = all(sum(c * seq[a - 1] for a, c in z.items()) == x for _, z, _ in chain)
            increasing = all(a < b for a, b in zip(lens, lens[1:]))
            reaches_top = chain[-1][0] == top
            report.add(f"escalation ({i}, {j})", sums_ok and increasing and reaches_top and len(lens) >= 3, str(lens))
    return report
