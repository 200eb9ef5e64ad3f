"""Bounded search for an integer submonoid and element with a prescribed set of lengths."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Iterable

from . import kernels, numsgp
from .errors import DomainError, InternalError, ResourceError
from .numsgp import IntSubmonoid


@dataclass(frozen=True)
class SearchBounds:
    max_atoms: int = 4
    max_atom_value: int = 40
    max_element: int = 400

    def __post_init__(self):
        if min(self.max_atoms, self.max_atom_value, self.max_element) <= 0:
            raise DomainError("search bounds must be positive")


@dataclass(frozen=True)
class RealizationResult:
    monoid: IntSubmonoid
    element: int
    verified_set: tuple

    def to_json(self):
        return {
            "atoms": list(self.monoid.atoms),
            "element": self.element,
            "lengths": list(self.verified_set),
        }


class NotFound(ResourceError):
    """No submonoid within the bounds realizes the requested set."""

    def __init__(self, target, bounds):
        super().__init__(f"no realization of {sorted(target)} within {bounds}")
        self.target = tuple(sorted(target))
        self.bounds = bounds

    def to_json(self):
        return {"error": "not_found", "set": list(self.target), "bounds": asdict(self.bounds)}


def _check_target(S) -> tuple:
    values = set()
    for s in S:
        if isinstance(s, bool) or not isinstance(s, int):
            raise DomainError(f"set of lengths must contain integers: {S!r}")
        values.add(s)
    values = sorted(values)
    if not values:
        raise DomainError("set of lengths must be nonempty")
    if values[0] < 2:
        raise DomainError(f"lengths must be at least 2: {values}")
    return tuple(values)


def verify_realization(r: RealizationResult, S: Iterable[int]) -> bool:
    """Recompute the set of lengths from scratch and compare with ``S``."""
    return numsgp.length_set(r.monoid, r.element) == tuple(sorted(set(S)))


def realize(S: Iterable[int], bounds: SearchBounds = SearchBounds()) -> RealizationResult:
    """First ``(N, x)`` in the fixed search order with ``L_N(x) = S``.

    Singletons ``{m}`` are answered by ``(<1>, m)``. Otherwise generator
    tuples are tried by atom count, then lexicographically, and for each
    tuple elements are scanned upward; non-minimal tuples are skipped.
    """
    target = _check_target(S)
    if len(target) == 1:
        result = RealizationResult(IntSubmonoid((1,)), target[0], target)
    else:
        result = _search(target, bounds)
    if not verify_realization(result, target):
        raise InternalError(f"realization {result} does not verify for {target}")
    return result


def _search(target, bounds):
    mask = kernels.list_to_bits(target)
    max_len = target[-1]
    for k in range(2, bounds.max_atoms + 1):
        # an atom 1 divides everything, so it only appears in <1>
        for atoms in combinations(range(2, bounds.max_atom_value + 1), k):
            x = kernels.find_realizing_element(atoms, mask, max_len, bounds.max_element)
            if x >= 0:
                N = IntSubmonoid(atoms)
                return RealizationResult(N, x, numsgp.length_set(N, x))
    raise NotFound(target, bounds)
