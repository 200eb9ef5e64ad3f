"""Default resource caps, overridable through ``PUISEUX_CAPS``.

The variable holds comma separated ``name=value`` pairs, e.g.
``PUISEUX_CAPS="factorization_cap=5000,prime_search_cap=100000"``.
"""

import os
from dataclasses import dataclass, fields, replace

from .errors import DomainError


@dataclass(frozen=True)
class Caps:
    factorization_cap: int = 10**6
    prime_search_cap: int = 10**6
    max_atoms: int = 4
    max_atom_value: int = 40
    max_element: int = 400

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise DomainError(f"{f.name} must be positive")


def parse_caps(text, base=None):
    base = base or Caps()
    known = {f.name for f in fields(Caps)}
    updates = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or name not in known:
            raise DomainError(f"bad PUISEUX_CAPS entry {item!r}")
        try:
            updates[name] = int(value)
        except ValueError:
            raise DomainError(f"bad PUISEUX_CAPS entry {item!r}") from None
    return replace(base, **updates)


def default_caps():
    return parse_caps(os.environ.get("PUISEUX_CAPS", ""))
