"""Backend selection for the length-set kernels.

The compiled ``_core`` extension is used when it imports; otherwise the
pure-Python ``_fallback`` takes over. Setting ``PUISEUX_PURE=1`` forces the
fallback (used by the benchmark and by the backend-parity tests).
"""

import os

from . import _fallback

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

if _core is not None and not os.environ.get("PUISEUX_PURE"):
    _impl = _core
    BACKEND = "cython"
else:
    _impl = _fallback
    BACKEND = "python"

# 64-bit masks in the compiled kernel leave room for 62 length bits.
_MAX_MASK_LEN = 61


def backends():
    """Available kernel modules by name."""
    out = {"python": _fallback}
    if _core is not None:
        out["cython"] = _core
    return out


def length_table(atoms, n):
    return _impl.length_table(list(atoms), n)


def length_bits(atoms, n):
    return _impl.length_bits(list(atoms), n)


def find_realizing_element(atoms, target, max_len, max_element):
    impl = _impl if max_len <= _MAX_MASK_LEN else _fallback
    return impl.find_realizing_element(list(atoms), target, max_len, max_element)


def bits_to_list(bits):
    """Set bit positions of a nonnegative int, ascending."""
    out = []
    pos = 0
    while bits:
        low = bits & -bits
        pos = low.bit_length() - 1
        out.append(pos)
        bits ^= low
    return out


def list_to_bits(values):
    bits = 0
    for v in values:
        bits |= 1 << v
    return bits


def sumset_bits(a, b):
    """Bitset of ``{x + y : x in A, y in B}``."""
    if not a or not b:
        return 0
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    for pos in bits_to_list(a):
        out |= b << pos
    return out
