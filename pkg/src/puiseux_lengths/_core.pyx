# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled length-set kernels; mirrors ``_fallback`` exactly."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free, malloc


cdef long* _copy_atoms(atoms, Py_ssize_t k) except NULL:
    cdef long* a = <long*> malloc(k * sizeof(long))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(k):
        a[i] = atoms[i]
    return a


cdef inline void _or_shift1(uint64_t* dst, const uint64_t* src, Py_ssize_t words) noexcept nogil:
    # dst |= src << 1
    cdef Py_ssize_t w
    cdef uint64_t carry = 0, x
    for w in range(words):
        x = src[w]
        dst[w] |= (x << 1) | carry
        carry = x >> 63


cdef object _row_to_int(uint64_t* row, Py_ssize_t words):
    return int.from_bytes((<char*> row)[: words * 8], "little")


def length_table(atoms, long n):
    """Length bitsets of every value ``0..n`` over the ascending ``atoms``."""
    cdef Py_ssize_t k = len(atoms)
    cdef long* a = _copy_atoms(atoms, k)
    cdef long amin = a[0]
    cdef Py_ssize_t words = (n // amin + 1) // 64 + 1
    cdef uint64_t* table = <uint64_t*> calloc((n + 1) * words, sizeof(uint64_t))
    cdef long v
    cdef Py_ssize_t i, used
    if table == NULL:
        free(a)
        raise MemoryError()
    try:
        table[0] = 1
        with nogil:
            for v in range(1, n + 1):
                used = (v // amin + 1) // 64 + 1
                if used > words:
                    used = words
                for i in range(k):
                    if a[i] > v:
                        break
                    _or_shift1(table + v * words, table + (v - a[i]) * words, used)
        return [_row_to_int(table + v * words, words) for v in range(n + 1)]
    finally:
        free(table)
        free(a)


def length_bits(atoms, long n):
    """Length bitset of ``n`` alone, keeping only a window of ``max(atoms)+1`` rows."""
    if n < 0:
        return 0
    cdef Py_ssize_t k = len(atoms)
    cdef long* a = _copy_atoms(atoms, k)
    cdef long amin = a[0]
    cdef long width = a[k - 1] + 1
    cdef Py_ssize_t words = (n // amin + 1) // 64 + 1
    cdef uint64_t* ring = <uint64_t*> calloc(width * words, sizeof(uint64_t))
    cdef long v
    cdef Py_ssize_t i, w, used
    cdef uint64_t* row
    if ring == NULL:
        free(a)
        raise MemoryError()
    try:
        ring[0] = 1
        with nogil:
            for v in range(1, n + 1):
                row = ring + (v % width) * words
                for w in range(words):
                    row[w] = 0
                used = (v // amin + 1) // 64 + 1
                if used > words:
                    used = words
                for i in range(k):
                    if a[i] > v:
                        break
                    _or_shift1(row, ring + ((v - a[i]) % width) * words, used)
        return _row_to_int(ring + (n % width) * words, words)
    finally:
        free(ring)
        free(a)


def find_realizing_element(atoms, unsigned long long target, int max_len, long max_element):
    """First ``x <= max_element`` whose length bitset equals ``target``.

    Lengths above ``max_len`` collapse into one overflow bit. Returns -2
    when ``atoms`` is not minimal and -1 when no element matches.
    """
    if max_len > 61:
        raise ValueError("max_len must be at most 61")
    cdef Py_ssize_t k = len(atoms)
    cdef long* a = _copy_atoms(atoms, k)
    cdef long top = max_element if max_element > a[k - 1] else a[k - 1]
    cdef uint64_t full = ((<uint64_t> 1) << (max_len + 1)) - 1
    cdef uint64_t over = (<uint64_t> 1) << (max_len + 1)
    cdef uint64_t* masks = <uint64_t*> calloc(top + 1, sizeof(uint64_t))
    cdef uint64_t acc
    cdef long v, result = -1
    cdef Py_ssize_t i
    if masks == NULL:
        free(a)
        raise MemoryError()
    try:
        with nogil:
            masks[0] = 1
            for v in range(1, top + 1):
                acc = 0
                for i in range(k):
                    if a[i] > v:
                        break
                    acc |= masks[v - a[i]]
                acc <<= 1
                if acc & ~full:
                    acc = (acc & full) | over
                masks[v] = acc
            for i in range(k):
                if masks[a[i]] != 2:
                    result = -2
                    break
            if result != -2:
                for v in range(1, max_element + 1):
                    if masks[v] == target:
                        result = v
                        break
        return result
    finally:
        free(masks)
        free(a)
