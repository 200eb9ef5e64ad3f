"""Pure-Python length-set kernels.

Same API as the compiled ``_core`` module. A set of lengths is encoded as a
Python int used as a bitset: bit ``l`` is set iff ``l`` is a length.
"""


def length_table(atoms, n):
    """Length bitsets of every value ``0..n`` over the ascending ``atoms``."""
    table = [0] * (n + 1)
    table[0] = 1
    for v in range(1, n + 1):
        acc = 0
        for a in atoms:
            if a > v:
                break
            acc |= table[v - a]
        table[v] = acc << 1
    return table


def length_bits(atoms, n):
    """Length bitset of ``n`` alone, keeping only a window of ``max(atoms)+1`` rows."""
    if n < 0:
        return 0
    width = atoms[-1] + 1
    ring = [0] * width
    ring[0] = 1
    for v in range(1, n + 1):
        acc = 0
        for a in atoms:
            if a > v:
                break
            acc |= ring[(v - a) % width]
        ring[v % width] = acc << 1
    return ring[n % width]


def find_realizing_element(atoms, target, max_len, max_element):
    """First ``x <= max_element`` whose length bitset equals ``target``.

    Lengths above ``max_len`` collapse into one overflow bit, so the masks
    stay bounded. Returns -2 when ``atoms`` is not a minimal generating
    set and -1 when no element matches.
    """
    full = (1 << (max_len + 1)) - 1
    over = 1 << (max_len + 1)
    top = max(max_element, atoms[-1])
    masks = [0] * (top + 1)
    masks[0] = 1
    for v in range(1, top + 1):
        acc = 0
        for a in atoms:
            if a > v:
                break
            acc |= masks[v - a]
        acc <<= 1
        if acc & ~full:
            acc = (acc & full) | over
        masks[v] = acc
    for a in atoms:
        if masks[a] != 2:
            return -2
    for v in range(1, max_element + 1):
        if masks[v] == target:
            return v
    return -1
