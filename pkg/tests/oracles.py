"""Independent brute-force oracles used to pin expected values in the tests.

Everything here is deliberately written against the production code style:
dense bit lists, explicit graph closures, exhaustive enumeration, long
division. None of it imports the production generators.
"""

from __future__ import annotations

import itertools

import numpy as np


def all_supports(n):
    """All 2^n supports as ascending tuples."""
    out = []
    for h in range(n + 1):
        out.extend(itertools.combinations(range(n), h))
    return out


def lw_of(support):
    return sum(j + 1 for j in support)


def ilw_of(support):
    return sum((i + 1) * (j + 1) for i, j in enumerate(support))


# ---------------------------------------------------------------------------
# UPO: explicit closure of the two covering moves


def upo_covers(support, n):
    """Direct successors of a pattern under the addition and right-swap moves."""
    members = set(support)
    succ = []
    for t in range(n):
        if t not in members:
            succ.append(tuple(sorted(members | {t})))  # addition at t
    for t in support:
        if t + 1 < n and t + 1 not in members:
            moved = (members - {t}) | {t + 1}
            succ.append(tuple(sorted(moved)))  # right swap t -> t+1
    return succ


def bfs_upo_closure(n):
    """strict_reach[a] = set of patterns strictly above a in the closure."""
    nodes = all_supports(n)
    succ = {a: set(upo_covers(a, n)) for a in nodes}
    reach = {}
    for a in nodes:
        seen = set()
        frontier = list(succ[a])
        while frontier:
            b = frontier.pop()
            if b in seen:
                continue
            seen.add(b)
            frontier.extend(succ[b])
        reach[a] = seen
    return reach


# ---------------------------------------------------------------------------
# Dense 1-based transliteration of the sequential LWO algorithms


def dense_lw(bits):
    return sum(i + 1 for i, b in enumerate(bits) if b)


def dense_max_integer_partition(n, k):
    if k == 0:
        return [0] * n
    bits = [0] * n
    for i in range(n, 0, -1):
        if i <= k:
            bits[i - 1] = 1
            k -= i
            if k == 0:
                return bits
    raise ValueError(f"weight {k} infeasible on {n} positions")


def dense_is_last(bits):
    n = len(bits)
    k = dense_lw(bits)
    if k == 0:
        return True
    for i in range(n, 0, -1):
        if i * (i - 1) < 2 * k:
            if bits[i - 1] == 0:
                return False
            k -= i
            if k == 0:
                return True
    raise AssertionError("unreachable for consistent inputs")


def dense_next_pattern(bits):
    n = len(bits)
    lw = dense_lw(bits)
    if dense_is_last(bits):
        return dense_max_integer_partition(n, lw + 1)  # ValueError when done
    work = list(bits)
    for _ in range(n + 1):
        lm = next(i for i in range(3, n + 1) if work[i - 1] == 1)
        r = sum(i for i in range(lm + 1, n + 1) if work[i - 1] == 1)
        if lm * (lm - 1) // 2 + r < lw:
            for i in range(lm):
                work[i] = 0
        else:
            head = dense_max_integer_partition(lm - 1, lw - r)
            return head + [0] + work[lm:]
    raise AssertionError("sweep did not terminate")


def dense_lwo_order(n):
    """Full LWO sequence via the dense transliteration, as support tuples."""
    bits = [0] * n
    out = [tuple()]
    while True:
        try:
            bits = dense_next_pattern(bits)
        except ValueError:
            return out
        out.append(tuple(i for i, b in enumerate(bits) if b))


def sorted_lwo_order(n):
    """Closed-form characterization: ascending LW, then descending
    lexicographic order of the descending parts tuple."""
    def key(supp):
        return (lw_of(supp), tuple(-(j + 1) for j in reversed(supp)))

    return sorted(all_supports(n), key=key)


def sorted_ilwo_order(n):
    return sorted(all_supports(n), key=lambda s: (ilw_of(s), len(s), s))


# ---------------------------------------------------------------------------
# Partitions into distinct parts


def count_distinct_partitions(total, max_part):
    """Number of partitions of ``total`` into distinct parts <= max_part."""
    counts = np.zeros(total + 1, dtype=np.int64)
    counts[0] = 1
    for part in range(1, max_part + 1):
        for s in range(total, part - 1, -1):
            counts[s] += counts[s - part]
    return int(counts[total])


# ---------------------------------------------------------------------------
# h <= 3 iLW level sets by direct formula enumeration


def h3_level(weight, n):
    """All patterns with iLW == weight, Hamming weight <= 3, indices < n."""
    out = []
    if weight == 0:
        return [()]
    if 1 <= weight <= n:
        out.append((weight - 1,))
    # (a+1) + 2(b+1) = weight
    for b in range(n):
        a = weight - 3 - 2 * b
        if 0 <= a < b:
            out.append((a, b))
    # (a+1) + 2(b+1) + 3(c+1) = weight
    for c in range(n):
        for b in range(c):
            a = weight - 6 - 2 * b - 3 * c
            if 0 <= a < b:
                out.append((a, b, c))
    return sorted(out)


# ---------------------------------------------------------------------------
# Polynomial / matrix oracles for the codes


def gf2_poly_from_bits(bits):
    value = 0
    for i, b in enumerate(bits):
        if b:
            value |= 1 << i
    return value


def gf2_long_division_remainder(value, divisor):
    """Schoolbook remainder of binary polynomials (MSB-down subtraction)."""
    dd = divisor.bit_length() - 1
    while value.bit_length() - 1 >= dd and value:
        value ^= divisor << (value.bit_length() - 1 - dd)
    return value


def kronecker_polar_matrix(n):
    """F^{(x)log2 n} built by repeated explicit Kronecker products."""
    f = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    mat = np.array([[1]], dtype=np.uint8)
    size = 1
    while size < n:
        mat = np.kron(mat, f) % 2
        size *= 2
    return mat


def crc_remainder_bits(bits, poly):
    """Bitwise CRC remainder of a bit stream (first bit = highest power)."""
    deg = poly.bit_length() - 1
    reg = list(bits) + [0] * deg
    for i in range(len(bits)):
        if reg[i]:
            for t in range(deg + 1):
                reg[i + t] ^= (poly >> (deg - t)) & 1
    return reg[len(bits):]
