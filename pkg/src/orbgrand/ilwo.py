"""Improved logistic weight order (iLWO): exact and approximate generation.

Exact sequence
--------------
Patterns are emitted in ascending (iLW, Hamming weight, lexicographic
support) order by a best-first search over a generation tree with two moves:

* child:   append index ``max(support) + 1`` (flip a new trailing position)
* sibling: bump the largest support index up by one (a right swap of the
  top element, whose next slot is always free)

Every nonempty pattern has exactly one parent under these moves, so no
dedup record is needed, and both moves strictly increase iLW, so the heap
minimum is always the globally next pattern. Memory stays proportional to
the frontier instead of the full 2^n space.

Approximate sequence (h <= 3)
-----------------------------
A low-complexity generator suitable for shift-register hardware: for each
desired weight ``dw`` it emits the single h=1 pattern, the complete h=2
family via a constant-weight sweep (k+1) + 2(w+1) = dw, and h=3 patterns
from one or two seeds (0, m, n) advanced by a small state machine, each
expanded along its constant-weight diagonal (a+1, b+1, c-1). The h=3 part
intentionally misses some seeds at large weights; it is an approximation,
and the tests measure (rather than assert) its coverage of the exact h<=3
levels.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

__all__ = [
    "IlwoExactGenerator",
    "ilwo_sequence",
    "ApproxIlwoState",
    "approx_next_weight",
    "create_remaining_h3",
    "ApproxIlwoGenerator",
    "approx_sequence",
]


class IlwoExactGenerator:
    """Iterator over the exact iLWO sequence for length-``n`` patterns.

    ``h_max`` prunes child moves once the cap is reached; since siblings
    preserve Hamming weight, the pruned tree still spans every pattern with
    h <= h_max, in the same relative order as post-filtering the full
    sequence (tested for small n).
    """

    def __init__(self, n, h_max=None):
        self.n = n
        self.h_max = h_max
        self._heap = [(0, 0, ())]

    def __iter__(self):
        return self

    def __next__(self):
        if not self._heap:
            raise StopIteration
        ilw, h, supp = heapq.heappop(self._heap)
        last = supp[-1] if supp else -1
        if last + 1 < self.n:
            if self.h_max is None or h < self.h_max:
                child = supp + (last + 1,)
                heapq.heappush(self._heap, (ilw + (h + 1) * (last + 2), h + 1, child))
            if supp:
                sibling = supp[:-1] + (last + 1,)
                heapq.heappush(self._heap, (ilw + h, h, sibling))
        return supp

    def clone(self):
        dup = IlwoExactGenerator(self.n, self.h_max)
        dup._heap = list(self._heap)
        return dup


def ilwo_sequence(n, q, h_max=None):
    """First ``q`` exact-iLWO patterns with Hamming weight <= ``h_max``."""
    gen = IlwoExactGenerator(n, h_max)
    out = []
    for supp in gen:
        out.append(supp)
        if len(out) == q:
            break
    return out


# ---------------------------------------------------------------------------
# Approximate generator, h <= 3


@dataclass
class ApproxIlwoState:
    """State of the approximate generator between weight batches.

    ``h3dw`` is the last weight at which h=3 patterns were created and
    (l, m, n) the first h=3 pattern created at that weight; l stays 0 for
    every seed. ``dw`` is the next weight to emit.
    """

    n_bits: int
    dw: int = 1
    h3dw: int = 0
    l: int = 0
    m: int = 0
    n: int = 0


def create_remaining_h3(l, m, n):
    """Constant-weight h=3 sweep from seed (l, m, n), excluding the seed.

    Steps (a+1, b+1, c-1) preserve (a+1) + 2(b+1) + 3(c+1) and run while
    c - 1 > b + 1 keeps the indices distinct.
    """
    out = []
    a, b, c = l, m, n
    while c - 1 > b + 1:
        a += 1
        b += 1
        c -= 1
        out.append((a, b, c))
    return out


def approx_next_weight(state):
    """Emit the pattern batch for ``state.dw`` and advance to the next weight.

    Every emitted pattern has iLW exactly equal to dw and Hamming weight
    <= 3; patterns whose largest index reaches ``state.n_bits`` are
    suppressed without disturbing the sweeps or the seed state machine.
    """
    dw = state.dw
    n_bits = state.n_bits
    batch = []

    def emit(pattern):
        if pattern[-1] < n_bits:
            batch.append(pattern)

    def emit_h3(seed):
        emit(seed)
        for pattern in create_remaining_h3(*seed):
            emit(pattern)

    emit((dw - 1,))
    if dw > 4:
        w = (dw - 1) // 2 - 1
        k = (dw - 1) % 2
        # Family guard is w > k; the swapped reading never fires because
        # k is 0 or 1 here (see the guard-comparison test).
        if w >= 1 and w > k:
            emit((k, w))
            while w - 1 > k + 2:
                w -= 1
                k += 2
                emit((k, w))
        if dw == 14:
            state.l, state.m, state.n = 0, 1, 2
            emit((0, 1, 2))
            state.h3dw = dw
        elif dw > 14:
            m_old, n_old = state.m, state.n
            if state.h3dw == dw - 1:
                if m_old > 1:
                    state.m, state.n = m_old - 1, n_old + 1
                    state.h3dw = dw
                    emit_h3((0, state.m, state.n))
                if m_old + 2 < n_old - 1:
                    # Second seed on the same weight line; its validity
                    # condition m1 < n1 is exactly this guard.
                    m1, n1 = m_old + 2, n_old - 1
                    if state.h3dw == dw - 1:
                        state.m, state.n = m1, n1
                    state.h3dw = dw
                    emit_h3((0, m1, n1))
            elif state.h3dw == dw - 2 and state.n > state.m + 1:
                state.m = state.m + 1
                state.h3dw = dw
                emit_h3((0, state.m, state.n))
            elif state.h3dw == dw - 3:
                state.m, state.n = 1, state.n + 1
                state.h3dw = dw
                emit_h3((0, state.m, state.n))
    state.dw += 1
    return batch


def _max_weight(n_bits):
    # Largest iLW reachable with h <= 3 and all indices < n_bits.
    return 6 * n_bits - 4 if n_bits >= 3 else (3 * n_bits - 1 if n_bits == 2 else n_bits)


class ApproxIlwoGenerator:
    """Iterator form of the approximate schedule: the all-zero pattern
    followed by the weight batches for dw = 1, 2, 3, ..."""

    def __init__(self, n):
        self.n = n
        self.state = ApproxIlwoState(n_bits=n)
        self._buffer = [()]
        self._limit = _max_weight(n)

    def __iter__(self):
        return self

    def __next__(self):
        while not self._buffer:
            if self.state.dw > self._limit:
                raise StopIteration
            self._buffer = approx_next_weight(self.state)
        return self._buffer.pop(0)

    def clone(self):
        dup = ApproxIlwoGenerator(self.n)
        dup.state = ApproxIlwoState(**vars(self.state))
        dup._buffer = list(self._buffer)
        return dup


def approx_sequence(n, q):
    """First ``q`` patterns of the approximate h <= 3 schedule."""
    out = []
    for supp in ApproxIlwoGenerator(n):
        out.append(supp)
        if len(out) == q:
            break
    return out
