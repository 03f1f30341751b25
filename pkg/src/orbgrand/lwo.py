"""Sequential logistic-weight-order (LWO) pattern generation.

The generator is memoryless: the next pattern is a pure function of the
previous pattern and the block length, so no part of the sequence has to be
stored. Within one LW level the patterns run from the minimal-Hamming-weight
greedy decomposition (largest parts first) to the unique maximal-Hamming-
weight decomposition; across levels LW never decreases. The resulting
linear order is a linear extension of the universal partial order.

All supports are 0-based; the underlying integer-partition arithmetic works
on 1-based positions (position = index + 1), which is where the +-1 offsets
below come from.
"""

from __future__ import annotations

from .patterns import ScheduleExhausted, logistic_weight

__all__ = [
    "InfeasibleWeightError",
    "max_integer_partition",
    "is_last",
    "next_pattern",
    "LwoGenerator",
    "lwo_sequence",
]


class InfeasibleWeightError(ValueError):
    """Requested logistic weight exceeds what n distinct positions can sum to."""


def max_integer_partition(n, k):
    """Minimal-Hamming-weight pattern of logistic weight ``k`` on ``n`` positions.

    Greedy from the largest position down: take position i (1-based)
    whenever i still fits into the remaining weight. Raises
    InfeasibleWeightError when k exceeds n(n+1)/2.
    """
    if k < 0 or k > n * (n + 1) // 2:
        raise InfeasibleWeightError(f"no pattern of weight {k} on {n} positions")
    if k == 0:
        return ()
    out = []
    for i in range(n, 0, -1):
        if i <= k:
            out.append(i - 1)
            k -= i
            if k == 0:
                return tuple(reversed(out))
    raise AssertionError("greedy descent failed inside the feasible range")


def is_last(support, n):
    """True iff ``support`` is the final pattern of its LW level.

    Scans positions from n down to 1; position i is forced into the last
    (maximal-Hamming-weight) decomposition whenever the positions below it
    cannot cover the remaining weight, i.e. i(i-1)/2 < k.
    """
    k = logistic_weight(support)
    if k == 0:
        return True
    members = set(support)
    for i in range(n, 0, -1):
        if i * (i - 1) < 2 * k:
            if i - 1 not in members:
                return False
            k -= i
            if k == 0:
                return True
    raise AssertionError("forced-bit scan exhausted without resolving")


def next_pattern(support, n):
    """Successor of ``support`` in the LWO sequence.

    If the pattern closes its LW level, restart at the next level via
    max_integer_partition. Otherwise sweep for the leftmost set bit at
    1-based position >= 3, and replace everything at or below it with the
    minimal-Hamming-weight prefix of matching weight; if the prefix cannot
    absorb the weight, zero the swept region and move to the next set bit.
    Raises ScheduleExhausted on the all-ones pattern.
    """
    lw = logistic_weight(support)
    if is_last(support, n):
        try:
            return max_integer_partition(n, lw + 1)
        except InfeasibleWeightError:
            raise ScheduleExhausted(f"all {n}-bit patterns emitted") from None
    sup = list(support)
    # Bounded sweep: each round consumes at least one support element.
    for _ in range(len(support) + 1):
        idx = next((t for t, j in enumerate(sup) if j >= 2), None)
        assert idx is not None, "sweep ran past the last set bit"
        lm = sup[idx] + 1
        tail = sup[idx + 1 :]
        r = logistic_weight(tail)
        if lm * (lm - 1) // 2 + r < lw:
            sup = tail
        else:
            head = max_integer_partition(lm - 1, lw - r)
            return head + tuple(tail)
    raise AssertionError("intra-level sweep failed to terminate")


class LwoGenerator:
    """Iterator over the LWO sequence for length-``n`` patterns.

    The first emission is the all-zero pattern (the decoder's check of the
    hard decision itself); afterwards each step applies ``next_pattern`` to
    the previous emission only. ``last_emitted`` resumes a sequence right
    after a known pattern, which is what makes the generator memoryless.
    """

    def __init__(self, n, last_emitted=None):
        self.n = n
        self.current = tuple(last_emitted) if last_emitted is not None else None
        self.emitted_count = 0

    def __iter__(self):
        return self

    def __next__(self):
        if self.current is None:
            self.current = ()
        else:
            try:
                self.current = next_pattern(self.current, self.n)
            except ScheduleExhausted:
                raise StopIteration from None
        self.emitted_count += 1
        return self.current

    def clone(self):
        dup = LwoGenerator(self.n, self.current)
        dup.emitted_count = self.emitted_count
        return dup


def lwo_sequence(n, q, h_max=None):
    """First ``q`` LWO patterns, skipping (without counting) those with
    Hamming weight above ``h_max``. Returns fewer when the space runs out."""
    out = []
    for supp in LwoGenerator(n):
        if h_max is not None and len(supp) > h_max:
            continue
        out.append(supp)
        if len(out) == q:
            break
    return out
