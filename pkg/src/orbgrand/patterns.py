"""Sparse error patterns, weight functions, and the universal partial order.

Patterns live in sorted-reliability index space: position 0 is the least
reliable (most suspect) bit after the receiver has ordered positions by
ascending |LLR|. A pattern is stored as its support, a tuple of strictly
ascending 0-based indices; ``()`` is the all-zero pattern. Supports are
kept sparse because useful GRAND candidates flip only a handful of bits.

Weights (positions count 1-based inside the formulas):

* logistic weight           ``LW(e)  = sum(j + 1 for j in support)``
* improved logistic weight  ``iLW(e) = sum((i + 1) * (j + 1))`` where ``i``
  is the rank of index ``j`` within the support.

iLW multiplies each flipped position by its partial Hamming weight, so it
penalizes high-weight patterns that LW treats too cheaply.

The universal partial order (UPO) is generated by two moves that make a
pattern strictly less plausible on any channel once positions are sorted by
reliability: flipping one extra bit (addition rule), and moving a flipped
bit one step to the right into a free slot (right-swap rule). ``a <= b`` in
the transitive closure iff, for every position p, b has at least as many
flipped bits at positions >= p as a does (tail-count dominance). The test
suite validates this criterion against an explicit breadth-first closure of
the two moves; both LW and iLW strictly increase along every move, so any
schedule sorted by either weight is a linear extension of the UPO.
"""

from __future__ import annotations

import os

import numpy as np

LEQ = "leq"
GREATER = "greater"
INCOMPARABLE = "incomparable"


class ScheduleExhausted(Exception):
    """A pattern sequence has no further elements."""


def validate_support(support, n):
    """Check strict ascending order and index range; raise ValueError otherwise."""
    last = -1
    for j in support:
        if j <= last:
            raise ValueError(f"support must be strictly ascending, got {tuple(support)!r}")
        last = j
    if support and (support[0] < 0 or support[-1] >= n):
        raise ValueError(f"support {tuple(support)!r} out of range for n={n}")


def logistic_weight(support):
    """Sum of the 1-based positions of the flipped bits."""
    return sum(j + 1 for j in support)


def improved_logistic_weight(support):
    """Rank-scaled position sum: each flipped position is multiplied by its
    partial Hamming weight (number of flips at or left of it)."""
    return sum((i + 1) * (j + 1) for i, j in enumerate(support))


def hamming_weight(support):
    return len(support)


def tail_counts(support, n):
    """d[p] = number of support indices >= p, for p in 0..n-1."""
    d = np.zeros(n, dtype=np.int32)
    for j in support:
        d[: j + 1] += 1
    return d


def tail_count_matrix(patterns, n):
    """Stack ``tail_counts`` rows for a list of patterns (for bulk comparisons)."""
    mat = np.zeros((len(patterns), n), dtype=np.int16)
    for row, supp in enumerate(patterns):
        for j in supp:
            mat[row, : j + 1] += 1
    return mat


def upo_compare(a, b, n):
    """Tri-state UPO comparison of two length-``n`` patterns.

    Returns LEQ when a precedes (or equals) b in the transitive closure of
    the addition and right-swap rules, GREATER when b strictly precedes a,
    INCOMPARABLE otherwise. Dominance criterion: a <= b iff b's tail counts
    dominate a's at every position.
    """
    validate_support(a, n)
    validate_support(b, n)
    da = tail_counts(a, n)
    db = tail_counts(b, n)
    ab = bool(np.all(da <= db))
    if ab:
        return LEQ
    if bool(np.all(db <= da)):
        return GREATER
    return INCOMPARABLE


def upo_leq(a, b, n):
    """True iff ``a`` precedes or equals ``b`` in the UPO."""
    return upo_compare(a, b, n) == LEQ


# ---------------------------------------------------------------------------
# Pattern text format: one pattern per line, ascending support indices
# separated by single spaces; an empty line is the all-zero pattern.

def format_pattern(support):
    return " ".join(str(j) for j in support)


def parse_pattern(line):
    support = tuple(int(tok) for tok in line.split())
    last = -1
    for j in support:
        if j <= last:
            raise ValueError(f"indices not strictly ascending: {line!r}")
        if j < 0:
            raise ValueError(f"negative index: {line!r}")
        last = j
    return support


def write_pattern_file(patterns, dest):
    """Write patterns to a path or text buffer in the one-per-line format."""
    text = "".join(format_pattern(p) + "\n" for p in patterns)
    if isinstance(dest, (str, os.PathLike)):
        with open(dest, "w") as fh:
            fh.write(text)
    else:
        dest.write(text)


def read_pattern_file(source):
    """Parse a pattern file given as a path or an open text buffer.

    Raises ValueError carrying the 1-based line number on malformed lines.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source) as fh:
            text = fh.read()
    else:
        text = source.read()
    patterns = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        try:
            patterns.append(parse_pattern(line))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return patterns
