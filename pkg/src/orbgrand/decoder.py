"""The ORBGRAND decode loop.

Patterns arrive in sorted-reliability index space; before each membership
test the support is mapped back through the reliability permutation and the
corresponding hard-decision bits are flipped. The all-zero pattern is query
number 1 (the hard decision itself is tested first), so ``queries_used``
equals the number of codebook checks.

When the checker exposes ``syndrome_masks`` (all codes in this package do),
each query reduces to XOR-ing a few per-position integers against the base
syndrome of the hard decision; otherwise the flipped candidate is built
explicitly and handed to ``checker.is_codeword``. The two paths test the
same candidates in the same order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import hard_decision, reliability_permutation
from .ilwo import ApproxIlwoGenerator, IlwoExactGenerator
from .lwo import LwoGenerator
from .patterns import read_pattern_file, validate_support

DECODED = "decoded"
ABANDONED = "abandoned"

SCHEDULE_KINDS = ("lwo", "ilwo", "ilwo-approx", "file")


@dataclass(frozen=True)
class DecodeConfig:
    q_max: int
    h_max: int | None = None
    schedule: str = "lwo"

    def __post_init__(self):
        if self.q_max < 1:
            raise ValueError("q_max must be >= 1")


@dataclass
class DecodeOutcome:
    status: str
    codeword: np.ndarray | None
    queries_used: int
    pattern_hw: int | None


def apply_pattern(hard, pi, support):
    """Flip ``hard`` at the original positions {pi[j] : j in support}.

    Involution: applying the same pattern twice restores the input.
    """
    out = np.array(hard, dtype=np.uint8, copy=True)
    for j in support:
        if j >= len(pi):
            raise ValueError(f"support index {j} out of range for n={len(pi)}")
        out[pi[j]] ^= 1
    return out


def make_generator(kind, n, h_max=None, pattern_file=None):
    """Fresh schedule iterator of the given kind for length-``n`` patterns."""
    if kind == "lwo":
        gen = LwoGenerator(n)
    elif kind == "ilwo":
        gen = IlwoExactGenerator(n, h_max=h_max)
        h_max = None  # already applied inside the generator
    elif kind == "ilwo-approx":
        gen = ApproxIlwoGenerator(n)
    elif kind == "file":
        if pattern_file is None:
            raise ValueError("file schedule requires a pattern file")
        patterns = read_pattern_file(pattern_file)
        for supp in patterns:
            validate_support(supp, n)
        gen = iter(patterns)
    else:
        raise ValueError(f"unknown schedule kind {kind!r}")
    if h_max is None:
        return gen
    return (supp for supp in gen if len(supp) <= h_max)


def make_schedule(kind, n, q, h_max=None, pattern_file=None):
    """Materialize the first ``q`` patterns of a schedule as a list."""
    gen = make_generator(kind, n, h_max=h_max, pattern_file=pattern_file)
    out = []
    for supp in gen:
        out.append(supp)
        if len(out) == q:
            break
    return out


def decode(llrs, checker, patterns, cfg):
    """Run scheduled guesses against the checker until acceptance or budget.

    ``patterns`` is any iterable of supports in sorted-reliability space
    (ordinarily starting with the all-zero pattern). Patterns wider than
    ``cfg.h_max`` are skipped without consuming budget. Returns the first
    accepted codeword or abandons after ``cfg.q_max`` membership tests, and
    abandons early if the schedule runs out.
    """
    llrs = np.asarray(llrs, dtype=float)
    n = checker.n
    if llrs.shape[-1] != n:
        raise ValueError(f"soft vector length {llrs.shape[-1]} != code length {n}")
    hard = hard_decision(llrs)
    pi = reliability_permutation(llrs)

    masks = getattr(checker, "syndrome_masks", None)
    queries = 0
    if masks is not None:
        pm = np.asarray(masks)[pi].tolist()
        support = np.flatnonzero(hard)
        base = int(np.bitwise_xor.reduce(np.asarray(masks)[support])) if support.size else 0
        for supp in patterns:
            if cfg.h_max is not None and len(supp) > cfg.h_max:
                continue
            if queries == cfg.q_max:
                break
            queries += 1
            s = base
            for j in supp:
                s ^= pm[j]
            if s == 0:
                return DecodeOutcome(DECODED, apply_pattern(hard, pi, supp), queries, len(supp))
    else:
        for supp in patterns:
            if cfg.h_max is not None and len(supp) > cfg.h_max:
                continue
            if queries == cfg.q_max:
                break
            queries += 1
            candidate = apply_pattern(hard, pi, supp)
            if checker.is_codeword(candidate):
                return DecodeOutcome(DECODED, candidate, queries, len(supp))
    return DecodeOutcome(ABANDONED, None, queries, None)
