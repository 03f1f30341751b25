import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbgrand.patterns import (
    GREATER,
    INCOMPARABLE,
    LEQ,
    format_pattern,
    hamming_weight,
    improved_logistic_weight,
    logistic_weight,
    parse_pattern,
    read_pattern_file,
    tail_counts,
    upo_compare,
    upo_leq,
    validate_support,
    write_pattern_file,
)

from oracles import all_supports, bfs_upo_closure, count_distinct_partitions, ilw_of, lw_of

supports = st.lists(st.integers(0, 30), max_size=6, unique=True).map(
    lambda xs: tuple(sorted(xs))
)


def test_logistic_weight_worked_example():
    # bitstring 01100 over N=5: flipped 0-based positions 1 and 2
    assert logistic_weight((1, 2)) == 5


def test_logistic_weight_trivia():
    assert logistic_weight(()) == 0
    assert logistic_weight((0,)) == 1


def test_improved_logistic_weight_worked_example():
    assert improved_logistic_weight((1, 2)) == 8


def test_improved_logistic_weight_single_equals_lw():
    for j in range(10):
        assert improved_logistic_weight((j,)) == j + 1 == logistic_weight((j,))


def test_improved_logistic_weight_direct_formula():
    assert improved_logistic_weight((0, 1, 2)) == 1 * 1 + 2 * 2 + 3 * 3 == 14


def test_hamming_weight():
    assert hamming_weight(()) == 0
    assert hamming_weight((1, 2)) == 2
    assert hamming_weight((0, 3, 5, 9)) == 4


def test_ilw_dominates_lw_exhaustive_n16():
    # equality exactly when h <= 1
    for supp in all_supports(10):
        lw = logistic_weight(supp)
        ilw = improved_logistic_weight(supp)
        assert ilw >= lw
        assert (ilw == lw) == (len(supp) <= 1)
    # spot-extend to wider supports within n=16
    rng = np.random.default_rng(7)
    for _ in range(2000):
        h = int(rng.integers(2, 8))
        supp = tuple(sorted(rng.choice(16, size=h, replace=False).tolist()))
        assert improved_logistic_weight(supp) > logistic_weight(supp)


@given(supports)
def test_ilw_ge_lw_property(supp):
    assert improved_logistic_weight(supp) >= logistic_weight(supp)


def test_upo_examples():
    # right-swap edge: 10000 before 01000
    assert upo_compare((0,), (1,), 5) == LEQ
    assert upo_compare((1,), (0,), 5) == GREATER
    # same logistic-weight level: 00100 vs 11000 incomparable
    assert upo_compare((2,), (0, 1), 5) == INCOMPARABLE
    # reflexivity
    assert upo_compare((0, 3), (0, 3), 5) == LEQ
    # addition rule
    assert upo_leq((), (0,), 5)
    assert upo_leq((1,), (1, 4), 5)


def test_upo_validates_range():
    with pytest.raises(ValueError):
        upo_compare((0, 7), (1,), 5)
    with pytest.raises(ValueError):
        validate_support((2, 2), 5)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_upo_criterion_equals_bfs_closure(n):
    reach = bfs_upo_closure(n)
    nodes = all_supports(n)
    for a in nodes:
        above_a = reach[a]
        for b in nodes:
            if a == b or b in above_a:
                expected = LEQ
            elif a in reach[b]:
                expected = GREATER
            else:
                expected = INCOMPARABLE
            assert upo_compare(a, b, n) == expected, (a, b)


def test_upo_monotone_in_both_weights_exhaustive_n10():
    n = 10
    nodes = all_supports(n)
    dmat = np.stack([tail_counts(s, n) for s in nodes])
    lws = np.array([lw_of(s) for s in nodes])
    ilws = np.array([ilw_of(s) for s in nodes])
    # a <= b iff b's tail counts dominate a's
    for i, a in enumerate(nodes):
        leq = np.all(dmat >= dmat[i], axis=1)
        assert np.all(lws[leq] >= lws[i])
        assert np.all(ilws[leq] >= ilws[i])
        # strict comparability implies strictly larger weights
        strict = leq & (np.arange(len(nodes)) != i)
        strict &= np.any(dmat != dmat[i], axis=1)
        assert np.all(lws[strict] > lws[i])
        assert np.all(ilws[strict] > ilws[i])


def test_level_sizes_match_distinct_partition_counts():
    # patterns of LW = L with support inside [0, 16) vs the DP counter
    n = 16
    from collections import Counter

    sizes = Counter(lw_of(s) for s in all_supports(n))
    for total in range(41):
        assert sizes[total] == count_distinct_partitions(total, n)


# ---------------------------------------------------------------------------
# pattern text format


def test_format_and_parse_roundtrip():
    assert format_pattern(()) == ""
    assert format_pattern((0, 2, 5)) == "0 2 5"
    assert parse_pattern("") == ()
    assert parse_pattern("0 2 5") == (0, 2, 5)


def test_parse_rejects_bad_lines():
    with pytest.raises(ValueError):
        parse_pattern("3 1")
    with pytest.raises(ValueError):
        parse_pattern("1 1")


def test_pattern_file_roundtrip(tmp_path):
    patterns = [(), (0,), (1, 3), (), (0, 2, 4)]
    path = tmp_path / "patterns.txt"
    write_pattern_file(patterns, path)
    assert read_pattern_file(path) == patterns


def test_pattern_file_error_carries_line_number():
    buf = io.StringIO("0 1\n5 2\n")
    with pytest.raises(ValueError, match="line 2"):
        read_pattern_file(buf)


@given(st.lists(supports, max_size=20))
@settings(max_examples=50)
def test_pattern_file_roundtrip_property(patterns):
    buf = io.StringIO()
    write_pattern_file(patterns, buf)
    buf.seek(0)
    assert read_pattern_file(buf) == patterns
