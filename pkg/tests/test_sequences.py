import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from thue_arena.sequences import (
    GameSequence,
    append_and_reduce,
    find_suffix_repetition,
    is_valid,
    suffix_repetition_after_append,
)


def brute_suffix_sizes(symbols, min_size):
    """Oracle: every half-length h whose suffix of length 2h splits into equal halves."""
    n = len(symbols)
    out = []
    for h in range(min_size, n // 2 + 1):
        if symbols[n - 2 * h : n - h] == symbols[n - h :]:
            out.append(h)
    return out


words = st.lists(st.integers(0, 3), max_size=24)


def test_suffix_repetition_smallest_half():
    rep = find_suffix_repetition(GameSequence(8, [0, 1, 2, 1, 2]))
    assert (rep.size, rep.start_index) == (2, 1)


@pytest.mark.parametrize(
    "symbols,min_size,expected",
    [
        ([], 1, None),
        ([0, 0], 1, (1, 0)),
        ([0, 1, 0, 1, 0, 1], 2, (2, 2)),
        ([0, 1, 0, 1, 0, 1], 1, (2, 2)),
        ([5], 1, None),
        ([0, 0], 2, None),
    ],
)
def test_suffix_repetition_cases(symbols, min_size, expected):
    rep = find_suffix_repetition(GameSequence(8, symbols), min_size)
    got = None if rep is None else (rep.size, rep.start_index)
    assert got == expected


@given(words, st.integers(1, 3))
def test_suffix_repetition_matches_oracle(symbols, min_size):
    rep = find_suffix_repetition(GameSequence(4, symbols), min_size)
    sizes = brute_suffix_sizes(symbols, min_size)
    if sizes:
        assert rep is not None and rep.size == sizes[0]
    else:
        assert rep is None


@given(words, st.integers(0, 3), st.integers(1, 3))
def test_detector_after_append_consistent(symbols, symbol, min_size):
    grown = GameSequence(4, symbols + [symbol])
    rep = find_suffix_repetition(grown, min_size)
    size = suffix_repetition_after_append(symbols, symbol, min_size)
    assert size == (0 if rep is None else rep.size)


def test_append_erases_repeated_block():
    new, erased = append_and_reduce(GameSequence(8, [0, 1, 2, 1]), 2, 1)
    assert new.symbols == [0, 1, 2] and erased == 2


def test_append_to_empty():
    new, erased = append_and_reduce(GameSequence(8, []), 0, 1)
    assert new.symbols == [0] and erased == 0


def test_size_one_repetition_stands_at_threshold_two():
    new, erased = append_and_reduce(GameSequence(8, [0]), 0, 2)
    assert new.symbols == [0, 0] and erased == 0


def test_append_rejects_foreign_symbol():
    with pytest.raises(ValueError):
        append_and_reduce(GameSequence(4, []), 4, 1)
    with pytest.raises(ValueError):
        append_and_reduce(GameSequence(4, []), -1, 1)


@given(words, st.integers(0, 3))
def test_erase_arithmetic(symbols, symbol):
    # Reduce the word first so the input satisfies the mode invariant.
    seq = GameSequence(4, [])
    for s in symbols:
        seq, _ = append_and_reduce(seq, s, 1)
    before = len(seq)
    new, erased = append_and_reduce(seq, symbol, 1)
    assert len(new) == before + 1 - erased
    assert is_valid(new, 1)


@given(words, st.integers(0, 3))
def test_reduction_preserves_threshold_two_validity(symbols, symbol):
    seq = GameSequence(4, [])
    for s in symbols:
        seq, _ = append_and_reduce(seq, s, 2)
    new, erased = append_and_reduce(seq, symbol, 2)
    assert is_valid(new, 2)
    assert erased == 0 or erased >= 2


@pytest.mark.parametrize(
    "symbols,min_size,expected",
    [
        ([0, 1, 2, 0, 1], 1, True),
        ([0, 1, 0, 1, 2], 2, False),
        ([0, 0, 1], 2, True),
        ([0, 0, 1], 1, False),
        ([], 1, True),
    ],
)
def test_is_valid(symbols, min_size, expected):
    assert is_valid(GameSequence(4, symbols), min_size) is expected


def test_min_size_must_be_positive():
    with pytest.raises(ValueError):
        find_suffix_repetition(GameSequence(4, [0]), 0)


def test_alphabet_bounds_checked_on_construction():
    with pytest.raises(ValueError):
        GameSequence(2, [0, 2])
    with pytest.raises(ValueError):
        GameSequence(0, [])


def test_json_round_trip():
    seq = GameSequence(6, [0, 5, 2])
    assert GameSequence.from_json(seq.to_json()) == seq
