import pytest
from collections import Counter

from thue_arena.sequences import GameSequence
from thue_arena.strategies import (
    BEN_STRATEGIES,
    ConfigurationError,
    RandomSource,
    TurnOrderError,
    ann_erase_candidates,
    ann_erase_choice,
    ann_nonrep_candidates,
    ann_nonrep_choice,
    ann_nonrep_exclusions,
    ben_choose,
    ben_function,
    derive_seed,
)


class TestRandomSource:
    def test_same_seed_same_stream(self):
        a = RandomSource(77)
        b = RandomSource(77)
        items = list(range(7))
        assert [a.uniform_pick(items) for _ in range(200)] == [
            b.uniform_pick(items) for _ in range(200)
        ]

    def test_uniform_support_and_rough_balance(self):
        rng = RandomSource(5)
        counts = Counter(rng.uniform_pick([2, 4, 9]) for _ in range(9000))
        assert set(counts) == {2, 4, 9}
        for value in counts.values():
            assert 2600 < value < 3400

    def test_single_candidate(self):
        assert RandomSource(1).uniform_pick([6]) == 6

    def test_empty_candidates_rejected(self):
        with pytest.raises(ConfigurationError):
            RandomSource(1).uniform_pick([])

    def test_spawn_streams_are_stable(self):
        a = RandomSource(3).spawn(17)
        b = RandomSource(3).spawn(17)
        assert a.seed == b.seed == derive_seed(3, 17)
        assert a.seed != RandomSource(3).spawn(18).seed


def test_erase_candidates_exclude_last_three():
    assert ann_erase_candidates(GameSequence(8, [])) == list(range(8))
    assert ann_erase_candidates(GameSequence(8, [5, 6, 7])) == [0, 1, 2, 3, 4]
    # duplicates shrink the excluded set
    assert ann_erase_candidates(GameSequence(8, [1, 2, 1])) == [0, 3, 4, 5, 6, 7]


def test_erase_choice_draws_only_candidates():
    rng = RandomSource(11)
    seq = GameSequence(8, [5, 6, 7])
    picks = {ann_erase_choice(seq, rng) for _ in range(300)}
    assert picks == {0, 1, 2, 3, 4}


def test_erase_choice_needs_a_candidate():
    with pytest.raises(ConfigurationError):
        ann_erase_choice(GameSequence(3, [0, 1, 2]), RandomSource(0))


@pytest.mark.parametrize(
    "symbols,expected",
    [
        ([0, 1, 2, 0], {2, 1}),
        ([0, 1, 2, 3], {2, 0}),
        ([], set()),
        ([3, 5], {3}),
        ([0, 1, 1, 0], {1, 0}),  # rules (i) and (ii) coincide, (iii) adds w[-4]
    ],
)
def test_nonrep_exclusions(symbols, expected):
    assert ann_nonrep_exclusions(GameSequence(6, symbols)) == expected


def test_nonrep_exclusions_require_even_length():
    with pytest.raises(TurnOrderError):
        ann_nonrep_exclusions(GameSequence(6, [0]))


def test_nonrep_candidate_floor():
    for symbols in ([], [0, 1], [0, 1, 2, 0], [0, 1, 2, 3], [2, 4, 2, 4, 1, 3]):
        candidates = ann_nonrep_candidates(GameSequence(6, symbols))
        assert len(candidates) >= 4


@pytest.mark.parametrize(
    "symbols,expected",
    [
        ([], set(range(6))),
        ([0, 1, 2, 0], {0, 3, 4, 5}),
        ([0, 1, 2, 3], {1, 3, 4, 5}),
    ],
)
def test_nonrep_choice_support(symbols, expected):
    rng = RandomSource(9)
    seq = GameSequence(6, symbols)
    picks = {ann_nonrep_choice(seq, rng) for _ in range(400)}
    assert picks == expected


class TestBen:
    def test_mimic(self):
        assert ben_choose("mimic", [], GameSequence(8, [4])) == 4
        assert ben_choose("mimic", [], GameSequence(8, [])) == 0

    def test_cyclic_uses_move_count(self):
        assert ben_choose("cyclic", [None] * 3, GameSequence(6, [0, 1, 2])) == 3
        assert ben_choose("cyclic", [None] * 9, GameSequence(6, [])) == 3

    def test_greedy_prefers_largest_erasure(self):
        # Appending 2 to 0,1,2,0,1 completes a size-3 block; appending 1 only size 1.
        assert ben_choose("greedy_repeater", [], GameSequence(8, [0, 1, 2, 0, 1])) == 2

    def test_greedy_defaults_to_zero(self):
        assert ben_choose("greedy_repeater", [], GameSequence(8, [])) == 0
        # No erasable repetition available at threshold 2.
        assert (
            ben_choose("greedy_repeater", [], GameSequence(8, [0, 1]), game="nonrep") == 0
        )

    def test_greedy_respects_threshold(self):
        # At threshold 2 the size-1 copy no longer counts as an erasure.
        seq = GameSequence(8, [0, 1, 2, 0, 1])
        assert ben_choose("greedy_repeater", [], seq, game="nonrep") == 2

    def test_anti_ann_erase_mode(self):
        assert ben_choose("anti_ann", [], GameSequence(8, [5, 6, 7])) == 0
        assert ben_choose("anti_ann", [], GameSequence(8, [0, 1, 2])) == 3

    def test_anti_ann_nonrep_mode(self):
        seq = GameSequence(6, [0, 1, 2, 0])
        assert ben_choose("anti_ann", [], seq, game="nonrep") == 0

    def test_hash_det_in_range_and_content_sensitive(self):
        a = ben_choose("hash_det", [None] * 4, GameSequence(6, [0, 1, 2]))
        b = ben_choose("hash_det", [None] * 4, GameSequence(6, [0, 1, 3]))
        assert 0 <= a < 6 and 0 <= b < 6
        assert isinstance(a, int)

    @pytest.mark.parametrize("strategy", BEN_STRATEGIES)
    def test_determinism(self, strategy):
        seq = GameSequence(8, [0, 3, 1, 4])
        history = [None] * 7
        first = ben_choose(strategy, history, seq)
        assert all(ben_choose(strategy, history, seq) == first for _ in range(5))

    def test_unknown_strategy_rejected(self):
        with pytest.raises(ValueError):
            ben_choose("oracle", [], GameSequence(8, []))
        with pytest.raises(ValueError):
            ben_function("mimic", "chess")
