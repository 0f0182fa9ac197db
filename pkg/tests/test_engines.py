import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from thue_arena.engines import (
    ANN,
    BEN,
    ChoicesExhausted,
    GameRun,
    ScriptedPick,
    WordState,
    difference_sequence,
    extract_heights,
    play_erase_game,
    play_erase_game_scripted,
    simulate_nonrep_search,
    simulate_nonrep_search_scripted,
)
from thue_arena.sequences import GameSequence, append_and_reduce
from thue_arena.strategies import BEN_STRATEGIES, ConfigurationError


def test_mimic_two_move_game():
    run = play_erase_game(8, 2, "mimic", 12345)
    r1 = run.ann_choices[0]
    assert run.final.symbols == [r1]
    assert extract_heights(run) == [1, 1]
    assert difference_sequence(run) == [1, 0]
    assert [m.mover for m in run.moves] == [ANN, BEN]
    assert run.moves[1].repetition_size == 1


@pytest.mark.parametrize("ben", BEN_STRATEGIES)
def test_strict_alternation(ben):
    run = play_erase_game(8, 40, ben, 9)
    assert len(run.ann_choices) == 20
    for m in run.moves:
        assert m.mover == (ANN if m.move_index % 2 == 1 else BEN)


def test_erase_repetitions_are_one_or_at_least_four():
    run = play_erase_game(8, 2000, "greedy_repeater", 3)
    sizes = {m.repetition_size for m in run.moves if m.repetition_size}
    assert sizes and all(s == 1 or s >= 4 for s in sizes)


def test_search_single_draw():
    run = simulate_nonrep_search(6, 1, "mimic", 4)
    assert len(run.moves) == 1
    assert run.moves[0].mover == ANN
    assert extract_heights(run) == [1]
    assert run.final.symbols == run.ann_choices


@pytest.mark.parametrize("ben", BEN_STRATEGIES)
def test_search_backtracks_are_at_least_five(ben):
    run = simulate_nonrep_search(6, 1000, ben, 11)
    sizes = {m.repetition_size for m in run.moves if m.repetition_size}
    assert all(s >= 5 for s in sizes)


def test_search_ben_never_moves_three_times_in_a_row():
    run = simulate_nonrep_search(6, 1000, "hash_det", 11)
    streak = 0
    for m in run.moves:
        streak = streak + 1 if m.mover == BEN else 0
        assert streak < 3


def test_search_turn_follows_word_parity():
    run = simulate_nonrep_search(6, 300, "cyclic", 8)
    length = 0
    for m in run.moves:
        assert m.mover == (ANN if length % 2 == 0 else BEN)
        length = m.height_after


def test_search_stops_on_final_builder_draw():
    run = simulate_nonrep_search(6, 57, "mimic", 21)
    assert run.moves[-1].mover == ANN
    assert len(run.ann_choices) == 57


@pytest.mark.parametrize("game", ["erase", "nonrep"])
@pytest.mark.parametrize("ben", BEN_STRATEGIES)
def test_runs_are_reproducible(game, ben):
    if game == "erase":
        a = play_erase_game(8, 200, ben, 77)
        b = play_erase_game(8, 200, ben, 77)
        c = play_erase_game(8, 200, ben, 78)
    else:
        a = simulate_nonrep_search(6, 100, ben, 77)
        b = simulate_nonrep_search(6, 100, ben, 77)
        c = simulate_nonrep_search(6, 100, ben, 78)
    assert a.to_json() == b.to_json()
    assert a.to_json() != c.to_json()


def test_difference_maps_repetition_sizes():
    run = play_erase_game(8, 600, "greedy_repeater", 0)
    diffs = difference_sequence(run)
    for d, m in zip(diffs, run.moves):
        assert d == 1 - m.repetition_size


def test_height_chain():
    run = simulate_nonrep_search(6, 200, "anti_ann", 5)
    prev = 0
    for m in run.moves:
        assert m.height_after == prev + 1 - m.repetition_size
        prev = m.height_after


def test_config_validation():
    with pytest.raises(ConfigurationError):
        play_erase_game(3, 10, "mimic", 0)
    with pytest.raises(ValueError):
        play_erase_game(8, 7, "mimic", 0)
    with pytest.raises(ConfigurationError):
        simulate_nonrep_search(2, 10, "mimic", 0)
    with pytest.raises(ValueError):
        play_erase_game(8, 10, "nope", 0)
    with pytest.raises(ConfigurationError):
        play_erase_game(999, 10, "mimic", 0)


def test_zero_budget_runs():
    assert play_erase_game(8, 0, "mimic", 0).moves == []
    assert simulate_nonrep_search(6, 0, "mimic", 0).moves == []


def test_scripted_pick_raises_with_candidates():
    with pytest.raises(ChoicesExhausted) as info:
        play_erase_game_scripted(8, 4, "mimic", [0])
    assert 0 not in info.value.candidates  # 0 is among the last three


def test_scripted_pick_rejects_illegal_symbol():
    picker = ScriptedPick([5])
    with pytest.raises(ValueError):
        picker([0, 1, 2])


def test_scripted_runs_complete():
    run = play_erase_game_scripted(8, 4, "cyclic", [0, 4])
    assert run.ann_choices == [0, 4]
    run = simulate_nonrep_search_scripted(6, 2, "mimic", [3, 5])
    assert run.ann_choices == [3, 5]


def test_json_round_trip():
    run = simulate_nonrep_search(6, 40, "hash_det", 13)
    assert GameRun.from_json(run.to_json()).to_json() == run.to_json()


@given(st.lists(st.integers(0, 5), max_size=60), st.integers(1, 2))
@settings(max_examples=60)
def test_word_state_matches_value_semantics(symbols, min_size):
    state = WordState(6)
    seq = GameSequence(6, [])
    for s in symbols:
        erased_fast = state.apply(s, min_size)
        seq, erased_ref = append_and_reduce(seq, s, min_size)
        assert erased_fast == erased_ref
        assert state.w == seq.symbols
