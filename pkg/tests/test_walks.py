import json

import pytest

from thue_arena.walks import (
    ERASE_WALKS,
    SEARCH_WALKS,
    WalkSpec,
    count_walks_bruteforce,
    count_walks_dp,
    count_walks_recurrence,
    count_walks_with_sum,
    spec_for_game,
)


@pytest.mark.parametrize(
    "spec,m,expected",
    [
        (ERASE_WALKS, 1, 1),
        (ERASE_WALKS, 2, 0),
        (ERASE_WALKS, 5, 1),  # 1,1,1,1,-3
        (ERASE_WALKS, 6, 1),  # 1,1,1,1,1,-4
        (SEARCH_WALKS, 1, 1),
        (SEARCH_WALKS, 3, 1),  # 1,1,-1
        (SEARCH_WALKS, 4, 4),  # 1,1,1,-2 with four types
        (ERASE_WALKS, 0, 0),
        (SEARCH_WALKS, 0, 0),
    ],
)
def test_bruteforce_spot_values(spec, m, expected):
    assert count_walks_bruteforce(spec, m) == expected


def test_bruteforce_guard():
    with pytest.raises(ValueError):
        count_walks_bruteforce(ERASE_WALKS, 19)


@pytest.mark.parametrize("spec", [ERASE_WALKS, SEARCH_WALKS])
def test_dp_matches_bruteforce(spec):
    table = count_walks_dp(spec, 14)
    for m in range(1, 15):
        assert table.count(m) == count_walks_bruteforce(spec, m)


def test_dp_spot_tables():
    assert count_walks_dp(ERASE_WALKS, 6).counts == [1, 0, 0, 0, 1, 1]
    assert count_walks_dp(SEARCH_WALKS, 4).counts == [1, 0, 1, 4]


@pytest.mark.parametrize("spec", [ERASE_WALKS, SEARCH_WALKS])
def test_decomposition_recurrence_agrees_with_dp(spec):
    assert count_walks_recurrence(spec, 40) == count_walks_dp(spec, 40).counts


@pytest.mark.parametrize(
    "spec,m,k,expected",
    [
        (ERASE_WALKS, 3, 3, 1),  # 1,1,1
        (SEARCH_WALKS, 2, 2, 1),  # 1,1
        (ERASE_WALKS, 5, 1, 1),
    ],
)
def test_with_sum(spec, m, k, expected):
    assert count_walks_with_sum(spec, m, k) == expected


@pytest.mark.parametrize("spec", [ERASE_WALKS, SEARCH_WALKS])
def test_with_sum_matches_bruteforce(spec):
    for m in range(1, 11):
        for k in range(1, m + 1):
            assert count_walks_with_sum(spec, m, k) == count_walks_bruteforce(
                spec, m, target=k
            )


def test_with_sum_guards():
    with pytest.raises(ValueError):
        count_walks_with_sum(ERASE_WALKS, 4, 0)
    assert count_walks_with_sum(ERASE_WALKS, 4, 5) == 0


def test_weight_lookup():
    assert ERASE_WALKS.weight(1) == 1
    assert ERASE_WALKS.weight(-1) == 0
    assert ERASE_WALKS.weight(-3) == 1
    assert SEARCH_WALKS.weight(-1) == 1
    assert SEARCH_WALKS.weight(-2) == 4
    assert SEARCH_WALKS.weight(0) == 0


def test_type_weight_equals_explicit_enumeration():
    # Replacing the weight-4 tail by four distinct labeled steps must agree.
    labeled = WalkSpec(name="labeled", specials={-1: 1}, tail_start=-2, tail_weight=4)
    unit = WalkSpec(name="unit", specials={-1: 1}, tail_start=-2, tail_weight=1)
    for m in range(1, 11):
        weighted = count_walks_bruteforce(labeled, m)
        drops = {}
        # Count unlabeled walks grouped by the number of steep drops.
        def rec(left, height, steep):
            if left == 0:
                drops[steep] = drops.get(steep, 0) + (1 if height == 1 else 0)
                return
            rec(left - 1, height + 1, steep)
            step = -1
            while height + step >= 1:
                if unit.weight(step):
                    rec(left - 1, height + step, steep + (1 if step <= -2 else 0))
                step -= 1

        rec(m, 0, 0)
        assert weighted == sum(4**k * v for k, v in drops.items())


def test_spec_for_game():
    assert spec_for_game("erase") is ERASE_WALKS
    assert spec_for_game("nonrep") is SEARCH_WALKS
    assert spec_for_game("search") is SEARCH_WALKS
    with pytest.raises(ValueError):
        spec_for_game("go")


def test_exports():
    table = count_walks_dp(ERASE_WALKS, 8)
    csv = table.to_csv()
    assert csv.splitlines()[0] == "m,T_m,T_m^(1/m)"
    assert len(csv.splitlines()) == 9
    rows = json.loads(table.to_json())
    assert rows[4] == {"m": 5, "T_m": "1", "root": 1.0}
