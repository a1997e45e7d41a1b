import pytest
from hypothesis import given, strategies as st

from totalbotwar.complexity import (
    ComplexityParams,
    army_combination_count,
    battle_action_count,
    draft_action_count,
    sci,
    state_count,
    table,
)


def test_draft_actions():
    assert draft_action_count(13, 7, 4) == 364
    assert draft_action_count(1920, 1080, 4) == 8_294_400
    assert draft_action_count(1, 1, 1) == 1


def test_battle_actions():
    assert battle_action_count(13, 7, 30) == 2730
    assert battle_action_count(26, 14, 9) == 3276
    assert battle_action_count(26, 14, 0) == 0


def test_army_combinations():
    assert army_combination_count(1920, 1080, 4, 9) == 74_649_600
    assert army_combination_count(13, 7, 4, 30) == 10_920
    assert army_combination_count(1920, 1080, 4, 4, league=1) == 1


def test_state_count():
    hw = 1920 * 1080
    per = hw * 8 * 100 * 4 * 2
    assert state_count(1920, 1080, 8, 100, 4, 2, 4) == per * hw * 4 * per * 4
    assert sci(state_count(1920, 1080, n=4)) == "5.8E27"
    assert sci(state_count(13, 7, n=4)) == "4.9E14"
    assert state_count(13, 7, n=0) == 0


@pytest.mark.parametrize("value, text", [
    (364, "3.6E2"), (2730, "2.7E3"), (74_649_600, "7.5E7"), (8_294_400, "8.3E6"),
    (1, "1"), (995, "1.0E3"), (1456, "1.5E3"), (10_920, "1.1E4"),
])
def test_sci(value, text):
    assert sci(value) == text


def test_params_validation():
    assert ComplexityParams().l == 100
    with pytest.raises(ValueError):
        ComplexityParams(H=-1)


small = st.integers(1, 50)


@given(small, small, small, small, st.sampled_from(["H", "W", "t", "n"]))
def test_counts_monotone(H, W, t, n, which):
    base = dict(H=H, W=W, t=t, n=n)
    bumped = {**base, which: base[which] + 1}
    for f in (lambda H, W, t, n: draft_action_count(H, W, t),
              lambda H, W, t, n: battle_action_count(H, W, n),
              lambda H, W, t, n: army_combination_count(H, W, t, n),
              lambda H, W, t, n: state_count(H, W, t=t, n=n)):
        assert f(**bumped) >= f(**base)


def test_tables_have_three_grids():
    for name in ("draft", "battle", "armies", "states"):
        assert [label for label, _ in table(name)] == ["1920x1080", "26x14", "13x7"]
