import math

import pytest
from hypothesis import given, strategies as st

from totalbotwar.core import (
    ATTRIBUTES,
    Direction,
    Grid,
    LeagueConfig,
    UnitType,
    display_to_player_frame,
    player_frame_to_display,
    quantize_direction,
    round_half_up,
    snap_to_grid,
)

S, P, K, A = UnitType.SWORDSMEN, UnitType.SPEARMEN, UnitType.KNIGHTS, UnitType.ARCHERS


def test_unit_type_codes():
    assert [int(t) for t in (S, P, K, A)] == [0, 1, 2, 3]


def test_direction_codes():
    assert [d.name for d in sorted(Direction)] == ["NW", "N", "NE", "E", "SE", "S", "SW", "W"]


def test_counter_cycle():
    assert S.counters(P) and P.counters(K) and K.counters(S)
    assert not any(A.counters(t) for t in UnitType)
    assert not any(t.counters(A) for t in UnitType)


@pytest.mark.parametrize("utype, row", [
    (S, (250, 20, 10, 5, 25, 15, 10, None, None)),
    (P, (250, 15, 20, 10, 125, 10, 30, None, None)),
    (K, (200, 12, 12, 100, 15, 40, 30, None, None)),
    (A, (100, 10, 5, 5, 0, 15, 10, 450, 20)),
])
def test_attribute_table(utype, row):
    a = ATTRIBUTES[utype]
    assert (a.health_points, a.attack_strength, a.defence, a.charge_power, a.charge_resistance,
            a.moving_speed, a.arrow_defence, a.throwing_distance, a.arrow_damage) == row


def test_league_configs():
    got = [(c.league, c.army_size, c.unit_size, c.draft_turns, c.has_general)
           for c in map(LeagueConfig.for_league, (1, 2, 3))]
    assert got == [(1, 4, 150, 0, False), (2, 9, 150, 9, False), (3, 30, 75, 30, True)]
    c = LeagueConfig.for_league(3)
    assert (c.width, c.height, c.max_turns, c.turn_budget_ms) == (1920, 1080, 400, 200)
    with pytest.raises(ValueError):
        LeagueConfig.for_league(4)


def test_frame_examples():
    assert player_frame_to_display(0, (500, 900), (100, 50)) == (600, 850)
    assert player_frame_to_display(1, (500, 200), (100, 50)) == (400, 250)
    assert player_frame_to_display(0, (500, 900), (0, 0)) == (500, 900)


def test_frame_clamps_to_field():
    assert player_frame_to_display(0, (100, 1000), (-500, -500), unit_size=150) == (75, 1005)


coord = st.integers(min_value=0, max_value=1920)
delta = st.integers(min_value=-2000, max_value=2000)


@given(st.sampled_from([0, 1]), coord, st.integers(0, 1080), delta, delta)
def test_frame_round_trip(player, x, y, dx, dy):
    dest = player_frame_to_display(player, (x, y), (dx, dy))
    inside = 0 <= dest[0] <= 1920 and 0 <= dest[1] <= 1080
    back = display_to_player_frame(player, (x, y), dest)
    unclamped = (x + dx, y - dy) if player == 0 else (x - dx, y + dy)
    if inside and dest == unclamped:
        assert back == (dx, dy)


@given(coord, st.integers(0, 1080), delta, delta)
def test_frame_mirror(x, y, dx, dy):
    d0 = player_frame_to_display(0, (x, y), (dx, dy), unit_size=0)
    d1 = player_frame_to_display(1, (x, y), (dx, dy), unit_size=0)
    if 0 < d0[0] < 1920 and 0 < d0[1] < 1080 and 0 < d1[0] < 1920 and 0 < d1[1] < 1080:
        assert (d1[0] - x, d1[1] - y) == (-(d0[0] - x), -(d0[1] - y))


@pytest.mark.parametrize("v, d", [
    ((0, -10), Direction.N), ((10, 10), Direction.SE), ((10, 0), Direction.E),
    ((-10, 0), Direction.W), ((0, 10), Direction.S), ((-5, -5), Direction.NW),
    ((5, -5), Direction.NE), ((-5, 5), Direction.SW),
])
def test_quantize_examples(v, d):
    assert quantize_direction(v) == d


def test_quantize_zero_vector():
    with pytest.raises(ValueError):
        quantize_direction((0, 0))


def test_quantize_boundary_goes_to_lower_code():
    # 22.5 degrees above east sits between E(3) and NE(2)
    a = math.radians(22.5)
    assert quantize_direction((math.cos(a), -math.sin(a))) == Direction.NE


@given(st.floats(0, 359.0), st.floats(0.5, 1000))
def test_quantize_rotation_advances_octant(angle, r):
    # keep away from boundaries so floating-point noise cannot flip a sector
    if abs((angle % 45) - 22.5) < 1e-6:
        return
    def vec(deg):
        t = math.radians(deg)
        return (r * math.cos(t), -r * math.sin(t))
    a = quantize_direction(vec(angle))
    b = quantize_direction(vec(angle + 45))
    # counter-clockwise rotation lowers the code by one (E3 -> NE2 -> N1 ...)
    assert (int(a) - int(b)) % 8 == 1


def test_snap_examples():
    c = snap_to_grid((0, 0), Grid.COARSE)
    assert c == pytest.approx((1920 / 26, 1080 / 14))
    assert c == pytest.approx((73.8, 77.1), abs=0.05)
    assert snap_to_grid((960, 540), Grid.FULL) == (960, 540)
    assert snap_to_grid((1919, 1079), Grid.FINE) == pytest.approx((25.5 * 1920 / 26, 13.5 * 1080 / 14))


@given(st.floats(0, 1920), st.floats(0, 1080), st.sampled_from(list(Grid)))
def test_snap_idempotent(x, y, grid):
    p = snap_to_grid((x, y), grid)
    assert snap_to_grid(p, grid) == p


@pytest.mark.parametrize("x, r", [(7.5, 8), (2.5, 3), (-0.5, 0), (2.49, 2), (10.0, 10)])
def test_round_half_up(x, r):
    assert round_half_up(x) == r
