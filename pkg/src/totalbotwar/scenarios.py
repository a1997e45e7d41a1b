"""Hand-built battle states for experiments and tests."""

from __future__ import annotations

from typing import Optional

from .core import ATTRIBUTES, Direction, GameState, LeagueConfig, Order, Phase, Unit, UnitType
from .engine import refresh, step


def make_unit(uid: int, owner: int, utype: UnitType, pos, facing: Optional[Direction] = None, **kw) -> Unit:
    if facing is None:
        facing = Direction.N if owner == 0 else Direction.S
    return Unit(id=uid, owner=owner, utype=utype, pos=(float(pos[0]), float(pos[1])),
                facing=facing, life=kw.pop("life", ATTRIBUTES[utype].health_points), **kw)


def battle_state(league: int, p0_units, p1_units, turn: int = 0) -> GameState:
    """A battle-phase state holding exactly the given units."""
    s = GameState(config=LeagueConfig.for_league(league), turn=turn, phase=Phase.BATTLE)
    s.armies = [list(p0_units), list(p1_units)]
    refresh(s)
    return s


def frontal_duel(a_type: UnitType, b_type: UnitType, league: int = 2, gap: Optional[float] = None,
                 max_steps: int = 400) -> tuple[Optional[int], GameState]:
    """Two units walk straight at each other and fight to the end.

    Melee pairs start ``gap`` (default 300) px apart so charges happen;
    pairs with an archer start in contact. In league 3 each lone unit is its
    army's general. Returns (winner, state) with winner 0 for ``a_type``
    (player 0), 1 for ``b_type``, DRAW, or None if nobody died.
    """
    if gap is None:
        gap = 0 if UnitType.ARCHERS in (a_type, b_type) else 300
    cfg = LeagueConfig.for_league(league)
    cx, cy = cfg.width / 2, cfg.height / 2
    half = (cfg.unit_size + gap) / 2
    g = cfg.has_general
    s = battle_state(league, [make_unit(1, 0, a_type, (cx, cy + half), is_general=g)],
                     [make_unit(1, 1, b_type, (cx, cy - half), is_general=g)])
    # both players order "forward" in their own frame
    orders = [Order(1, (0, 1000))]
    for _ in range(max_steps):
        if s.phase is not Phase.BATTLE:
            break
        s = step(s, orders, orders)
        orders = []
    return s.result, s
