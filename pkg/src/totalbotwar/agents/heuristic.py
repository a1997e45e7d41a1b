"""Rule-based agent scoring every (own unit, enemy unit) pair."""

from __future__ import annotations

import math
from collections import Counter
from typing import Optional

from ..core import Direction, DraftPick, GameState, LeagueConfig, Phase, UnitType
from ..draft import DraftObservation, make_unit, nearest_legal_position, zone_bounds
from ..engine import Observation, UnitView
from .base import Agent, engaged_ids, field_diagonal, move_order

ARCHER_RANGE = 450.0
GENERAL_ID = 1

_S2 = math.sqrt(0.5)
FACING_VECTORS = {
    Direction.NW: (-_S2, -_S2),
    Direction.N: (0.0, -1.0),
    Direction.NE: (_S2, -_S2),
    Direction.E: (1.0, 0.0),
    Direction.SE: (_S2, _S2),
    Direction.S: (0.0, 1.0),
    Direction.SW: (-_S2, _S2),
    Direction.W: (-1.0, 0.0),
}

# draft reply to the opponent's last pick
COUNTER_PICK = {
    UnitType.KNIGHTS: UnitType.SPEARMEN,
    UnitType.SPEARMEN: UnitType.SWORDSMEN,
    UnitType.SWORDSMEN: UnitType.KNIGHTS,
    UnitType.ARCHERS: UnitType.KNIGHTS,
}


def matchup_factor(own: UnitType, enemy: UnitType) -> float:
    if own is enemy:
        return 0.5
    if own is UnitType.ARCHERS:
        return 0.0
    if enemy is UnitType.ARCHERS or own.counters(enemy):
        return 1.0
    return 0.0


def is_flank(attacker_pos, defender: UnitView) -> bool:
    """True when the attack does not come from the defender's front half-plane."""
    fx, fy = FACING_VECTORS[Direction(defender.direction)]
    ax, ay = attacker_pos[0] - defender.x, attacker_pos[1] - defender.y
    return fx * ax + fy * ay < 0


def lambda_factors(own: UnitView, enemy: UnitView, enemies: tuple[UnitView, ...],
                   config: LeagueConfig) -> list[float]:
    f1 = matchup_factor(UnitType(own.type), UnitType(enemy.type))
    exposed = any(
        e.type == UnitType.ARCHERS and math.hypot(e.x - enemy.x, e.y - enemy.y) <= ARCHER_RANGE
        for e in enemies
    )
    f2 = 0.0 if exposed else 1.0
    f3 = 1.0 if own.life > enemy.life else 0.5 if own.life == enemy.life else 0.0
    f4 = 1.0 if is_flank(own.pos, enemy) else 0.0
    d = math.hypot(own.x - enemy.x, own.y - enemy.y)
    f5 = max(0.0, 1.0 - d / field_diagonal(config))
    out = [f1, f2, f3, f4, f5]
    if config.has_general:
        out.append(1.0 if enemy.id == GENERAL_ID else 0.0)
    return out


def lambda_score(own: UnitView, enemy: UnitView, obs: Observation, config: LeagueConfig) -> float:
    fs = lambda_factors(own, enemy, obs.enemy_units, config)
    return sum(fs) / len(fs)


def best_target(own: UnitView, obs: Observation, config: LeagueConfig) -> Optional[UnitView]:
    best, best_score = None, -1.0
    for e in obs.enemy_units:  # ids ascending, so strict > keeps the lowest id on ties
        sc = lambda_score(own, e, obs, config)
        if sc > best_score:
            best, best_score = e, sc
    return best


def heuristic_assignment(obs: Observation, config: LeagueConfig) -> list[int]:
    """Enemy id chosen for each own unit, own units in id order."""
    return [best_target(u, obs, config).id for u in obs.own_units]


def zone_center_y(config: LeagueConfig, player: int) -> float:
    lo, hi = zone_bounds(config, player)
    return (lo + hi) / 2


def counter_draft_pick(obs: DraftObservation, config: LeagueConfig) -> DraftPick:
    """Counter the opponent's previous pick, placed in front of it."""
    me = obs.player
    mine = obs.picks_of(me)
    theirs = obs.picks_of(1 - me)
    cap = math.ceil(config.army_size / 3)
    counts = Counter(UnitType(t) for t, _, _ in mine)
    y = zone_center_y(config, me)
    if not theirs:
        utype, x = UnitType.SWORDSMEN, config.width / 2
    else:
        t, x, _ = theirs[-1]
        utype = COUNTER_PICK[UnitType(t)]
        if counts[utype] >= cap:
            utype = min(UnitType, key=lambda ut: (counts[ut], int(ut)))

    scratch = GameState(config=config, phase=Phase.DRAFT)
    scratch.armies[me] = [make_unit(config, me, i + 1, UnitType(t), (px, py))
                          for i, (t, px, py) in enumerate(mine)]
    return DraftPick(utype, nearest_legal_position(scratch, me, (x, y)))


class Heuristic(Agent):
    name = "heuristic"

    def draft_pick(self, obs: DraftObservation, deadline: float) -> DraftPick:
        return counter_draft_pick(obs, self.config)

    def act(self, obs: Observation, deadline: float):
        if not obs.enemy_units:
            return []
        busy = engaged_ids(obs, self.config.unit_size)
        orders = []
        for u in obs.own_units:
            if u.id in busy:
                continue
            t = best_target(u, obs, self.config)
            orders.append(move_order(self.player, u, t.pos))
        return orders
