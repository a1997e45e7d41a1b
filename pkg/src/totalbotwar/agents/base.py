from __future__ import annotations

import math
from dataclasses import dataclass

from ..core import DraftPick, LeagueConfig, Order, display_to_player_frame, round_half_up
from ..draft import DraftObservation, predefined_army
from ..engine import Observation, UnitView


@dataclass(frozen=True)
class MatchInfo:
    player: int
    config: LeagueConfig


class Agent:
    """Base agent: drafts the predefined army and issues no battle orders."""

    name = "agent"

    def __init__(self) -> None:
        self.info: MatchInfo | None = None
        self.seed = 0

    def reset(self, info: MatchInfo, seed: int = 0) -> None:
        self.info = info
        self.seed = seed

    @property
    def player(self) -> int:
        return self.info.player

    @property
    def config(self) -> LeagueConfig:
        return self.info.config

    def draft_pick(self, obs: DraftObservation, deadline: float) -> DraftPick:
        utype, pos = predefined_army(self.config.league).placements(self.config, self.player)[obs.turn]
        return DraftPick(utype, pos)

    def act(self, obs: Observation, deadline: float) -> list[Order]:
        return []

    def close(self) -> None:
        pass


def move_order(player: int, unit: UnitView, dest: tuple[float, float]) -> Order:
    """Order steering ``unit`` to a display-frame destination."""
    dx, dy = display_to_player_frame(player, unit.pos, dest)
    return Order(unit.id, (round_half_up(dx), round_half_up(dy)))


def engaged_ids(obs: Observation, unit_size: float) -> set[int]:
    """Own units whose squares touch an enemy square (rounding allowed)."""
    lim = unit_size + 1.0
    out = set()
    for u in obs.own_units:
        if u.moving:
            continue
        for e in obs.enemy_units:
            if abs(u.x - e.x) <= lim and abs(u.y - e.y) <= lim:
                out.add(u.id)
                break
    return out


def field_diagonal(config: LeagueConfig) -> float:
    return math.hypot(config.width, config.height)
