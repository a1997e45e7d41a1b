"""Domain types, league configuration and battlefield geometry."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional

Point = tuple[float, float]

FIELD_W = 1920
FIELD_H = 1080
MAX_TURNS = 400
TURN_BUDGET_MS = 200

DRAW = -1  # GameState.result value for a drawn game


class UnitType(enum.IntEnum):
    SWORDSMEN = 0
    SPEARMEN = 1
    KNIGHTS = 2
    ARCHERS = 3

    @property
    def beats(self) -> Optional["UnitType"]:
        """Melee type this one counters, None for archers."""
        return _BEATS.get(self)

    def counters(self, other: "UnitType") -> bool:
        return _BEATS.get(self) is other


_BEATS = {
    UnitType.SWORDSMEN: UnitType.SPEARMEN,
    UnitType.SPEARMEN: UnitType.KNIGHTS,
    UnitType.KNIGHTS: UnitType.SWORDSMEN,
}


@dataclass(frozen=True)
class AttributeSet:
    health_points: int
    attack_strength: int
    defence: int
    charge_power: int
    charge_resistance: int
    moving_speed: int
    arrow_defence: int
    throwing_distance: Optional[int] = None
    arrow_damage: Optional[int] = None


ATTRIBUTES: dict[UnitType, AttributeSet] = {
    UnitType.SWORDSMEN: AttributeSet(250, 20, 10, 5, 25, 15, 10),
    UnitType.SPEARMEN: AttributeSet(250, 15, 20, 10, 125, 10, 30),
    UnitType.KNIGHTS: AttributeSet(200, 12, 12, 100, 15, 40, 30),
    UnitType.ARCHERS: AttributeSet(100, 10, 5, 5, 0, 15, 10, 450, 20),
}


class Direction(enum.IntEnum):
    NW = 0
    N = 1
    NE = 2
    E = 3
    SE = 4
    S = 5
    SW = 6
    W = 7


class Phase(enum.Enum):
    DRAFT = "draft"
    BATTLE = "battle"
    FINISHED = "finished"


class Grid(enum.Enum):
    FULL = None
    COARSE = (13, 7)
    FINE = (26, 14)


@dataclass(frozen=True)
class LeagueConfig:
    league: int
    army_size: int
    unit_size: int
    draft_turns: int
    has_general: bool
    width: int = FIELD_W
    height: int = FIELD_H
    max_turns: int = MAX_TURNS
    turn_budget_ms: int = TURN_BUDGET_MS

    @classmethod
    def for_league(cls, league: int) -> "LeagueConfig":
        try:
            n, s, draft, general = _LEAGUES[league]
        except KeyError:
            raise ValueError(f"unknown league {league!r}") from None
        return cls(league, n, s, draft, general)


_LEAGUES = {
    1: (4, 150, 0, False),
    2: (9, 150, 9, False),
    3: (30, 75, 30, True),
}


@dataclass(slots=True)
class Unit:
    id: int
    owner: int
    utype: UnitType
    pos: Point
    facing: Direction
    life: int
    moving: bool = False
    target: Optional[Point] = None
    is_general: bool = False
    engaged_with: Optional[int] = None
    charge_spent: bool = False
    # attribute multiplier from the general, refreshed at the end of every step
    aura: float = 1.0

    @property
    def attrs(self) -> AttributeSet:
        return ATTRIBUTES[self.utype]

    def copy(self) -> "Unit":
        return replace(self)


@dataclass(frozen=True)
class DraftPick:
    utype: UnitType
    pos: tuple[int, int]


@dataclass(frozen=True)
class Order:
    unit_id: int
    delta: tuple[int, int]


@dataclass
class GameState:
    config: LeagueConfig
    turn: int = 0
    phase: Phase = Phase.BATTLE
    armies: list[list[Unit]] = field(default_factory=lambda: [[], []])
    result: Optional[int] = None
    # (player, pick) for every applied draft pick, in application order
    draft_history: list[tuple[int, DraftPick]] = field(default_factory=list)
    # events and warnings produced by the most recent transition
    events: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def copy(self) -> "GameState":
        return GameState(
            config=self.config,
            turn=self.turn,
            phase=self.phase,
            armies=[[u.copy() for u in army] for army in self.armies],
            result=self.result,
            draft_history=list(self.draft_history),
        )

    def unit(self, player: int, unit_id: int) -> Optional[Unit]:
        for u in self.armies[player]:
            if u.id == unit_id:
                return u
        return None

    def alive(self, player: int) -> int:
        return len(self.armies[player])


# -- geometry ---------------------------------------------------------------


def clamp_center(p: Point, unit_size: float = 0, width: float = FIELD_W,
                 height: float = FIELD_H) -> Point:
    """Clamp a unit center so its square stays inside the battlefield."""
    h = unit_size / 2
    x = min(max(p[0], h), width - h)
    y = min(max(p[1], h), height - h)
    return (x, y)


def player_frame_to_display(player: int, origin: Point, delta: tuple[float, float],
                            unit_size: float = 0) -> Point:
    """Turn a relative order into a display-frame destination.

    Player 0 plays from the bottom of the display: +dx is east, +dy is up.
    Player 1 sees the field mirrored.
    """
    dx, dy = delta
    if player == 0:
        p = (origin[0] + dx, origin[1] - dy)
    else:
        p = (origin[0] - dx, origin[1] + dy)
    return clamp_center(p, unit_size)


def display_to_player_frame(player: int, origin: Point, dest: Point) -> tuple[float, float]:
    dx = dest[0] - origin[0]
    dy = dest[1] - origin[1]
    if player == 0:
        return (dx, -dy)
    return (-dx, dy)


# octant k counted counter-clockwise from east -> Direction code
_OCTANT_CODES = [Direction((3 - k) % 8) for k in range(8)]


def quantize_direction(v: Point) -> Direction:
    """Compass octant of a display-frame vector (display y grows downward).

    Boundaries sit at 22.5 + 45k degrees; an exact boundary resolves to the
    lower direction code.
    """
    dx, dy = v
    if dx == 0 and dy == 0:
        raise ValueError("cannot take the direction of a zero vector")
    ang = math.degrees(math.atan2(-dy, dx)) % 360.0
    a = ang / 45.0
    lo = math.floor(a)
    frac = a - lo
    if frac < 0.5:
        return _OCTANT_CODES[lo % 8]
    if frac > 0.5:
        return _OCTANT_CODES[(lo + 1) % 8]
    return min(_OCTANT_CODES[lo % 8], _OCTANT_CODES[(lo + 1) % 8])


def snap_to_grid(p: Point, grid: Grid, width: float = FIELD_W,
                 height: float = FIELD_H) -> Point:
    if grid is Grid.FULL:
        return p
    cols, rows = grid.value
    cw, ch = width / cols, height / rows
    c = min(max(int(p[0] // cw), 0), cols - 1)
    r = min(max(int(p[1] // ch), 0), rows - 1)
    return ((c + 0.5) * cw, (r + 0.5) * ch)


def dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)
