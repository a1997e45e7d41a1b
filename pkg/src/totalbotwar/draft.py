"""Draft phase: deployment zones, pick validation and fixed armies."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Direction,
    DraftPick,
    GameState,
    LeagueConfig,
    Phase,
    Unit,
    UnitType,
    ATTRIBUTES,
)
from .engine import refresh

ZONE_FRACTION = 0.25

K, P, S, A = UnitType.KNIGHTS, UnitType.SPEARMEN, UnitType.SWORDSMEN, UnitType.ARCHERS


class DraftError(RuntimeError):
    pass


def zone_bounds(config: LeagueConfig, player: int) -> tuple[float, float]:
    """Vertical extent (display frame) of a player's deployment zone."""
    depth = ZONE_FRACTION * config.height
    if player == 0:
        return (config.height - depth, float(config.height))
    return (0.0, depth)


def in_zone(config: LeagueConfig, player: int, pos: tuple[float, float]) -> bool:
    h = config.unit_size / 2
    lo, hi = zone_bounds(config, player)
    x, y = pos
    return h <= x <= config.width - h and lo + h <= y <= hi - h


def _overlaps(a: tuple[float, float], b: tuple[float, float], size: float) -> bool:
    return abs(a[0] - b[0]) < size and abs(a[1] - b[1]) < size


def legal_pick(state: GameState, player: int, pick: DraftPick) -> bool:
    cfg = state.config
    if not isinstance(pick.utype, UnitType) or not in_zone(cfg, player, pick.pos):
        return False
    return not any(_overlaps(pick.pos, u.pos, cfg.unit_size) for u in state.armies[player])


def nearest_legal_position(state: GameState, player: int,
                           want: tuple[float, float]) -> tuple[int, int]:
    """Closest integer position to ``want`` that is a legal placement."""
    cfg = state.config
    h = cfg.unit_size / 2
    lo, hi = zone_bounds(cfg, player)
    ymin, ymax = int(lo + h + 0.999), int(hi - h)
    xmin, xmax = int(h + 0.999), int(cfg.width - h)
    wx = min(max(round(want[0]), xmin), xmax)
    wy = min(max(round(want[1]), ymin), ymax)
    if legal_pick(state, player, DraftPick(UnitType.SWORDSMEN, (wx, wy))):
        return (wx, wy)
    # candidate lattice: every x, rows snapped to the zone edges and to
    # the edges of units already placed
    ys = {ymin, ymax, wy}
    for u in state.armies[player]:
        for cy in (u.pos[1] - cfg.unit_size, u.pos[1] + cfg.unit_size):
            if ymin <= cy <= ymax:
                ys.add(int(round(cy)))
    xs = {wx}
    for u in state.armies[player]:
        for cx in (u.pos[0] - cfg.unit_size, u.pos[0] + cfg.unit_size):
            cx = int(round(cx))
            if xmin <= cx <= xmax:
                xs.add(cx)
    xs.update(range(xmin, xmax + 1, 5))
    xs.add(xmax)
    cands = sorted(((x - wx) ** 2 + (y - wy) ** 2, x, y) for x in xs for y in ys)
    for _, x, y in cands:
        if legal_pick(state, player, DraftPick(UnitType.SWORDSMEN, (x, y))):
            return (x, y)
    raise DraftError(f"no legal placement left for player {player}")


# -- fixed armies ----------------------------------------------------------------


@dataclass(frozen=True)
class PredefinedArmy:
    """Ordered draft slots: (type, (dx, y_from_own_edge)) in the owner's frame.

    ``dx`` is measured from the left edge as the owner sees it and the second
    coordinate from the owner's back edge.
    """

    slots: tuple[tuple[UnitType, tuple[float, float]], ...]

    def placements(self, config: LeagueConfig, player: int) -> list[tuple[UnitType, tuple[int, int]]]:
        out = []
        for utype, (fx, fy) in self.slots:
            x, y = fx, config.height - fy
            if player == 1:
                x, y = config.width - x, config.height - y
            out.append((utype, (int(round(x)), int(round(y)))))
        return out


def _row(types: list[UnitType], back: float, width: float = 1920) -> list[tuple[UnitType, tuple[float, float]]]:
    k = len(types)
    return [(t, ((i + 0.5) * width / k, back)) for i, t in enumerate(types)]


def predefined_army(league: int) -> PredefinedArmy:
    """Knights on the flanks, spearmen and swordsmen centre, archers behind."""
    if league == 1:
        slots = _row([K, P, S, A], 0.1 * 1080)
    elif league == 2:
        front = _row([K, P, S, S, P, K], 195)
        rear = _row([A, A, A], 75)
        slots = front + rear
    elif league == 3:
        front = _row([K, K] + [P] * 8 + [K, K], 210)
        middle = _row([K, K] + [S] * 7 + [K, K], 125)
        rear = _row([A] * 7, 45)
        slots = front + middle + rear
        # general (centre swordsman) goes first
        general = middle[5]
        slots = [general] + [sl for sl in slots if sl is not general]
    else:
        raise ValueError(f"unknown league {league!r}")
    return PredefinedArmy(tuple(slots))


def default_pick(state: GameState, player: int, slot: int) -> DraftPick:
    utype, pos = predefined_army(state.config.league).placements(state.config, player)[slot]
    pick = DraftPick(utype, pos)
    if legal_pick(state, player, pick):
        return pick
    return DraftPick(utype, nearest_legal_position(state, player, pos))


def make_unit(config: LeagueConfig, player: int, uid: int, utype: UnitType,
               pos: tuple[float, float], general: bool = False) -> Unit:
    facing = Direction.N if player == 0 else Direction.S
    return Unit(id=uid, owner=player, utype=utype, pos=(float(pos[0]), float(pos[1])),
                facing=facing, life=ATTRIBUTES[utype].health_points, is_general=general)


def new_game(league: int) -> GameState:
    """Initial state for a league: the fixed opening or an empty draft."""
    if league == 1:
        return league1_opening()
    cfg = LeagueConfig.for_league(league)
    return GameState(config=cfg, turn=0, phase=Phase.DRAFT)


def league1_opening() -> GameState:
    cfg = LeagueConfig.for_league(1)
    s = GameState(config=cfg, turn=0, phase=Phase.BATTLE)
    army = predefined_army(1)
    for player in (0, 1):
        for i, (utype, pos) in enumerate(army.placements(cfg, player)):
            s.armies[player].append(make_unit(cfg, player, i + 1, utype, pos))
    refresh(s)
    return s


def apply_draft_turn(state: GameState, pick_p0: DraftPick | None,
                     pick_p1: DraftPick | None) -> GameState:
    """Place both players' picks simultaneously.

    Illegal or missing picks are replaced by the player's predefined-army
    pick for the same slot; a warning is recorded.
    """
    if state.phase is not Phase.DRAFT:
        raise DraftError(f"draft turn in phase {state.phase.value}")
    s = state.copy()
    cfg = s.config
    slot = s.turn
    chosen = []
    for player, pick in ((0, pick_p0), (1, pick_p1)):
        if pick is None or not legal_pick(s, player, pick):
            s.warnings.append(f"player {player}: illegal draft pick {pick!r}, using default")
            pick = default_pick(s, player, slot)
        chosen.append(pick)
    for player, pick in enumerate(chosen):
        general = cfg.has_general and slot == 0
        s.armies[player].append(make_unit(cfg, player, slot + 1, pick.utype, pick.pos, general))
        s.draft_history.append((player, pick))
    s.turn += 1
    if s.turn >= cfg.draft_turns:
        s.phase = Phase.BATTLE
        refresh(s)
    return s


@dataclass(frozen=True)
class DraftObservation:
    """What a player sees before picking: the turn index and all earlier picks."""

    player: int
    turn: int
    history: tuple[tuple[int, int, int, int], ...]  # (player, type, x, y)

    def picks_of(self, player: int) -> list[tuple[int, int, int]]:
        return [(t, x, y) for p, t, x, y in self.history if p == player]


def observe_draft(state: GameState, player: int) -> DraftObservation:
    hist = tuple((p, int(pk.utype), int(pk.pos[0]), int(pk.pos[1])) for p, pk in state.draft_history)
    return DraftObservation(player, state.turn, hist)
