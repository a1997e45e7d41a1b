"""Battle-phase forward model.

A call to :func:`step` runs one turn in fixed sub-phase order: orders,
movement, charges, melee, archery, removal of the dead, bookkeeping,
turn increment and terminal check. The input state is never mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import (
    DRAW,
    GameState,
    Order,
    Phase,
    Point,
    Unit,
    UnitType,
    dist,
    player_frame_to_display,
    quantize_direction,
    round_half_up,
)

AURA_RADIUS = 150.0
AURA_BOOST = 1.25
AURA_PENALTY = 0.75
COUNTER_ADVANTAGE = 1.5
FRIENDLY_FIRE_RADIUS = 80.0
_EPS = 1e-6


class EngineError(RuntimeError):
    pass


# -- damage rules -------------------------------------------------------------


def melee_tick_damage(attacker: Unit, defender: Unit) -> int:
    adv = COUNTER_ADVANTAGE if attacker.utype.counters(defender.utype) else 1.0
    atk = attacker.attrs.attack_strength * attacker.aura
    dfn = defender.attrs.defence * defender.aura
    return max(1, round_half_up(atk * adv - dfn / 2))


def resolve_charge(attacker: Unit, defender: Unit) -> int:
    if attacker.charge_spent:
        return 0
    cp = attacker.attrs.charge_power * attacker.aura
    cr = defender.attrs.charge_resistance * defender.aura
    return max(0, round_half_up(cp - cr))


def arrow_damage(archer: Unit, target: Unit) -> int:
    ad = archer.attrs.arrow_damage * archer.aura
    adef = target.attrs.arrow_defence * target.aura
    return max(1, round_half_up(ad - adef / 2))


def aura_multiplier(unit: Unit, state: GameState) -> float:
    if not state.config.has_general:
        return 1.0
    general = next((u for u in state.armies[unit.owner] if u.is_general), None)
    if general is None:
        return AURA_PENALTY
    if dist(unit.pos, general.pos) <= AURA_RADIUS:
        return AURA_BOOST
    return 1.0


# -- geometry helpers ---------------------------------------------------------


def _sweep(p: Point, v: Point, q: Point, reach: float,
           touching: bool) -> Optional[tuple[float, int]]:
    """Earliest t in [0, 1] at which a square moving p -> p+v meets a square at q.

    Returns ``(t, axis)`` where ``axis`` is the axis (0 = x, 1 = y) whose
    faces meet, or None. ``reach`` is the centre separation at which squares
    meet on an axis. With ``touching`` the boxes count as meeting when they
    touch, otherwise only when they overlap.
    """
    t_in, t_out = -math.inf, math.inf
    axis = 0
    for ax, (pa, va, qa) in enumerate(((p[0], v[0], q[0]), (p[1], v[1], q[1]))):
        d = qa - pa
        if va == 0.0:
            inside = abs(d) <= reach if touching else abs(d) < reach
            if not inside:
                return None
            continue
        t1 = (d - reach) / va
        t2 = (d + reach) / va
        if t1 > t2:
            t1, t2 = t2, t1
        if t1 > t_in:
            t_in = t1
            axis = ax
        if t2 < t_out:
            t_out = t2
    if touching:
        if t_in > t_out or t_in > 1.0 or t_out < 0.0:
            return None
    elif t_in >= t_out or t_in >= 1.0 or t_out <= 0.0:
        return None
    return max(t_in, 0.0), axis


def _touching(a: Unit, b: Unit, size: float) -> bool:
    lim = size + _EPS
    return abs(a.pos[0] - b.pos[0]) <= lim and abs(a.pos[1] - b.pos[1]) <= lim


# -- sub-phases -----------------------------------------------------------------


def apply_orders(state: GameState, player: int, orders: Iterable[Order]) -> GameState:
    """Return a copy of ``state`` with ``player``'s orders applied."""
    s = state.copy()
    _apply_orders(s, player, orders)
    return s


def _apply_orders(s: GameState, player: int, orders: Iterable[Order]) -> None:
    size = s.config.unit_size
    by_id = {u.id: u for u in s.armies[player]}
    for order in orders:
        u = by_id.get(order.unit_id)
        if u is None:
            s.warnings.append(f"player {player}: order for unknown or dead unit {order.unit_id}")
            continue
        if u.engaged_with is not None:
            continue
        if order.delta[0] == 0 and order.delta[1] == 0:
            u.target = None
            u.moving = False
            continue
        dest = player_frame_to_display(player, u.pos, order.delta, size)
        if abs(dest[0] - u.pos[0]) < _EPS and abs(dest[1] - u.pos[1]) < _EPS:
            u.target = None
            u.moving = False
        else:
            u.target = dest
            u.moving = True


def move_unit(s: GameState, u: Unit, contacts: list[tuple[Unit, Unit]]) -> None:
    """Advance one unit towards its target in place.

    Contact with an enemy halts the unit and engages both sides; the pair is
    appended to ``contacts`` for charge resolution.
    """
    if u.target is None or u.engaged_with is not None:
        return
    size = s.config.unit_size
    tx, ty = u.target
    px, py = u.pos
    dx, dy = tx - px, ty - py
    d = math.hypot(dx, dy)
    if d < _EPS:
        u.pos = u.target
        u.target = None
        u.moving = False
        return
    u.facing = quantize_direction((dx, dy))
    speed = u.attrs.moving_speed * u.aura
    frac = min(1.0, speed / d)
    v = (dx * frac, dy * frac)
    dest, hit, blocked = _slide(s, u, u.pos, v)
    u.pos = dest
    if hit is not None:
        _contact(u, hit, contacts)
        return
    if not blocked and frac >= 1.0:
        u.pos = u.target
        u.target = None
        u.moving = False


def _contact(u: Unit, hit: Unit, contacts: list[tuple[Unit, Unit]]) -> None:
    u.moving = False
    u.engaged_with = hit.id
    if hit.engaged_with is None:
        hit.engaged_with = u.id
    contacts.append((u, hit))


def _first_hit(s: GameState, u: Unit, p: Point, v: Point) -> tuple[float, int, Optional[Unit], bool]:
    """Earliest obstacle on the segment p -> p+v: (t, axis, enemy or None, found)."""
    size = s.config.unit_size
    lim = size + abs(v[0]) + abs(v[1]) + 1.0
    px, py = p
    best: Optional[tuple[float, int, int]] = None
    best_axis = 0
    hit: Optional[Unit] = None
    for army_idx, army in enumerate(s.armies):
        enemy = army_idx != u.owner
        for o in army:
            if o is u:
                continue
            ox, oy = o.pos
            if abs(ox - px) > lim or abs(oy - py) > lim:
                continue
            if enemy:
                r = _sweep(p, v, o.pos, size + _EPS, touching=True)
                if r is None:
                    continue
                t, axis = r
            else:
                # detect against a slightly shrunk box, stop where the full
                # boxes touch, so resting contact never reads as overlap
                r = _sweep(p, v, o.pos, size - _EPS, touching=False)
                if r is None:
                    continue
                axis = r[1]
                rt = _sweep(p, v, o.pos, size, touching=True)
                t = r[0] if rt is None else min(r[0], rt[0])
            # earliest first, enemies before friends, then lowest id
            key = (t, 0 if enemy else 1, o.id)
            if best is None or key < best:
                best = key
                best_axis = axis
                hit = o if enemy else None
    if best is None:
        return 1.0, 0, None, False
    return best[0], best_axis, hit, True


def _slide(s: GameState, u: Unit, p: Point, v: Point) -> tuple[Point, Optional[Unit], bool]:
    """Move along v; on meeting a friend, slide once along the blocking face."""
    t, axis, hit, found = _first_hit(s, u, p, v)
    pos = (p[0] + v[0] * t, p[1] + v[1] * t)
    if not found or hit is not None:
        return pos, hit, False
    rest = [v[0] * (1.0 - t), v[1] * (1.0 - t)]
    rest[axis] = 0.0
    if abs(rest[0]) < _EPS and abs(rest[1]) < _EPS:
        return pos, None, True
    t2, _, hit2, found2 = _first_hit(s, u, pos, (rest[0], rest[1]))
    pos = (pos[0] + rest[0] * t2, pos[1] + rest[1] * t2)
    return pos, hit2, True


def _resolve_charges(s: GameState, contacts: list[tuple[Unit, Unit]],
                     was_moving: set[tuple[int, int]]) -> None:
    charged: list[tuple[Unit, Unit]] = []
    for mover, other in contacts:
        charged.append((mover, other))
        # head-on meeting of two moving units: both sides charge
        if (other.owner, other.id) in was_moving and other.engaged_with == mover.id:
            charged.append((other, mover))
    for att, dfn in charged:
        if att.charge_spent:
            continue
        dmg = resolve_charge(att, dfn)
        att.charge_spent = True
        if dmg > 0:
            dfn.life = max(0, dfn.life - dmg)
        s.events.append({"kind": "charge", "src": [att.owner, att.id],
                         "dst": [dfn.owner, dfn.id], "damage": dmg})


def _engage_contacts(s: GameState) -> None:
    """Engage every free unit whose square touches an enemy square."""
    size = s.config.unit_size
    for army_idx in (0, 1):
        enemies = s.armies[1 - army_idx]
        for u in s.armies[army_idx]:
            if u.engaged_with is not None:
                continue
            best = None
            best_d = math.inf
            for e in enemies:
                if _touching(u, e, size):
                    d = dist(u.pos, e.pos)
                    if d < best_d or (d == best_d and e.id < best.id):
                        best, best_d = e, d
            if best is not None:
                u.engaged_with = best.id
                u.moving = False


def _melee(s: GameState) -> None:
    lookup = [{u.id: u for u in army} for army in s.armies]
    hits: list[tuple[Unit, Unit, int]] = []
    for army in s.armies:
        for u in army:
            if u.engaged_with is None:
                continue
            foe = lookup[1 - u.owner].get(u.engaged_with)
            if foe is None:
                continue
            hits.append((u, foe, melee_tick_damage(u, foe)))
    for u, foe, dmg in hits:
        foe.life = max(0, foe.life - dmg)
        s.events.append({"kind": "melee", "src": [u.owner, u.id],
                         "dst": [foe.owner, foe.id], "damage": dmg})


def _archery(s: GameState) -> None:
    hits: list[tuple[Unit, Unit, int]] = []
    for army in s.armies:
        for a in army:
            if a.utype is not UnitType.ARCHERS:
                continue
            rng = a.attrs.throwing_distance
            target = None
            best_d = math.inf
            for e in s.armies[1 - a.owner]:
                d = dist(a.pos, e.pos)
                if d <= rng and (d < best_d or (d == best_d and e.id < target.id)):
                    target, best_d = e, d
            if target is None:
                continue
            dmg = arrow_damage(a, target)
            hits.append((a, target, dmg))
            for f in army:
                if f is a:
                    continue
                if dist(f.pos, target.pos) <= FRIENDLY_FIRE_RADIUS:
                    hits.append((a, f, round_half_up(arrow_damage(a, f) / 2)))
    for a, t, dmg in hits:
        t.life = max(0, t.life - dmg)
        s.events.append({"kind": "arrow", "src": [a.owner, a.id],
                         "dst": [t.owner, t.id], "damage": dmg})


def _remove_dead(s: GameState) -> None:
    dead: list[set[int]] = [set(), set()]
    for idx, army in enumerate(s.armies):
        for u in army:
            if u.life <= 0:
                dead[idx].add(u.id)
                s.events.append({"kind": "death", "unit": [idx, u.id]})
    if not (dead[0] or dead[1]):
        return
    s.armies = [[u for u in army if u.life > 0] for army in s.armies]
    for idx, army in enumerate(s.armies):
        gone = dead[1 - idx]
        for u in army:
            if u.engaged_with in gone:
                u.engaged_with = None
                u.charge_spent = False


def refresh(s: GameState) -> None:
    """Recompute engagement, aura, facing and moving flags in place."""
    _engage_contacts(s)
    cfg = s.config
    generals: list[Optional[Unit]] = [None, None]
    if cfg.has_general:
        for idx, army in enumerate(s.armies):
            generals[idx] = next((u for u in army if u.is_general), None)
    lookup = [{u.id: u for u in army} for army in s.armies]
    for idx, army in enumerate(s.armies):
        g = generals[idx]
        for u in army:
            if not cfg.has_general:
                u.aura = 1.0
            elif g is None:
                u.aura = AURA_PENALTY
            else:
                u.aura = AURA_BOOST if dist(u.pos, g.pos) <= AURA_RADIUS else 1.0
            if u.engaged_with is not None:
                foe = lookup[1 - idx].get(u.engaged_with)
                if foe is not None and foe.pos != u.pos:
                    u.facing = quantize_direction((foe.pos[0] - u.pos[0], foe.pos[1] - u.pos[1]))
                u.moving = False
            else:
                u.moving = u.target is not None


def check_terminal(state: GameState) -> Optional[int]:
    a, b = state.alive(0), state.alive(1)
    if a == 0 and b == 0:
        return DRAW
    if a == 0:
        return 1
    if b == 0:
        return 0
    if state.turn >= state.config.max_turns:
        if a == b:
            return DRAW
        return 0 if a > b else 1
    return None


def advance(s: GameState, orders_p0: Iterable[Order], orders_p1: Iterable[Order]) -> None:
    """In-place version of :func:`step` for states the caller owns."""
    if s.phase is not Phase.BATTLE:
        raise EngineError(f"cannot step a game in phase {s.phase.value}")
    s.events = []
    s.warnings = []
    _apply_orders(s, 0, orders_p0)
    _apply_orders(s, 1, orders_p1)

    was_moving = {(u.owner, u.id) for army in s.armies for u in army
                  if u.target is not None and u.engaged_with is None}
    contacts: list[tuple[Unit, Unit]] = []
    for army in s.armies:
        for u in sorted(army, key=lambda x: x.id):
            move_unit(s, u, contacts)
    _engage_contacts(s)
    _resolve_charges(s, contacts, was_moving)
    _melee(s)
    _archery(s)
    _remove_dead(s)
    refresh(s)
    s.turn += 1
    result = check_terminal(s)
    if result is not None:
        s.result = result
        s.phase = Phase.FINISHED


def step(state: GameState, orders_p0: Iterable[Order] = (), orders_p1: Iterable[Order] = ()) -> GameState:
    if state.phase is not Phase.BATTLE:
        raise EngineError(f"cannot step a game in phase {state.phase.value}")
    s = state.copy()
    advance(s, orders_p0, orders_p1)
    return s


# -- observations ---------------------------------------------------------------


@dataclass(frozen=True)
class UnitView:
    id: int
    x: int
    y: int
    direction: int
    life: int
    type: int
    moving: int
    target_x: Optional[int] = None
    target_y: Optional[int] = None

    @property
    def pos(self) -> tuple[int, int]:
        return (self.x, self.y)


@dataclass(frozen=True)
class Observation:
    player: int
    own_units: tuple[UnitView, ...]
    enemy_units: tuple[UnitView, ...]

    @property
    def own_count(self) -> int:
        return len(self.own_units)

    @property
    def enemy_count(self) -> int:
        return len(self.enemy_units)

    def field_count(self) -> int:
        return 1 + 9 * self.own_count + 7 * self.enemy_count


def observe(state: GameState, player: int) -> Observation:
    """Per-player view with integer coordinates; enemy targets are withheld."""
    own = []
    for u in sorted(state.armies[player], key=lambda x: x.id):
        x, y = round_half_up(u.pos[0]), round_half_up(u.pos[1])
        if u.target is not None:
            tx, ty = round_half_up(u.target[0]), round_half_up(u.target[1])
        else:
            tx, ty = x, y
        own.append(UnitView(u.id, x, y, int(u.facing), u.life, int(u.utype),
                            int(u.moving), tx, ty))
    enemy = [
        UnitView(u.id, round_half_up(u.pos[0]), round_half_up(u.pos[1]), int(u.facing),
                 u.life, int(u.utype), int(u.moving))
        for u in sorted(state.armies[1 - player], key=lambda x: x.id)
    ]
    return Observation(player, tuple(own), tuple(enemy))
