"""Text wire format between referee and bots, and the subprocess adapter.

Session layout on the bot's stdin::

    league n s draft_turns player        (once)
    <draft message>                      (draft_turns times)
    <battle message>                     (every battle turn)

A draft message is the 0-based draft turn ``k`` on one line followed by the
``2k`` picks made so far, one ``player type x y`` line each. A battle message
is the own-unit count, one ``id x y direction life type moving tx ty`` row per
own unit, the enemy count and one ``id x y direction life type moving`` row
per enemy. Bots answer every message with exactly one line: ``type x y`` in
the draft, a ``;``-separated action string in battle.
"""

from __future__ import annotations

import queue
import shlex
import subprocess
import threading
import time
from typing import Iterable, Optional, Sequence

from .core import DraftPick, LeagueConfig, Order, UnitType
from .draft import DraftObservation
from .engine import Observation, UnitView


class ProtocolError(ValueError):
    pass


class BotLaunchError(RuntimeError):
    """The bot command could not be started; the match cannot be played."""


class BotForfeit(RuntimeError):
    """Raised by an external bot adapter when its bot loses by forfeit."""

    def __init__(self, player: int, reason: str) -> None:
        super().__init__(f"player {player} forfeits: {reason}")
        self.player = player
        self.reason = reason


# -- actions ---------------------------------------------------------------------


def parse_action_string(text: str) -> list[Order]:
    orders = []
    for i, frag in enumerate(text.split(";")):
        frag = frag.strip()
        if not frag:
            continue
        parts = frag.split()
        if len(parts) != 3:
            raise ProtocolError(f"fragment {i} ({frag!r}): expected 'ID dx dy'")
        try:
            uid, dx, dy = (int(p) for p in parts)
        except ValueError:
            raise ProtocolError(f"fragment {i} ({frag!r}): non-integer token") from None
        orders.append(Order(uid, (dx, dy)))
    return orders


def render_orders(orders: Iterable[Order]) -> str:
    return "; ".join(f"{o.unit_id} {o.delta[0]} {o.delta[1]}" for o in orders)


# -- observations -------------------------------------------------------------------


def encode_battle_observation(obs: Observation) -> str:
    lines = [str(obs.own_count)]
    for u in obs.own_units:
        lines.append(f"{u.id} {u.x} {u.y} {u.direction} {u.life} {u.type} {u.moving} "
                     f"{u.target_x} {u.target_y}")
    lines.append(str(obs.enemy_count))
    for u in obs.enemy_units:
        lines.append(f"{u.id} {u.x} {u.y} {u.direction} {u.life} {u.type} {u.moving}")
    return "\n".join(lines) + "\n"


def _ints(line: str, n: int) -> list[int]:
    parts = line.split()
    if len(parts) != n:
        raise ProtocolError(f"expected {n} integers, got {line!r}")
    return [int(p) for p in parts]


def read_battle_observation(readline, player: int) -> Observation:
    """Parse one battle message using ``readline`` to pull lines."""
    own = []
    for _ in range(_ints(readline(), 1)[0]):
        own.append(UnitView(*_ints(readline(), 9)))
    enemy = []
    for _ in range(_ints(readline(), 1)[0]):
        enemy.append(UnitView(*_ints(readline(), 7)))
    return Observation(player, tuple(own), tuple(enemy))


def decode_battle_observation(text: str, player: int) -> Observation:
    it = iter(text.splitlines())
    return read_battle_observation(lambda: next(it), player)


def encode_draft_observation(obs: DraftObservation) -> str:
    lines = [str(obs.turn)]
    lines += [f"{p} {t} {x} {y}" for p, t, x, y in obs.history]
    return "\n".join(lines) + "\n"


def read_draft_observation(readline, player: int) -> DraftObservation:
    turn = _ints(readline(), 1)[0]
    hist = tuple(tuple(_ints(readline(), 4)) for _ in range(2 * turn))
    return DraftObservation(player, turn, hist)


def decode_draft_observation(text: str, player: int) -> DraftObservation:
    it = iter(text.splitlines())
    return read_draft_observation(lambda: next(it), player)


def parse_draft_pick(text: str) -> DraftPick:
    try:
        t, x, y = _ints(text, 3)
    except ValueError as exc:
        raise ProtocolError(f"bad draft reply {text!r}: {exc}") from None
    if t not in UnitType._value2member_map_:
        raise ProtocolError(f"unknown unit type code {t}")
    return DraftPick(UnitType(t), (x, y))


def render_draft_pick(pick: DraftPick) -> str:
    return f"{int(pick.utype)} {int(pick.pos[0])} {int(pick.pos[1])}"


def encode_header(config: LeagueConfig, player: int) -> str:
    return f"{config.league} {config.army_size} {config.unit_size} {config.draft_turns} {player}\n"


def parse_header(line: str) -> tuple[int, int]:
    """Return (league, player) from the session header."""
    league, _n, _s, _d, player = _ints(line, 5)
    return league, player


# -- external bots -------------------------------------------------------------------


class ExternalBot:
    """Referee-side adapter for a bot process speaking the text protocol.

    Every reply must arrive within the turn budget. A late or missing reply
    counts as no orders (default pick in the draft) and earns a strike;
    ``max_strikes`` strikes forfeit the match. Replies that arrive after their
    turn was written off are discarded.
    """

    name = "bot"

    def __init__(self, command: str | Sequence[str], max_strikes: int = 3,
                 first_turn_grace_ms: float = 1000.0) -> None:
        self.command = shlex.split(command) if isinstance(command, str) else list(command)
        self.max_strikes = max_strikes
        self.first_turn_grace_ms = first_turn_grace_ms
        self.proc: Optional[subprocess.Popen] = None
        self.lines: queue.Queue = queue.Queue()
        self.strikes = 0
        self.warnings: list[str] = []
        self._stale = 0
        self._first = True
        self.player = 0

    def reset(self, info, seed: int = 0) -> None:
        self.player = info.player
        self.config = info.config
        try:
            self.proc = subprocess.Popen(
                self.command, stdin=subprocess.PIPE, stdout=subprocess.PIPE,
                stderr=subprocess.DEVNULL, text=True, bufsize=1,
            )
        except OSError as exc:
            raise BotLaunchError(f"cannot launch bot {self.command!r}: {exc}") from exc
        threading.Thread(target=self._pump, args=(self.proc.stdout,), daemon=True).start()
        self._send(encode_header(info.config, info.player))

    def _pump(self, stream) -> None:
        for line in stream:
            self.lines.put(line.rstrip("\n"))
        self.lines.put(None)

    def _send(self, text: str) -> None:
        try:
            self.proc.stdin.write(text)
            self.proc.stdin.flush()
        except (BrokenPipeError, OSError, ValueError):
            raise BotForfeit(self.player, "bot process exited") from None

    def _exchange(self, text: str, deadline: float) -> Optional[str]:
        """Send one message; return the reply or None on timeout."""
        self._send(text)
        if self._first:
            deadline = max(deadline, time.perf_counter() + self.first_turn_grace_ms / 1000.0)
            self._first = False
        while True:
            wait = deadline - time.perf_counter()
            try:
                line = self.lines.get(timeout=max(wait, 0.0)) if wait > 0 else self.lines.get_nowait()
            except queue.Empty:
                self._stale += 1
                self.strikes += 1
                self.warnings.append(f"player {self.player}: timeout (strike {self.strikes})")
                if self.strikes >= self.max_strikes:
                    raise BotForfeit(self.player, f"{self.strikes} timeouts")
                return None
            if line is None:
                raise BotForfeit(self.player, "bot process exited")
            if self._stale:
                self._stale -= 1
                continue
            return line

    def draft_pick(self, obs: DraftObservation, deadline: float) -> Optional[DraftPick]:
        reply = self._exchange(encode_draft_observation(obs), deadline)
        if reply is None:
            return None
        try:
            return parse_draft_pick(reply)
        except ProtocolError as exc:
            self.warnings.append(f"player {self.player}: {exc}")
            return None

    def act(self, obs: Observation, deadline: float) -> list[Order]:
        reply = self._exchange(encode_battle_observation(obs), deadline)
        if reply is None:
            return []
        try:
            return parse_action_string(reply)
        except ProtocolError as exc:
            self.warnings.append(f"player {self.player}: {exc}")
            return []

    def close(self) -> None:
        if self.proc is None:
            return
        try:
            self.proc.stdin.close()
        except OSError:
            pass
        try:
            self.proc.wait(timeout=1.0)
        except subprocess.TimeoutExpired:
            self.proc.kill()
            self.proc.wait()
        self.proc = None


# -- bot side -----------------------------------------------------------------------


def serve(agent, seed: int, stdin, stdout, budget_ms: float = 200.0) -> None:
    """Run a built-in agent as a protocol bot over the given streams."""
    from .agents.base import MatchInfo

    def readline() -> str:
        line = stdin.readline()
        if not line:
            raise EOFError
        return line

    try:
        league, player = parse_header(readline())
    except EOFError:
        return
    config = LeagueConfig.for_league(league)
    agent.reset(MatchInfo(player, config), seed)
    turn = 0
    while True:
        try:
            if turn < config.draft_turns:
                dobs = read_draft_observation(readline, player)
                start = time.perf_counter()
                reply = render_draft_pick(agent.draft_pick(dobs, start + budget_ms / 1000.0))
            else:
                obs = read_battle_observation(readline, player)
                start = time.perf_counter()
                reply = render_orders(agent.act(obs, start + budget_ms / 1000.0))
        except EOFError:
            return
        stdout.write(reply + "\n")
        stdout.flush()
        turn += 1
