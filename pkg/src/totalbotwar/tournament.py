"""Match orchestration, replay logs and round-robin win-rate tables."""

from __future__ import annotations

import csv
import io
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .agents import Agent, MatchInfo, make_agent
from .core import DRAW, TURN_BUDGET_MS, DraftPick, GameState, Order, Phase, UnitType
from .draft import apply_draft_turn, new_game, observe_draft
from .engine import advance, observe
from .protocol import BotForfeit, BotLaunchError, ExternalBot

REPLAY_FORMAT = "totalbotwar-replay"
REPLAY_VERSION = 1


def derive_seed(*parts: int | str) -> int:
    """Stable 32-bit seed from a tuple of ints/strings (string seeding hashes with SHA-512)."""
    return random.Random(":".join(str(p) for p in parts)).getrandbits(32)


def make_player(spec: str) -> Agent | ExternalBot:
    """``bot:<command>`` launches an external bot; anything else names a built-in agent."""
    if spec.startswith("bot:"):
        return ExternalBot(spec[4:])
    return make_agent(spec)


@dataclass
class MatchResult:
    winner: int  # 0, 1 or DRAW
    turns_played: int
    surviving: tuple[int, int]
    forfeit: bool = False
    reason: str = ""
    replay_path: Optional[str] = None
    strikes: tuple[int, int] = (0, 0)
    # in-process agents that overran the budget: (turn, player, ms)
    overruns: list[tuple[int, int, float]] = field(default_factory=list)

    def score(self, player: int) -> float:
        if self.winner == DRAW:
            return 0.5
        return 1.0 if self.winner == player else 0.0


# -- replay encoding -------------------------------------------------------------


def _unit_record(u) -> dict:
    return {
        "player": u.owner, "id": u.id, "type": int(u.utype),
        "x": u.pos[0], "y": u.pos[1], "direction": int(u.facing), "life": u.life,
        "moving": u.moving, "target": list(u.target) if u.target is not None else None,
        "engaged_with": u.engaged_with, "general": u.is_general,
    }


def units_snapshot(state: GameState) -> list[dict]:
    return [_unit_record(u) for army in state.armies for u in sorted(army, key=lambda x: x.id)]


def _orders_record(orders: Iterable[Order]) -> list[list[int]]:
    return [[o.unit_id, int(o.delta[0]), int(o.delta[1])] for o in orders]


def _pick_record(pick: Optional[DraftPick]):
    if pick is None:
        return None
    return [int(pick.utype), int(pick.pos[0]), int(pick.pos[1])]


def _winner_record(w: int):
    return "draw" if w == DRAW else w


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=True)


# -- matches -----------------------------------------------------------------------


def _safe_call(player_idx: int, fn, *args):
    """Run an agent callback; exceptions become a forfeit."""
    try:
        return fn(*args)
    except (BotForfeit, BotLaunchError):
        raise
    except Exception as exc:  # a crashing agent loses, the harness keeps going
        raise BotForfeit(player_idx, f"agent error: {type(exc).__name__}: {exc}") from exc


def play_match(p0: Agent | ExternalBot | str, p1: Agent | ExternalBot | str, league: int,
               seed: int = 0, replay: str | Path | io.TextIOBase | None = None,
               budget_ms: float = TURN_BUDGET_MS) -> MatchResult:
    """Play one full match; the replay (if requested) is written as JSON lines.

    Agent ``p`` is reset with ``derive_seed(seed, p)``. Built-in agents that
    overrun the budget are logged in ``overruns`` but not penalized, so their
    matches stay reproducible; external bots get strikes and may forfeit.
    """
    players = [make_player(p) if isinstance(p, str) else p for p in (p0, p1)]
    state = new_game(league)
    cfg = state.config
    out: Optional[io.TextIOBase] = None
    own_file = False
    if isinstance(replay, (str, Path)):
        out = open(replay, "w", encoding="utf-8", newline="\n")
        own_file = True
    elif replay is not None:
        out = replay

    def emit(rec: dict) -> None:
        if out is not None:
            out.write(_dump(rec) + "\n")

    overruns: list[tuple[int, int, float]] = []
    forfeit: Optional[BotForfeit] = None
    emit({"format": REPLAY_FORMAT, "version": REPLAY_VERSION, "league": league, "seed": seed,
          "units": units_snapshot(state)})
    try:
        for i, agent in enumerate(players):
            _safe_call(i, agent.reset, MatchInfo(i, cfg), derive_seed(seed, i))

        def timed(i, fn, obs):
            start = time.perf_counter()
            res = _safe_call(i, fn, obs, start + budget_ms / 1000.0)
            ms = (time.perf_counter() - start) * 1000.0
            if ms > budget_ms and not isinstance(players[i], ExternalBot):
                overruns.append((state.turn, i, round(ms, 1)))
            return res

        while state.phase is Phase.DRAFT:
            picks = [timed(i, a.draft_pick, observe_draft(state, i)) for i, a in enumerate(players)]
            turn = state.turn
            state = apply_draft_turn(state, *picks)
            emit({"turn": turn, "phase": "draft", "orders_p0": _pick_record(picks[0]),
                  "orders_p1": _pick_record(picks[1]), "units": units_snapshot(state),
                  "events": [], "warnings": state.warnings})

        while state.phase is Phase.BATTLE:
            orders = [list(timed(i, a.act, observe(state, i))) for i, a in enumerate(players)]
            turn = state.turn
            advance(state, orders[0], orders[1])
            emit({"turn": turn, "phase": "battle", "orders_p0": _orders_record(orders[0]),
                  "orders_p1": _orders_record(orders[1]), "units": units_snapshot(state),
                  "events": state.events, "warnings": state.warnings})
    except BotForfeit as exc:
        forfeit = exc
    except BotLaunchError:
        if own_file:
            out.close()
        raise
    finally:
        for a in players:
            try:
                a.close()
            except Exception:
                pass

    if forfeit is not None:
        winner = 1 - forfeit.player
        state.result = winner
        state.phase = Phase.FINISHED
    strikes = tuple(getattr(a, "strikes", 0) for a in players)
    result = MatchResult(
        winner=state.result, turns_played=state.turn,
        surviving=(state.alive(0), state.alive(1)), forfeit=forfeit is not None,
        reason=forfeit.reason if forfeit else "", strikes=strikes, overruns=overruns,
        replay_path=str(replay) if isinstance(replay, (str, Path)) else None,
    )
    emit({"turn": state.turn, "phase": "end", "orders_p0": [], "orders_p1": [],
          "units": units_snapshot(state), "events": [],
          "result": {"winner": _winner_record(result.winner), "forfeit": result.forfeit,
                     "reason": result.reason, "surviving": list(result.surviving)}})
    if own_file:
        out.close()
    return result


# -- replays --------------------------------------------------------------------------


def read_replay(path: str | Path) -> list[dict]:
    with open(path, encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]


def _to_pick(rec) -> Optional[DraftPick]:
    if rec is None:
        return None
    t, x, y = rec
    return DraftPick(UnitType(t), (x, y))


def resimulate(records: Sequence[dict]) -> GameState:
    """Feed a replay's order streams back through the engine.

    Raises ``ValueError`` at the first turn whose recomputed unit snapshot
    differs from the logged one. Returns the final state.
    """
    header = records[0]
    if header.get("format") != REPLAY_FORMAT:
        raise ValueError("not a replay log")
    state = new_game(header["league"])
    if units_snapshot(state) != header["units"]:
        raise ValueError("initial state mismatch")
    for rec in records[1:]:
        phase = rec["phase"]
        if phase == "draft":
            state = apply_draft_turn(state, _to_pick(rec["orders_p0"]), _to_pick(rec["orders_p1"]))
        elif phase == "battle":
            o0 = [Order(i, (dx, dy)) for i, dx, dy in rec["orders_p0"]]
            o1 = [Order(i, (dx, dy)) for i, dx, dy in rec["orders_p1"]]
            advance(state, o0, o1)
        elif phase == "end":
            res = rec["result"]
            if not res["forfeit"] and _winner_record(state.result) != res["winner"]:
                raise ValueError(f"result mismatch: {state.result} vs {res['winner']}")
        else:
            raise ValueError(f"unknown phase {phase!r}")
        if units_snapshot(state) != rec["units"]:
            raise ValueError(f"state mismatch after turn {rec['turn']} ({phase})")
    return state


def summarize_replay(records: Sequence[dict]) -> list[str]:
    """One human-readable line per logged turn."""
    lines = []
    header = records[0]
    lines.append(f"league {header['league']} seed {header['seed']}")
    for rec in records[1:]:
        alive = [sum(1 for u in rec["units"] if u["player"] == p) for p in (0, 1)]
        life = [sum(u["life"] for u in rec["units"] if u["player"] == p) for p in (0, 1)]
        kinds: dict[str, int] = {}
        for ev in rec["events"]:
            kinds[ev["kind"]] = kinds.get(ev["kind"], 0) + 1
        ev_txt = " ".join(f"{k}={v}" for k, v in sorted(kinds.items()))
        line = (f"turn {rec['turn']:3d} {rec['phase']:6s} units {alive[0]:2d}/{alive[1]:2d} "
                f"life {life[0]:5d}/{life[1]:5d} {ev_txt}").rstrip()
        if "result" in rec:
            r = rec["result"]
            line += f" -> winner {r['winner']}" + (f" (forfeit: {r['reason']})" if r["forfeit"] else "")
        lines.append(line)
    return lines


# -- tournaments ------------------------------------------------------------------


@dataclass
class PairGame:
    i: int
    j: int
    game: int
    seed: int
    i_first: bool


@dataclass
class WinRateTable:
    agents: list[str]
    # matrix[i][j]: score rate of row agent i against column agent j (draws 0.5)
    matrix: list[list[Optional[float]]]
    draws: dict[tuple[int, int], int]
    games: dict[tuple[int, int], int]
    # first_player[i][j]: score rate of i in the games it played as player 0
    first_player: list[list[Optional[float]]]

    def to_csv(self, matrix: Optional[list[list[Optional[float]]]] = None) -> str:
        m = self.matrix if matrix is None else matrix
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + self.agents)
        for name, row in zip(self.agents, m):
            w.writerow([name] + ["" if v is None else f"{v:.2f}" for v in row])
        return buf.getvalue()


def schedule(n_agents: int, games_per_pair: int, base_seed: int) -> list[PairGame]:
    out = []
    for i in range(n_agents):
        for j in range(i + 1, n_agents):
            for g in range(games_per_pair):
                out.append(PairGame(i, j, g, derive_seed(base_seed, i, j, g), g % 2 == 0))
    return out


def _run_scheduled(args) -> MatchResult:
    a0, a1, league, seed = args
    return play_match(a0, a1, league, seed)


def round_robin(agents: Sequence[str], league: int, games_per_pair: int, base_seed: int = 0,
                workers: int = 1, progress=None) -> WinRateTable:
    """All pairs play ``games_per_pair`` games with alternating sides."""
    if len(agents) < 2:
        raise ValueError("need at least two agents")
    n = len(agents)
    plan = schedule(n, games_per_pair, base_seed)
    jobs = []
    for pg in plan:
        a, b = (agents[pg.i], agents[pg.j]) if pg.i_first else (agents[pg.j], agents[pg.i])
        jobs.append((a, b, league, pg.seed))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_scheduled, jobs))
    else:
        results = []
        for k, job in enumerate(jobs):
            results.append(_run_scheduled(job))
            if progress is not None:
                progress(k + 1, len(jobs), plan[k], results[-1])
    return tabulate(agents, plan, results)


def tabulate(agents: Sequence[str], plan: Sequence[PairGame],
             results: Sequence[MatchResult]) -> WinRateTable:
    n = len(agents)
    score = [[0.0] * n for _ in range(n)]
    first_score = [[0.0] * n for _ in range(n)]
    first_games = [[0] * n for _ in range(n)]
    games: dict[tuple[int, int], int] = {}
    draws: dict[tuple[int, int], int] = {}
    for pg, res in zip(plan, results):
        i, j = pg.i, pg.j
        seat_i = 0 if pg.i_first else 1
        s_i = res.score(seat_i)
        score[i][j] += s_i
        score[j][i] += 1.0 - s_i
        first, second = (i, j) if pg.i_first else (j, i)
        first_score[first][second] += res.score(0)
        first_games[first][second] += 1
        games[(i, j)] = games.get((i, j), 0) + 1
        if res.winner == DRAW:
            draws[(i, j)] = draws.get((i, j), 0) + 1
    matrix: list[list[Optional[float]]] = [[None] * n for _ in range(n)]
    first: list[list[Optional[float]]] = [[None] * n for _ in range(n)]
    for (i, j), g in games.items():
        matrix[i][j] = score[i][j] / g
        matrix[j][i] = score[j][i] / g
    for i in range(n):
        for j in range(n):
            if first_games[i][j]:
                first[i][j] = first_score[i][j] / first_games[i][j]
    return WinRateTable(list(agents), matrix, draws, games, first)
