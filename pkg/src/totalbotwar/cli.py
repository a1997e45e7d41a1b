"""Command-line entry point: ``totalbotwar <command>``."""

from __future__ import annotations

import sys
import time

import click

from . import complexity as cx
from .agents import make_agent
from .core import DRAW
from .protocol import ExternalBot, serve
from .tournament import play_match, read_replay, resimulate, round_robin, summarize_replay


def _player(spec: str, bot: str | None):
    if bot:
        return ExternalBot(bot)
    return spec


@click.group()
def main() -> None:
    """Deterministic battle simulator, referee and experiment tools."""


@main.command()
@click.option("--p0", default="heuristic", show_default=True, help="Agent spec, e.g. oep:generations=4, or bot:<command>.")
@click.option("--p1", default="ss", show_default=True)
@click.option("--bot0", default=None, help="External bot command for player 0 (overrides --p0).")
@click.option("--bot1", default=None, help="External bot command for player 1 (overrides --p1).")
@click.option("--league", type=click.IntRange(1, 3), default=3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--replay", type=click.Path(dir_okay=False), default=None)
def match(p0, p1, bot0, bot1, league, seed, replay):
    """Play one match and print the result."""
    t0 = time.perf_counter()
    res = play_match(_player(p0, bot0), _player(p1, bot1), league, seed, replay=replay)
    winner = "draw" if res.winner == DRAW else f"player {res.winner}"
    click.echo(f"winner: {winner}  turns: {res.turns_played}  surviving: {res.surviving[0]}/{res.surviving[1]}"
               f"  strikes: {res.strikes[0]}/{res.strikes[1]}  time: {time.perf_counter() - t0:.1f}s")
    if res.forfeit:
        click.echo(f"forfeit: {res.reason}")
    if res.overruns:
        click.echo(f"budget overruns by built-in agents: {len(res.overruns)}")


@main.command()
@click.option("--agents", default="ss,af,rnd,heuristic,oep", show_default=True,
              help="Comma-separated agent specs; use ';' between specs that carry parameters.")
@click.option("--league", type=click.IntRange(1, 3), default=3, show_default=True)
@click.option("--games", type=int, default=100, show_default=True, help="Games per pair.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="CSV output path.")
@click.option("--first-player-out", type=click.Path(dir_okay=False), default=None,
              help="CSV of win-rates restricted to games played as player 0.")
def tourney(agents, league, games, seed, workers, out, first_player_out):
    """Round-robin tournament; prints the win-rate table."""
    names = [a.strip() for a in agents.split(";" if ";" in agents else ",") if a.strip()]

    def progress(k, total, pg, res):
        click.echo(f"[{k}/{total}] {names[pg.i]} vs {names[pg.j]} game {pg.game}: winner {res.winner}", err=True)

    table = round_robin(names, league, games, seed, workers=workers, progress=progress)
    text = table.to_csv()
    click.echo(text, nl=False)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if first_player_out:
        with open(first_player_out, "w", encoding="utf-8") as fh:
            fh.write(table.to_csv(table.first_player))
    for (i, j), d in sorted(table.draws.items()):
        click.echo(f"draws {names[i]} vs {names[j]}: {d}/{table.games[(i, j)]}")


@main.command("replay-dump")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--verify/--no-verify", default=False, help="Re-simulate and check every logged state.")
def replay_dump(path, verify):
    """Print per-turn summaries of a replay log."""
    records = read_replay(path)
    for line in summarize_replay(records):
        click.echo(line)
    if verify:
        resimulate(records)
        click.echo("re-simulation: ok")


@main.command()
@click.option("--table", "name", type=click.Choice(cx.TABLES), required=True)
def complexity(name):
    """Print an action/state count table."""
    click.echo(cx.format_table(name))


@main.command()
@click.option("--agent", "spec", default="heuristic", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def bot(spec, seed):
    """Run a built-in agent as a text-protocol bot on stdin/stdout."""
    serve(make_agent(spec), seed, sys.stdin, sys.stdout)


if __name__ == "__main__":
    main()
