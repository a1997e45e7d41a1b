"""Round-robin win-rate table for the built-in agents.

Writes the side-alternating matrix and the first-player-only matrix as CSV.
Timed OEP games take about 20 s each in league 3 on one core; use
``--workers`` on a multi-core machine.
"""

import argparse
import sys
import time

from totalbotwar.tournament import round_robin


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--agents", default="heuristic,oep,ss,af,rnd")
    ap.add_argument("--league", type=int, default=3)
    ap.add_argument("--games", type=int, default=20, help="games per pair")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None, help="CSV path for the side-alternating matrix")
    args = ap.parse_args()

    agents = args.agents.split(",")
    t0 = time.perf_counter()

    def progress(k, total, pg, res):
        print(f"[{k}/{total}] {agents[pg.i]} vs {agents[pg.j]} game {pg.game}: "
              f"winner {res.winner} after {res.turns_played} turns", file=sys.stderr, flush=True)

    table = round_robin(agents, args.league, args.games, args.seed, workers=args.workers, progress=progress)
    print(f"# league {args.league}, {args.games} games per pair, sides alternating")
    print(table.to_csv(), end="")
    print("# as first player only")
    print(table.to_csv(table.first_player), end="")
    for (i, j), d in sorted(table.draws.items()):
        print(f"# draws {agents[i]} vs {agents[j]}: {d}/{table.games[(i, j)]}")
    print(f"# {time.perf_counter() - t0:.0f} s")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(table.to_csv())


if __name__ == "__main__":
    main()
