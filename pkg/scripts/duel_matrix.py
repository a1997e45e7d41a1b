"""Winner of every 1v1 frontal duel, per league.

Rows are player 0's unit type, columns player 1's. Each cell shows the
winner's unit type and the turn the duel ended, e.g. ``Sw@12``.
"""

import argparse

from totalbotwar.core import DRAW, UnitType
from totalbotwar.scenarios import frontal_duel

SHORT = {UnitType.SWORDSMEN: "Sw", UnitType.SPEARMEN: "Sp", UnitType.KNIGHTS: "Kn", UnitType.ARCHERS: "Ar"}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--leagues", default="1,2,3")
    args = ap.parse_args()
    types = list(UnitType)
    for league in (int(x) for x in args.leagues.split(",")):
        print(f"league {league}")
        print("    " + "".join(f"{SHORT[t]:>8}" for t in types))
        for a in types:
            cells = []
            for b in types:
                if a == b:
                    cells.append(f"{'-':>8}")
                    continue
                winner, s = frontal_duel(a, b, league)
                tag = {0: SHORT[a], 1: SHORT[b], DRAW: "draw"}.get(winner, "none")
                cells.append(f"{tag + '@' + str(s.turn):>8}")
            print(f"{SHORT[a]:>4}" + "".join(cells))
        print()


if __name__ == "__main__":
    main()
