"""Closed-form action and state counts for each league and grid size.

All counts are exact Python integers; ``sci`` renders them the way the
reference tables print them (two significant figures).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

# (label, H, W) for the full field and the two coarse grids
GRIDS = (("1920x1080", 1920, 1080), ("26x14", 26, 14), ("13x7", 13, 7))
LEAGUE_SIZES = (4, 9, 30)


@dataclass(frozen=True)
class ComplexityParams:
    H: int = 1920
    W: int = 1080
    t: int = 4
    n: int = 4
    d: int = 8
    l: int = 100
    m: int = 2

    def __post_init__(self) -> None:
        for k, v in self.__dict__.items():
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{k} must be a non-negative integer, got {v!r}")


def draft_action_count(H: int, W: int, t: int = 4) -> int:
    return H * W * t


def battle_action_count(H: int, W: int, n: int) -> int:
    return H * W * n


def army_combination_count(H: int, W: int, t: int, n: int, league: int | None = None) -> int:
    """Placements times types times units; league 1 has a single fixed army."""
    if league == 1:
        return 1
    return H * W * t * n


def state_count(H: int, W: int, d: int = 8, l: int = 100, t: int = 4, m: int = 2, n: int = 4) -> int:
    """Own units carry a destination (extra H*W factor); enemy units do not."""
    per_unit = H * W * d * l * t * m
    return (per_unit * H * W) * n * per_unit * n


def sci(value: int, digits: int = 2) -> str:
    """Scientific notation with ``digits`` significant figures, e.g. 364 -> '3.6E2'."""
    if value == 0:
        return "0"
    q = Decimal(value)
    exp = q.adjusted()
    mant = (q.scaleb(-exp)).quantize(Decimal(1).scaleb(1 - digits), rounding=ROUND_HALF_UP)
    if mant >= 10:
        mant, exp = mant / 10, exp + 1
        mant = mant.quantize(Decimal(1).scaleb(1 - digits), rounding=ROUND_HALF_UP)
    if exp < digits - 1 and value == int(mant.scaleb(exp)):
        # small exact values print as plain integers (the fixed-army count 1)
        return str(value)
    return f"{mant}E{exp}"


TABLES = ("draft", "battle", "armies", "states")


def table(name: str) -> list[tuple[str, list[int]]]:
    """Rows of (grid label, counts); league columns for all but ``draft``."""
    rows = []
    for label, H, W in GRIDS:
        if name == "draft":
            rows.append((label, [draft_action_count(H, W)]))
        elif name == "battle":
            rows.append((label, [battle_action_count(H, W, n) for n in LEAGUE_SIZES]))
        elif name == "armies":
            rows.append((label, [army_combination_count(H, W, 4, n, league=i + 1)
                                 for i, n in enumerate(LEAGUE_SIZES)]))
        elif name == "states":
            rows.append((label, [state_count(H, W, n=n) for n in LEAGUE_SIZES]))
        else:
            raise ValueError(f"unknown table {name!r}; choose from {TABLES}")
    return rows


def format_table(name: str) -> str:
    header = ["grid", "actions"] if name == "draft" else ["grid", "league 1", "league 2", "league 3"]
    lines = ["\t".join(header)]
    for label, counts in table(name):
        lines.append("\t".join([label] + [sci(c) for c in counts]))
    return "\n".join(lines)
