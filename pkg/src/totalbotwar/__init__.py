"""TotalBotWar: battle simulator, baseline agents, bot referee and tooling."""

from .core import DRAW, GameState, LeagueConfig, Order, DraftPick, UnitType, Direction
from .draft import apply_draft_turn, new_game
from .engine import observe, step
from .tournament import MatchResult, play_match, resimulate, round_robin

__all__ = [
    "DRAW", "Direction", "DraftPick", "GameState", "LeagueConfig", "MatchResult", "Order",
    "UnitType", "apply_draft_turn", "new_game", "observe", "play_match", "resimulate",
    "round_robin", "step",
]
