"""Small builders shared by the test modules."""

from totalbotwar.scenarios import battle_state as battle, frontal_duel, make_unit as unit

__all__ = ["battle", "frontal_duel", "unit"]
