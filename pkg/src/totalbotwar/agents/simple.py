"""The three primary baselines."""

from __future__ import annotations

import random

from ..core import Order
from ..engine import Observation
from .base import Agent, engaged_ids, move_order


class StayStatic(Agent):
    name = "ss"


class AlwaysForward(Agent):
    name = "af"

    def __init__(self, step: int = 200) -> None:
        super().__init__()
        self.step = step

    def act(self, obs: Observation, deadline: float) -> list[Order]:
        busy = engaged_ids(obs, self.config.unit_size)
        return [Order(u.id, (0, self.step)) for u in obs.own_units if u.id not in busy]


class RandomAgent(Agent):
    name = "rnd"

    def __init__(self, reorder_prob: float = 0.5) -> None:
        super().__init__()
        self.reorder_prob = reorder_prob
        self.rng = random.Random(0)

    def reset(self, info, seed: int = 0) -> None:
        super().reset(info, seed)
        self.rng = random.Random(seed)

    def act(self, obs: Observation, deadline: float) -> list[Order]:
        cfg = self.config
        h = cfg.unit_size / 2
        orders = []
        for u in obs.own_units:
            # draw unconditionally so the stream does not depend on the coin flips
            coin = self.rng.random()
            dest = (self.rng.uniform(h, cfg.width - h), self.rng.uniform(h, cfg.height - h))
            if coin < self.reorder_prob:
                orders.append(move_order(self.player, u, dest))
        return orders
