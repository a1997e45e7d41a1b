"""Online evolutionary planning over unit-to-target assignments.

A genome holds one enemy id per own unit. Fitness rolls the forward model a
few ticks ahead with every unit walking at its assigned target and enemies
extrapolated along their observed heading, then scores the reached state
with the heuristic factors plus a bonus for focused targets.
"""

from __future__ import annotations

import math
import random
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional

from ..core import ATTRIBUTES, Direction, DraftPick, GameState, LeagueConfig, Phase, Unit, UnitType, clamp_center
from ..draft import DraftObservation
from ..engine import Observation, UnitView, advance, observe, refresh
from .base import Agent, engaged_ids, move_order
from .heuristic import FACING_VECTORS, GENERAL_ID, counter_draft_pick, heuristic_assignment, lambda_score


@dataclass(frozen=True)
class OEPConfig:
    population: int = 32
    elite_fraction: float = 0.5
    mutation_rate: float = 0.1
    horizon: int = 10
    focus_bonus: float = 0.05
    safety_margin_ms: float = 20.0
    # fixed generation count; None means evolve until the deadline
    generations: Optional[int] = None


Genome = tuple[int, ...]


def focus_count(genes: Genome) -> int:
    """Number of genes whose target is shared with at least one other gene."""
    c = Counter(genes)
    return sum(1 for g in genes if c[g] > 1)


def uniform_crossover(a: Genome, b: Genome, rng: random.Random) -> Genome:
    return tuple(x if rng.random() < 0.5 else y for x, y in zip(a, b))


def mutate(genes: Genome, targets: list[int], rate: float, rng: random.Random) -> Genome:
    return tuple(rng.choice(targets) if rng.random() < rate else g for g in genes)


def state_from_observation(obs: Observation, config: LeagueConfig, horizon: int) -> GameState:
    """Best-guess full state: enemy destinations are extrapolated."""
    me = obs.player
    s = GameState(config=config, turn=0, phase=Phase.BATTLE)
    for v in obs.own_units:
        target = (float(v.target_x), float(v.target_y)) if v.moving else None
        s.armies[me].append(_unit(v, me, config, target))
    for v in obs.enemy_units:
        target = None
        if v.moving:
            fx, fy = FACING_VECTORS[Direction(v.direction)]
            reach = ATTRIBUTES[UnitType(v.type)].moving_speed * (horizon + 1)
            target = clamp_center((v.x + fx * reach, v.y + fy * reach), config.unit_size)
        s.armies[1 - me].append(_unit(v, 1 - me, config, target))
    refresh(s)
    return s


def _unit(v: UnitView, owner: int, config: LeagueConfig, target) -> Unit:
    return Unit(id=v.id, owner=owner, utype=UnitType(v.type), pos=(float(v.x), float(v.y)),
                facing=Direction(v.direction), life=v.life, moving=target is not None,
                target=target, is_general=config.has_general and v.id == GENERAL_ID)


class OnlineEvolution(Agent):
    name = "oep"

    def __init__(self, config: OEPConfig | None = None, **overrides) -> None:
        super().__init__()
        cfg = config or OEPConfig()
        if overrides:
            cfg = OEPConfig(**{**cfg.__dict__, **overrides})
        self.params = cfg
        self.rng = random.Random(0)
        self.last_generations = 0
        self.last_evaluations = 0

    def reset(self, info, seed: int = 0) -> None:
        super().reset(info, seed)
        self.rng = random.Random(seed)

    def draft_pick(self, obs: DraftObservation, deadline: float) -> DraftPick:
        return counter_draft_pick(obs, self.config)

    # -- fitness -------------------------------------------------------------

    def fitness(self, genes: Genome, base: GameState) -> float:
        me = self.player
        s = base.copy()
        own_ids = [u.id for u in sorted(s.armies[me], key=lambda u: u.id)]
        assign = dict(zip(own_ids, genes))
        for _ in range(self.params.horizon):
            if s.phase is not Phase.BATTLE:
                break
            enemies = {e.id: e for e in s.armies[1 - me]}
            for u in s.armies[me]:
                tgt = enemies.get(assign[u.id])
                if u.engaged_with is None and tgt is not None:
                    u.target = tgt.pos
                    u.moving = True
            advance(s, (), ())
        obs = observe(s, me)
        enemies = {e.id: e for e in obs.enemy_units}
        total = 0.0
        for u in obs.own_units:
            tgt = enemies.get(assign[u.id])
            # an assignment whose target fell during the rollout is as good as it gets
            total += 1.0 if tgt is None else lambda_score(u, tgt, obs, self.config)
        score = total / len(genes) + self.params.focus_bonus * focus_count(genes)
        return score if math.isfinite(score) else -1.0

    # -- search --------------------------------------------------------------

    def evolve(self, obs: Observation, deadline: float,
               fitness: Callable[[Genome], float] | None = None) -> Genome:
        """Best assignment found before the deadline (or after the fixed generations)."""
        p = self.params
        targets = [e.id for e in obs.enemy_units]
        seed_genome = tuple(heuristic_assignment(obs, self.config))
        n = len(seed_genome)
        if fitness is None:
            base = state_from_observation(obs, self.config, p.horizon)
            fitness = lambda g: self.fitness(g, base)  # noqa: E731

        stop = deadline - p.safety_margin_ms / 1000.0
        timed = p.generations is None

        def out_of_time() -> bool:
            return timed and time.perf_counter() >= stop

        self.last_generations = 0
        self.last_evaluations = 0
        if out_of_time() or n == 0:
            return seed_genome

        population = [seed_genome] + [
            tuple(self.rng.choice(targets) for _ in range(n)) for _ in range(p.population - 1)
        ]
        cache: dict[Genome, float] = {}
        best, best_fit = seed_genome, None
        n_elite = max(2, int(p.population * p.elite_fraction))
        gen = 0
        while True:
            # a converged population is fully cached, so check the clock here too
            if out_of_time():
                return best
            scored = []
            for g in population:
                if g not in cache:
                    if out_of_time():
                        return best
                    cache[g] = fitness(g)
                    self.last_evaluations += 1
                f = cache[g]
                scored.append((f, g))
                if best_fit is None or f > best_fit:
                    best, best_fit = g, f
            gen += 1
            self.last_generations = gen
            if p.generations is not None and gen >= p.generations:
                return best
            # stable sort keeps earlier individuals first on equal fitness
            ranked = [g for _, g in sorted(scored, key=lambda fg: -fg[0])]
            elite = ranked[:n_elite]
            children = []
            while len(elite) + len(children) < p.population:
                a, b = self.rng.sample(range(len(elite)), 2)
                child = uniform_crossover(elite[a], elite[b], self.rng)
                children.append(mutate(child, targets, p.mutation_rate, self.rng))
            population = elite + children

    def act(self, obs: Observation, deadline: float):
        if not obs.enemy_units or not obs.own_units:
            return []
        return self.genome_orders(obs, self.evolve(obs, deadline))

    def genome_orders(self, obs: Observation, genes: Genome):
        """Gene i sends the i-th own unit (id order) at enemy ``genes[i]``."""
        enemies = {e.id: e for e in obs.enemy_units}
        busy = engaged_ids(obs, self.config.unit_size)
        return [move_order(self.player, u, enemies[g].pos)
                for u, g in zip(obs.own_units, genes) if u.id not in busy]
