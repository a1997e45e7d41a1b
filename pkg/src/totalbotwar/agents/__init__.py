"""Baseline agents and a name-based factory."""

from __future__ import annotations

from .base import Agent, MatchInfo, move_order
from .heuristic import Heuristic, lambda_score
from .oep import OEPConfig, OnlineEvolution
from .simple import AlwaysForward, RandomAgent, StayStatic

AGENTS = {
    "ss": StayStatic,
    "af": AlwaysForward,
    "rnd": RandomAgent,
    "heuristic": Heuristic,
    "oep": OnlineEvolution,
}


def parse_agent_spec(spec: str) -> tuple[str, dict]:
    """Split ``"oep:generations=4,population=16"`` into a name and overrides."""
    name, _, rest = spec.partition(":")
    params: dict = {}
    for item in filter(None, (p.strip() for p in rest.split(","))):
        key, _, raw = item.partition("=")
        for conv in (int, float):
            try:
                params[key] = conv(raw)
                break
            except ValueError:
                continue
        else:
            params[key] = None if raw.lower() == "none" else raw
    return name.strip().lower(), params


def make_agent(spec: str) -> Agent:
    name, params = parse_agent_spec(spec)
    if name in ("lambda", "h"):
        name = "heuristic"
    try:
        cls = AGENTS[name]
    except KeyError:
        raise ValueError(f"unknown agent {name!r}; choose from {', '.join(AGENTS)}") from None
    return cls(**params)


__all__ = [
    "AGENTS", "Agent", "AlwaysForward", "Heuristic", "MatchInfo", "OEPConfig",
    "OnlineEvolution", "RandomAgent", "StayStatic", "lambda_score", "make_agent",
    "move_order", "parse_agent_spec",
]
