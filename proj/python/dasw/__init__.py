"""Deceptive almost-sure winning strategies for turn-based reachability games.

Thin wrapper over the compiled ``_core`` module: structured results come
back as plain dicts.
"""

import json

from . import _core
from ._core import Game, GameError, Hypergame, ParseError, Solution, build_hypergame, solve

__all__ = [
    "Game",
    "GameError",
    "Hypergame",
    "ParseError",
    "Solution",
    "asw",
    "build_hypergame",
    "dasw",
    "gridworld",
    "load_game",
    "simulate",
    "solve",
]


def load_game(path):
    return Game.load(str(path))


def asw(game, restrict_to=None):
    """Almost-sure winning region of P1: {win1, win2, levels, strategy}."""
    return json.loads(_core.asw_json(game, restrict_to))


def dasw(game, x0=None, inference=None, product=False, quantifier="full", fixpoint="progressive"):
    """Builds the hypergame and solves it; returns (hypergame, solution, result dict)."""
    if isinstance(inference, dict):
        inference = json.dumps(inference)
    h = build_hypergame(game, x0=x0, inference=inference, product=product)
    s = solve(h, quantifier=quantifier, fixpoint=fixpoint)
    return h, s, json.loads(s.to_json())


def simulate(solution, episodes=1000, cap=None, seed=0, policy="uniform", starts=None):
    return json.loads(_core.simulate_json(solution, episodes, cap, seed, policy, starts))


def gridworld(config=None):
    """Returns (game, inference dict, config dict) for a gridworld layout."""
    game, inference, cfg = _core.gridworld(json.dumps(config) if config is not None else None)
    return game, json.loads(inference), json.loads(cfg)
