"""Heuristic solver for joint item-to-placeholder assignment and pickup routing."""

from jointroute.model import (
    GuardError,
    InfeasibleError,
    Instance,
    ParseError,
    Solution,
    tour_cost,
    validate_solution,
)
from jointroute.shake import ShakeParams
from jointroute.anneal import SaParams
from jointroute.pipeline import SolveReport, solve

__all__ = [
    "GuardError",
    "InfeasibleError",
    "Instance",
    "ParseError",
    "SaParams",
    "ShakeParams",
    "Solution",
    "SolveReport",
    "solve",
    "tour_cost",
    "validate_solution",
]
