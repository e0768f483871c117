"""Forward (item -> placeholder) and backward (placeholder -> next item) assignment."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from jointroute.lap import pinned_mask, solve_lap
from jointroute.model import InfeasibleError, Instance


@dataclass(frozen=True)
class TwoPhaseResult:
    forward: np.ndarray  # forward[i] = placeholder assigned to item i
    backward: np.ndarray  # backward[j] = item visited right after placeholder j
    forward_cost: float
    backward_cost: float


def forward_assign(inst: Instance) -> np.ndarray:
    """Hungarian item->placeholder assignment with the depot pair fixed."""
    return forward_assign_with_cost(inst)[0]


def forward_assign_with_cost(inst: Instance) -> tuple[np.ndarray, float]:
    cost = inst.item_to_placeholder()
    cols, total = solve_lap(cost, pinned_mask(inst.n + 1))
    return cols, total


def backward_assign(inst: Instance, fwd) -> tuple[np.ndarray, float]:
    """Placeholder->item links that never return a placeholder to its own item.

    Returns ``(b, cost)`` where ``b[j]`` is the item following placeholder j.
    """
    fwd = np.asarray(fwd)
    if inst.n == 0:
        raise InfeasibleError("degenerate instance: n = 0 has no backward assignment")
    cost = inst.item_to_placeholder().T
    mask = np.zeros(cost.shape, bool)
    mask[fwd, np.arange(inst.n + 1)] = True
    return solve_lap(cost, mask)


def two_phase(inst: Instance) -> TwoPhaseResult:
    fwd, fcost = forward_assign_with_cost(inst)
    bwd, bcost = backward_assign(inst, fwd)
    return TwoPhaseResult(fwd, bwd, fcost, bcost)


def lower_bound(inst: Instance) -> float:
    """Forward cost plus the *unmasked* backward assignment cost.

    Used as an empirical floor for the tour length; it is not proven.
    """
    _, fcost = forward_assign_with_cost(inst)
    _, bcost = solve_lap(inst.item_to_placeholder().T)
    return fcost + bcost
