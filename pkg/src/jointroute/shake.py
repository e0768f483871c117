"""Alternating assignment/sequence re-optimisation ("shaking") on the closed tour."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from jointroute.lap import pinned_mask, solve_lap
from jointroute.model import Instance, Solution, tour_cost


@dataclass(frozen=True)
class ShakeParams:
    max_iters: int = 50
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not (np.isfinite(self.tolerance) and self.tolerance > 0):
            raise ValueError("tolerance must be finite and > 0")


def reassign_for_sequence(inst: Instance, seq) -> np.ndarray:
    """Best placeholder for every gap between consecutive pickups.

    Gap k sits between item seq[k] and seq[k+1] (cyclically); the LAP picks a
    distinct placeholder per gap, with gap 0 pinned to the start placeholder.
    """
    seq = np.asarray(seq)
    D = inst.distances
    c1 = D[seq] + D[np.roll(seq, -1)]
    cols, _ = solve_lap(c1, pinned_mask(len(seq)))
    asg = np.empty(len(seq), dtype=np.int64)
    asg[seq] = cols
    return asg


def resequence_for_assignment(inst: Instance, seq, asg) -> tuple[np.ndarray, np.ndarray]:
    """Best item for every slot between consecutive placeholders.

    The placeholder order induced by (seq, asg) is held fixed. Slot j lies
    between placeholder ps[j-1] and ps[j]; whichever item lands in slot j is
    delivered to ps[j], so the returned assignment is re-derived from the
    new order. Returns ``(new_seq, new_asg)``.
    """
    seq = np.asarray(seq)
    asg = np.asarray(asg)
    ps = asg[seq]
    D = inst.distances
    c2 = D[:, np.roll(ps, 1)] + D[:, ps]
    slot, _ = solve_lap(c2, pinned_mask(len(seq)))
    new_seq = np.empty(len(seq), dtype=np.int64)
    new_seq[slot] = np.arange(len(seq))
    new_asg = ps[slot]
    return new_seq, new_asg


# (iteration, "assign" | "sequence", cost before, raw LAP candidate cost)
StepCallback = Callable[[int, str, float, float], None]


def shake(inst: Instance, sol: Solution, params: ShakeParams = ShakeParams(),
          on_step: Optional[StepCallback] = None) -> Solution:
    """Alternate the two LAP half-steps until the cost stalls or max_iters is hit.

    A half-step result is only kept when it does not increase the tour cost,
    so the returned cost is never above ``sol.cost``. ``on_step`` receives
    ``(iteration, phase, cost_before, candidate_cost)`` where the candidate is
    the raw LAP result, before the keep-if-not-worse check.
    """
    if inst.n == 0:
        return sol
    cur = sol
    prev = sol.cost
    for t in range(1, params.max_iters + 1):
        asg = reassign_for_sequence(inst, cur.sequence)
        cost = tour_cost(inst, cur.sequence, asg)
        if on_step:
            on_step(t, "assign", cur.cost, cost)
        if cost <= cur.cost:
            cur = Solution(cur.sequence, asg, cost)

        seq, asg = resequence_for_assignment(inst, cur.sequence, cur.assignment)
        cost = tour_cost(inst, seq, asg)
        if on_step:
            on_step(t, "sequence", cur.cost, cost)
        if cost <= cur.cost:
            cur = Solution(seq, asg, cost)

        if abs(cur.cost - prev) < params.tolerance:
            break
        prev = cur.cost
    return cur
