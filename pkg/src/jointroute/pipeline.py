"""End-to-end solve: assignment, cycle merge, shaking, windowed annealing, final shaking."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from jointroute.anneal import SaParams, anneal_pass
from jointroute.assign import backward_assign, forward_assign_with_cost, lower_bound
from jointroute.cycles import detect_cycles, merge_all
from jointroute.model import Instance, Solution, dist
from jointroute.shake import ShakeParams, StepCallback, shake


@dataclass
class SolveReport:
    name: str
    lower_bound: float
    merge_cost: float
    shaken_cost: float
    final_cost: float
    solution: Solution
    seed: int
    n_cycles: int = 1
    stage_times: dict = field(default_factory=dict)  # seconds, keys: merge, shake, sa

    def numerics(self) -> dict:
        """Everything except wall-clock timings; stable for a fixed seed."""
        return {
            "name": self.name,
            "lower_bound": self.lower_bound,
            "merge_cost": self.merge_cost,
            "shaken_cost": self.shaken_cost,
            "final_cost": self.final_cost,
            "n_cycles": self.n_cycles,
            "seed": self.seed,
            "sequence": self.solution.sequence.tolist(),
            "assignment": self.solution.assignment.tolist(),
        }


def _trivial(inst: Instance, seed: int) -> SolveReport:
    # n = 0: depot item to depot placeholder and back
    sol = Solution([0], [0], 2 * dist(inst.items[0], inst.placeholders[0]))
    c = sol.cost
    return SolveReport(inst.name, c, c, c, c, sol, seed,
                       stage_times={"merge": 0.0, "shake": 0.0, "sa": 0.0})


def solve(inst: Instance, shake_params: ShakeParams = ShakeParams(),
          sa_params: SaParams = SaParams(), on_shake_step: Optional[StepCallback] = None,
          anneal: bool = True) -> SolveReport:
    if inst.n == 0:
        return _trivial(inst, sa_params.rng_seed)
    clock = time.perf_counter

    t = clock()
    fwd, _ = forward_assign_with_cost(inst)
    bwd, _ = backward_assign(inst, fwd)
    cycles = detect_cycles(fwd, bwd)
    merged = merge_all(inst, cycles).solution
    dt_merge = clock() - t

    t = clock()
    shaken = shake(inst, merged, shake_params, on_shake_step)
    dt_shake = clock() - t

    t = clock()
    final = anneal_pass(inst, shaken, sa_params, shake_params) if anneal else shaken
    dt_sa = clock() - t

    t = clock()
    final = shake(inst, final, shake_params, on_shake_step)
    dt_shake += clock() - t

    return SolveReport(
        name=inst.name,
        lower_bound=lower_bound(inst),
        merge_cost=merged.cost,
        shaken_cost=shaken.cost,
        final_cost=final.cost,
        solution=final,
        seed=sa_params.rng_seed,
        n_cycles=len(cycles),
        stage_times={"merge": round(dt_merge, 3), "shake": round(dt_shake, 3),
                     "sa": round(dt_sa, 3)},
    )
