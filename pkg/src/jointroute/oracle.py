"""Exhaustive search over every (pickup order, assignment) pair for tiny instances."""

from __future__ import annotations

from itertools import permutations

import numpy as np

from jointroute.model import GuardError, Instance, Solution

MAX_ORACLE_N = 7


def brute_force(inst: Instance) -> Solution:
    """Global optimum by enumeration; ties go to the lexicographically first (π, a).

    For each pickup order the cost of every assignment is evaluated in one
    vectorised sweep: the placeholder sitting in gap k contributes
    d(p_{π_k}, s) + d(s, p_{π_{k+1}}).
    """
    n = inst.n
    if n > MAX_ORACLE_N:
        raise GuardError(f"brute force refused for n={n} > {MAX_ORACLE_N}")
    if n == 0:
        return Solution.build(inst, [0], [0])
    D = inst.distances
    perms = np.array(list(permutations(range(1, n + 1))), dtype=np.int64)
    # every assignment as a full map a[0..n] with a[0] = 0, in lexicographic order
    asgs = np.hstack([np.zeros((len(perms), 1), dtype=np.int64), perms])
    rows = np.arange(n + 1)

    best_cost = np.inf
    best = None
    for tail in perms:
        seq = np.concatenate([[0], tail])
        gap = D[seq] + D[np.roll(seq, -1)]  # gap[k, j]: placeholder j between π_k and π_{k+1}
        # cost of assignment a: sum_k gap[k, a[seq[k]]]
        costs = gap[rows, asgs[:, seq]].sum(axis=1)
        k = int(np.argmin(costs))
        if costs[k] < best_cost:
            best_cost = float(costs[k])
            best = (seq, asgs[k])
    return Solution.build(inst, *best)
