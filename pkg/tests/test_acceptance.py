"""Acceptance suite: one test per criterion, each logs a single PASS/FAIL line.

The lines are collected and printed in the pytest terminal summary under
"acceptance criteria" (run with ``-s`` to also see them inline).
"""

import itertools
import json
import math
import time
import warnings

import numpy as np
import pytest

from jointroute import InfeasibleError, SaParams, ShakeParams, solve, validate_solution
from jointroute.assign import backward_assign, forward_assign
from jointroute.bench import bench, to_csv
from jointroute.cycles import detect_cycles, merge_all
from jointroute.files import generate
from jointroute.lap import solve_lap
from jointroute.oracle import brute_force
from jointroute.shake import shake

REL = 1e-9
ORACLE_SUITE = [(3 + k % 4, 1000 + k, k) for k in range(200)]  # (n, instance seed, SA seed)


def _line(number, ok, text):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
    print(line)
    return line


@pytest.fixture(scope="module")
def oracle_suite():
    t = time.perf_counter()
    rows = []
    for n, inst_seed, sa_seed in ORACLE_SUITE:
        inst = generate(n, inst_seed)
        report = solve(inst, sa_params=SaParams(rng_seed=sa_seed))
        opt = brute_force(inst)
        rows.append((inst, report, opt))
    return rows, time.perf_counter() - t


def test_c1_oracle_gap(oracle_suite, acceptance_log):
    rows, elapsed = oracle_suite
    below = [inst.name for inst, rep, opt in rows if rep.final_cost < opt.cost * (1 - 1e-12)]
    gaps = np.array([(rep.final_cost - opt.cost) / opt.cost for _, rep, opt in rows])
    exact = float(np.mean(gaps <= REL))
    mean_gap = float(gaps.mean())
    ok = not below and mean_gap <= 0.02 and exact >= 0.60 and elapsed < 120
    acceptance_log(_line(1, ok, f"{len(rows)} instances n=3..6: mean gap {100 * mean_gap:.4f}% "
                                f"(<= 2%), exact {100 * exact:.1f}% (>= 60%), max gap "
                                f"{100 * gaps.max():.4f}%, below optimum {len(below)}, "
                                f"{elapsed:.1f}s (< 120s)"))
    assert not below, f"final cost below the exhaustive optimum on {below}"
    assert mean_gap <= 0.02
    assert exact >= 0.60
    assert elapsed < 120


def test_c2_lower_bound_sandwich(oracle_suite, acceptance_log):
    rows, _ = oracle_suite
    bad = [inst.name for inst, rep, opt in rows
           if not (rep.lower_bound <= opt.cost * (1 + REL) and opt.cost <= rep.final_cost * (1 + REL))]
    ratio = np.mean([rep.lower_bound / opt.cost for _, rep, opt in rows])
    acceptance_log(_line(2, not bad, f"LB <= optimum <= final on {len(rows) - len(bad)}/{len(rows)} "
                                     f"instances, mean LB/optimum {ratio:.3f}"))
    assert not bad, f"sandwich violated on {bad}"


def test_c3_stage_monotonicity(acceptance_log):
    violations = []
    half_steps = 0
    for k in range(50):
        n = (20, 50, 100)[k % 3]
        inst = generate(n, 2000 + k)
        steps = []
        rep = solve(inst, sa_params=SaParams(rng_seed=k),
                    on_shake_step=lambda t, ph, before, cand: steps.append((before, cand)))
        half_steps += len(steps)
        if rep.shaken_cost > rep.merge_cost * (1 + REL):
            violations.append((inst.name, "shaken > merge"))
        if rep.final_cost > rep.shaken_cost * (1 + REL):
            violations.append((inst.name, "final > shaken"))
        for before, cand in steps:
            if cand > before * (1 + REL):
                violations.append((inst.name, f"half-step {before} -> {cand}"))
    acceptance_log(_line(3, not violations, f"50 instances n in {{20,50,100}}, {half_steps} "
                                            f"instrumented half-steps, {len(violations)} violations"))
    assert not violations, violations[:5]


def test_c4_merge_bookkeeping(acceptance_log):
    problems = []
    worst = 0.0
    for k in range(50):
        n = 4 * (k + 1)  # 4 .. 200
        inst = generate(n, 3000 + k)
        fwd = forward_assign(inst)
        bwd, _ = backward_assign(inst, fwd)
        res = merge_all(inst, detect_cycles(fwd, bwd))
        issues = validate_solution(inst, res.solution)
        if issues:
            problems.append((inst.name, issues))
        predicted = res.initial_cost + math.fsum(res.deltas)
        rel = abs(res.solution.cost - predicted) / res.solution.cost
        worst = max(worst, rel)
        if rel > REL:
            problems.append((inst.name, f"bookkeeping off by {rel:.2e}"))
    acceptance_log(_line(4, not problems, f"50 instances n=4..200 feasible, worst relative "
                                          f"bookkeeping error {worst:.2e} (<= 1e-9)"))
    assert not problems, problems[:5]


def test_c5_shake_fixed_point(acceptance_log):
    bad = []
    for k in range(30):
        n = 2 + k % 5  # 2 .. 6
        inst = generate(n, 4000 + k)
        opt = brute_force(inst)
        iters = []
        out = shake(inst, opt, ShakeParams(), lambda t, ph, before, cand: iters.append(t))
        if set(iters) != {1} or abs(out.cost - opt.cost) > REL * opt.cost:
            bad.append((inst.name, sorted(set(iters)), opt.cost, out.cost))
    acceptance_log(_line(5, not bad, f"30 oracle optima n=2..6: shake stopped after one "
                                     f"iteration with unchanged cost on {30 - len(bad)}/30"))
    assert not bad, bad[:5]


@pytest.mark.slow
def test_c6_scaling_soft(acceptance_log):
    notes = []
    for n, limit in ((300, 5.0), (1000, 60.0)):
        inst = generate(n, 5000 + n)
        t = time.perf_counter()
        rep = solve(inst)
        elapsed = time.perf_counter() - t
        assert validate_solution(inst, rep.solution) == []
        notes.append(f"n={n} {elapsed:.1f}s (<= {limit:.0f}s)")
        if elapsed > limit:
            warnings.warn(f"n={n} solve took {elapsed:.1f}s, target {limit:.0f}s")
            notes[-1] += " SLOW"
    slow = any(s.endswith("SLOW") for s in notes)
    acceptance_log(_line(6, True, ", ".join(notes) + (" (soft target missed, warning only)" if slow else "")))


def test_c7_determinism(acceptance_log):
    inst = generate(60, 6000)
    params = SaParams(rng_seed=7)
    a = json.dumps(solve(inst, sa_params=params).numerics())
    b = json.dumps(solve(inst, sa_params=params).numerics())
    instances = [generate(25, 6100 + k) for k in range(3)]
    csv_a = to_csv(bench(instances, repeats=3, sa_params=params), include_times=False)
    csv_b = to_csv(bench(instances, repeats=3, sa_params=params, workers=3), include_times=False)
    ok = a == b and csv_a == csv_b
    acceptance_log(_line(7, ok, "SolveReport numerics and bench CSV byte-identical across two runs"))
    assert a == b
    assert csv_a == csv_b


def _enumerate(cost, mask):
    best = None
    dim = len(cost)
    for perm in itertools.permutations(range(dim)):
        if any(mask[r, c] for r, c in enumerate(perm)):
            continue
        total = math.fsum(cost[r, c] for r, c in enumerate(perm))
        if best is None or total < best:
            best = total
    return best


def test_c8_lap_vs_enumeration(acceptance_log):
    rng = np.random.default_rng(8000)
    checked = {False: 0, True: 0}
    skipped = 0
    mismatches = []
    while min(checked.values()) < 250:
        masked = checked[False] >= 250 or (checked[True] < 250 and rng.random() < 0.5)
        dim = int(rng.integers(1, 8))
        if rng.random() < 0.3:
            cost = rng.integers(0, 5, size=(dim, dim)).astype(float)  # many ties
        else:
            cost = rng.uniform(0, 100, size=(dim, dim))
        mask = rng.random((dim, dim)) < rng.uniform(0.1, 0.5) if masked else np.zeros((dim, dim), bool)
        expected = _enumerate(cost, mask)
        if expected is None:
            with pytest.raises(InfeasibleError):
                solve_lap(cost, mask)
            skipped += 1
            continue
        cols, total = solve_lap(cost, mask)
        if total != expected or mask[np.arange(dim), cols].any():
            mismatches.append((dim, total, expected))
        checked[masked] += 1
    acceptance_log(_line(8, not mismatches, f"{sum(checked.values())} matrices dim<=7 "
                                            f"({checked[True]} masked, {skipped} infeasible masks "
                                            f"skipped): {len(mismatches)} mismatches"))
    assert not mismatches, mismatches[:5]
