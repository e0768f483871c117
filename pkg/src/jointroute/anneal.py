"""Sliding-window simulated annealing with local shaking.

Each window is a contiguous run of the pickup order together with the
placeholders those items are delivered to. Candidates are produced by
permuting the window's items and re-optimising the window with an open-path
variant of shaking, anchored to the tour just before and after the window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from jointroute.lap import pinned_mask, solve_lap
from jointroute.model import Instance, Solution
from jointroute.shake import ShakeParams

COOLING_MODES = ("per_sample", "per_lap")


@dataclass(frozen=True)
class SaParams:
    window: int = 12
    step: int = 6
    t0: Optional[float] = None  # None: mean leg length of the incoming tour
    t_min: Optional[float] = None  # None: t0 / 1000
    alpha: float = 0.95
    samples: int = 20
    rng_seed: int = 0
    # "per_sample" cools after every proposal; "per_lap" once per pass over the samples
    cooling: str = "per_sample"

    def __post_init__(self):
        if self.window < 2 or not 1 <= self.step < self.window:
            raise ValueError("need window >= 2 and 1 <= step < window")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if self.samples < 0:
            raise ValueError("samples must be >= 0")
        if self.t0 is not None and self.t0 < 0:
            raise ValueError("t0 must be >= 0")
        if self.t_min is not None and self.t_min < 0:
            raise ValueError("t_min must be >= 0")
        if self.cooling not in COOLING_MODES:
            raise ValueError(f"cooling must be one of {COOLING_MODES}")
        if self.rng_seed < 0:
            raise ValueError("rng_seed must be unsigned")

    def resolved(self, sol: Solution, n: int) -> "SaParams":
        t0 = self.t0 if self.t0 is not None else sol.cost / (2 * (n + 1))
        t_min = self.t_min if self.t_min is not None else t0 / 1000.0
        return replace(self, t0=t0, t_min=t_min)


@dataclass(frozen=True, eq=False)
class WindowProblem:
    items: np.ndarray  # global item ids in visiting order
    placeholders: np.ndarray  # placeholders[k] receives items[k]
    entry: np.ndarray  # point visited just before items[0]
    exit: np.ndarray  # point visited just after placeholders[-1]
    pinned: bool = False  # items[0] is the depot item and must stay first
    start: int = 0  # position of items[0] in the global order


def make_window(inst: Instance, sol: Solution, start: int, size: int) -> WindowProblem:
    n = inst.n
    end = min(start + size - 1, n)
    seq, asg = sol.sequence, sol.assignment
    items = seq[start:end + 1].copy()
    places = asg[items]
    if start == 0 and end == n:
        # whole tour: the closing leg returns to the depot item
        entry = exit_ = inst.items[seq[0]]
    else:
        entry = inst.placeholders[asg[seq[start - 1]]]
        exit_ = inst.items[seq[(end + 1) % (n + 1)]]
    return WindowProblem(items, places, entry, exit_, pinned=(start == 0), start=start)


def window_cost(inst: Instance, w: WindowProblem) -> float:
    """Open-path length entry -> p -> s -> p -> ... -> s -> exit."""
    if len(w.items) == 0:
        raise ValueError("empty window")
    P = inst.items[w.items]
    S = inst.placeholders[w.placeholders]
    deliver = np.hypot(*(P - S).T).sum()
    hops = np.hypot(*(S[:-1] - P[1:]).T).sum()
    return float(np.hypot(*(w.entry - P[0])) + deliver + hops + np.hypot(*(S[-1] - w.exit)))


def perturb(sub_seq, rng: np.random.Generator) -> np.ndarray:
    """Random swap, segment reversal or relocation; always differs for length >= 2."""
    out = np.array(sub_seq, copy=True)
    size = len(out)
    if size < 2:
        return out
    move = rng.integers(3)
    i, j = sorted(rng.choice(size, 2, replace=False))
    if move == 0:
        out[i], out[j] = out[j], out[i]
    elif move == 1:
        out[i:j + 1] = out[i:j + 1][::-1]
    else:
        src, dst = (i, j) if rng.random() < 0.5 else (j, i)
        val = out[src]
        out = np.insert(np.delete(out, src), dst, val)
    return out


class _LocalProblem:
    """Window state in local indices: order[k] is an item, plc[k] its placeholder."""

    def __init__(self, inst: Instance, w: WindowProblem):
        self.w = w
        self.size = len(w.items)
        self.item_ids = np.asarray(w.items)
        self.place_ids = np.asarray(w.placeholders)
        P = inst.items[self.item_ids]
        S = inst.placeholders[self.place_ids]
        diff = P[:, None, :] - S[None, :, :]
        self.D = np.hypot(diff[..., 0], diff[..., 1])
        self.d_entry = np.hypot(*(P - w.entry).T)
        self.d_exit = np.hypot(*(S - w.exit).T)
        self.mask = pinned_mask(self.size) if w.pinned else None

    def cost(self, order, plc) -> float:
        D = self.D
        return float(self.d_entry[order[0]] + D[order, plc].sum()
                     + D[order[1:], plc[:-1]].sum() + self.d_exit[plc[-1]])

    def reassign(self, order) -> np.ndarray:
        c1 = self.D[order]
        c1[:-1] += self.D[order[1:]]
        c1[-1] += self.d_exit
        cols, _ = solve_lap(c1, self.mask)
        return cols

    def reorder(self, plc) -> tuple[np.ndarray, np.ndarray]:
        c2 = self.D[:, plc].copy()
        c2[:, 0] += self.d_entry
        c2[:, 1:] += self.D[:, plc[:-1]]
        slot, _ = solve_lap(c2, self.mask)
        order = np.empty(self.size, dtype=np.int64)
        order[slot] = np.arange(self.size)
        return order, plc

    def shake(self, order, plc, params: ShakeParams):
        cur = self.cost(order, plc)
        prev = cur
        for _ in range(params.max_iters):
            new_plc = self.reassign(order)
            c = self.cost(order, new_plc)
            if c <= cur:
                plc, cur = new_plc, c
            new_order, _ = self.reorder(plc)
            c = self.cost(new_order, plc)
            if c <= cur:
                order, cur = new_order, c
            if abs(cur - prev) < params.tolerance:
                break
            prev = cur
        return order, plc, cur


def anneal_window(inst: Instance, w: WindowProblem, p: SaParams, rng: np.random.Generator,
                  shake_params: ShakeParams = ShakeParams()) -> tuple[np.ndarray, np.ndarray]:
    """Anneal one window; returns the best (items, placeholders) seen, never worse than input."""
    if p.t0 is None or p.t_min is None:
        raise ValueError("anneal_window needs explicit t0 and t_min (see SaParams.resolved)")
    if p.samples == 0 or p.t0 <= p.t_min or len(w.items) < 2:
        return np.asarray(w.items).copy(), np.asarray(w.placeholders).copy()

    lp = _LocalProblem(inst, w)
    ident = np.arange(lp.size)
    best_order, best_plc = ident, ident
    best_cost = lp.cost(ident, ident)
    head = 1 if w.pinned else 0

    temp = p.t0
    while temp > p.t_min:
        cur_order, cur_plc = best_order, best_plc
        for _ in range(p.samples):
            cur_cost = lp.cost(cur_order, cur_plc)
            bind = np.empty(lp.size, dtype=np.int64)
            bind[cur_order] = cur_plc
            cand = cur_order.copy()
            cand[head:] = perturb(cur_order[head:], rng)
            new_order, new_plc, new_cost = lp.shake(cand, bind[cand], shake_params)
            delta = new_cost - cur_cost
            if delta < 0 or rng.random() < math.exp(-delta / temp):
                cur_order, cur_plc = new_order, new_plc
                if new_cost < best_cost:
                    best_order, best_plc, best_cost = new_order, new_plc, new_cost
            if p.cooling == "per_sample":
                temp *= p.alpha
        if p.cooling == "per_lap":
            temp *= p.alpha
    return lp.item_ids[best_order], lp.place_ids[best_plc]


def window_starts(n: int, window: int, step: int) -> range:
    return range(0, max(n - window + step, 0) + 1, step)


def anneal_pass(inst: Instance, sol: Solution, p: SaParams,
                shake_params: ShakeParams = ShakeParams()) -> Solution:
    """Slide the window over the tour, splicing each window's best state back in."""
    n = inst.n
    if n < 1 or sol.cost == 0.0:
        return sol
    p = p.resolved(sol, n)
    seq = sol.sequence.copy()
    asg = sol.assignment.copy()
    cur = sol
    for widx, start in enumerate(window_starts(n, p.window, p.step)):
        w = make_window(inst, cur, start, p.window)
        rng = np.random.default_rng([p.rng_seed, widx])
        items, places = anneal_window(inst, w, p, rng, shake_params)
        seq[start:start + len(items)] = items
        asg[items] = places
        cand = Solution.build(inst, seq, asg)
        if cand.cost <= cur.cost:
            cur = cand
        else:
            seq[:] = cur.sequence
            asg[:] = cur.assignment
    return cur
