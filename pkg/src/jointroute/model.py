"""Problem instance, solution representation and the closed-tour cost.

Index 0 is reserved for the depot: item 0 sits at the end position and
placeholder 0 at the start position, with the fixed pair a(0) = 0 and the
pickup order always starting at item 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

COST_RTOL = 1e-9


class ParseError(ValueError):
    """Malformed input file or inconsistent dimensions."""


class InfeasibleError(RuntimeError):
    """No assignment satisfies the masked constraints."""


class GuardError(RuntimeError):
    """Request refused because it would exceed a hard size limit."""


def _as_points(pts, what: str) -> np.ndarray:
    arr = np.array(pts, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ParseError(f"{what}: expected a list of (x, y) pairs, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"{what}: coordinates must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Instance:
    """Item and placeholder positions; row 0 of each holds the depot pair."""

    items: np.ndarray
    placeholders: np.ndarray
    name: str = "instance"

    def __post_init__(self):
        items = _as_points(self.items, "items")
        placeholders = _as_points(self.placeholders, "placeholders")
        if len(items) != len(placeholders):
            raise ParseError(
                f"items ({len(items)}) and placeholders ({len(placeholders)}) differ in length"
            )
        if len(items) < 1:
            raise ParseError("instance needs at least the depot row")
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "placeholders", placeholders)

    @classmethod
    def from_depot(cls, items, placeholders, depot_start, depot_end=None, name="instance"):
        """Build from n real items/placeholders plus the depot positions."""
        if depot_end is None:
            depot_end = depot_start
        items = np.vstack([np.reshape(np.asarray(depot_end, float), (1, 2)),
                           np.reshape(np.asarray(items, float), (-1, 2))])
        placeholders = np.vstack([np.reshape(np.asarray(depot_start, float), (1, 2)),
                                  np.reshape(np.asarray(placeholders, float), (-1, 2))])
        return cls(items, placeholders, name)

    @property
    def n(self) -> int:
        return len(self.items) - 1

    @property
    def depot_start(self) -> np.ndarray:
        return self.placeholders[0]

    @property
    def depot_end(self) -> np.ndarray:
        return self.items[0]

    @cached_property
    def distances(self) -> np.ndarray:
        """Read-only matrix D[i, j] = d(p_i, s_j), built on first use."""
        diff = self.items[:, None, :] - self.placeholders[None, :, :]
        d = np.hypot(diff[..., 0], diff[..., 1])
        d.setflags(write=False)
        return d

    def item_to_placeholder(self) -> np.ndarray:
        return self.distances

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.name == other.name
            and np.array_equal(self.items, other.items)
            and np.array_equal(self.placeholders, other.placeholders)
        )

    def __hash__(self):
        return hash((self.name, self.items.tobytes(), self.placeholders.tobytes()))


def dist(u, v) -> float:
    return float(np.hypot(u[0] - v[0], u[1] - v[1]))


def tour_cost(inst: Instance, seq, asg) -> float:
    """Length of p_{pi_0} -> s_{a(pi_0)} -> p_{pi_1} -> ... -> s_{a(pi_n)} -> p_{pi_0}."""
    seq = np.asarray(seq)
    asg = np.asarray(asg)
    size = inst.n + 1
    if seq.shape != (size,) or asg.shape != (size,):
        raise ParseError(
            f"dimension mismatch: n+1={size}, sequence {seq.shape}, assignment {asg.shape}"
        )
    p = inst.items[seq]
    s = inst.placeholders[asg[seq]]
    deliver = p - s
    move = s - np.roll(p, -1, axis=0)
    return float(np.hypot(deliver[:, 0], deliver[:, 1]).sum()
                 + np.hypot(move[:, 0], move[:, 1]).sum())


@dataclass(frozen=True, eq=False)
class Solution:
    """Pickup order, item->placeholder map and the cached tour length."""

    sequence: np.ndarray
    assignment: np.ndarray
    cost: float

    def __post_init__(self):
        seq = np.array(self.sequence, dtype=np.int64)
        asg = np.array(self.assignment, dtype=np.int64)
        seq.setflags(write=False)
        asg.setflags(write=False)
        object.__setattr__(self, "sequence", seq)
        object.__setattr__(self, "assignment", asg)
        object.__setattr__(self, "cost", float(self.cost))

    @classmethod
    def build(cls, inst: Instance, seq, asg) -> "Solution":
        return cls(seq, asg, tour_cost(inst, seq, asg))

    def placeholder_sequence(self) -> np.ndarray:
        return self.assignment[self.sequence]

    def __eq__(self, other):
        if not isinstance(other, Solution):
            return NotImplemented
        return (
            np.array_equal(self.sequence, other.sequence)
            and np.array_equal(self.assignment, other.assignment)
            and self.cost == other.cost
        )


def _is_permutation(arr: np.ndarray, size: int) -> bool:
    if arr.shape != (size,):
        return False
    if arr.min(initial=0) < 0 or arr.max(initial=0) >= size:
        return False
    return len(np.unique(arr)) == size


def validate_solution(inst: Instance, sol: Solution) -> list[str]:
    """Return a list of human-readable violations; empty means feasible."""
    problems = []
    size = inst.n + 1
    seq = np.asarray(sol.sequence)
    asg = np.asarray(sol.assignment)
    if asg.shape != (size,):
        problems.append(f"assignment has length {asg.shape}, expected {size}")
    elif not _is_permutation(asg, size):
        problems.append("assignment not bijective")
    elif asg[0] != 0:
        problems.append("a(0) != 0")
    if seq.shape != (size,):
        problems.append(f"sequence has length {seq.shape}, expected {size}")
    elif not _is_permutation(seq, size):
        problems.append("sequence is not a permutation")
    elif seq[0] != 0:
        problems.append("π(0) ≠ 0")
    if problems:
        return problems
    actual = tour_cost(inst, seq, asg)
    if not np.isclose(sol.cost, actual, rtol=COST_RTOL, atol=1e-12):
        problems.append(f"cached cost {sol.cost!r} disagrees with tour cost {actual!r}")
    return problems
