"""Square linear assignment with forbidden cells.

Forbidden cells are replaced by a finite big-M before handing the matrix to
scipy's Hungarian-type solver; the result is then checked so a forbidden cell
can never be returned silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from jointroute.model import InfeasibleError


class LapConsistencyError(RuntimeError):
    """A forbidden cell was selected although a feasible matching exists."""


@dataclass(frozen=True, eq=False)
class CostMatrix:
    entries: np.ndarray
    mask: np.ndarray | None = None  # True marks a forbidden cell

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] == 0:
            raise ValueError(f"cost matrix must be square and non-empty, got {entries.shape}")
        mask = np.zeros(entries.shape, bool) if self.mask is None else np.asarray(self.mask, bool)
        if mask.shape != entries.shape:
            raise ValueError("mask shape differs from cost matrix")
        free = entries[~mask]
        if not np.all(np.isfinite(free)) or np.any(free < 0):
            raise ValueError("unmasked entries must be finite and non-negative")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "mask", mask)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def big_m(entries: np.ndarray, mask: np.ndarray) -> float:
    free = entries[~mask]
    top = float(free.max()) if free.size else 0.0
    return (entries.shape[0] + 1) * (top + 1.0)


def _has_perfect_matching(mask: np.ndarray) -> bool:
    graph = csr_matrix((~mask).astype(np.int8))
    match = maximum_bipartite_matching(graph, perm_type="column")
    return bool(np.all(match >= 0))


def solve_lap(cost, mask=None) -> tuple[np.ndarray, float]:
    """Minimum-cost bijection rows -> columns avoiding masked cells.

    ``cost`` is either a :class:`CostMatrix` or a square array (``mask`` then
    optional). Returns ``(cols, total)`` with ``cols[r]`` the column chosen
    for row ``r``; ``total`` is the correctly rounded sum of the chosen entries.
    """
    m = cost if isinstance(cost, CostMatrix) else CostMatrix(cost, mask)
    entries, mask = m.entries, m.mask
    if mask.any():
        work = entries.copy()
        work[mask] = big_m(entries, mask)
    else:
        work = entries
    rows, cols = linear_sum_assignment(work)
    if mask[rows, cols].any():
        if _has_perfect_matching(mask):
            raise LapConsistencyError("masked cell selected despite a feasible matching")
        raise InfeasibleError("no perfect matching avoids the masked cells")
    return cols, math.fsum(entries[rows, cols])


def pinned_mask(dim: int, row: int = 0, col: int = 0) -> np.ndarray:
    """Mask forcing ``row`` to take ``col``: the rest of that row and column is forbidden."""
    mask = np.zeros((dim, dim), bool)
    mask[row, :] = True
    mask[:, col] = True
    mask[row, col] = False
    return mask
