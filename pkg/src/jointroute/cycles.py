"""Cycle detection on the forward/backward link graph and greedy pairwise merging.

Every node of the graph is either an item or a placeholder. Forward links
p_i -> s_{a(i)} are never touched; merging two cycles swaps the targets of one
backward link s_j -> p_{b(j)} from each, which joins them into one cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from jointroute.model import Instance, Solution, dist


@dataclass(frozen=True)
class Cycle:
    """Alternating cycle p_{items[0]} -> s_{placeholders[0]} -> p_{items[1]} -> ...

    ``placeholders[k]`` is the forward image of ``items[k]``; the backward link
    leaving ``placeholders[k]`` enters ``items[(k + 1) % len]``.
    """

    items: tuple[int, ...]
    placeholders: tuple[int, ...]

    def __len__(self):
        return len(self.items)

    @property
    def nodes(self) -> list[int]:
        out = []
        for i, j in zip(self.items, self.placeholders):
            out += [i, j]
        return out

    def backward_edge(self, k: int) -> tuple[int, int]:
        if not 0 <= k < len(self.items):
            raise IndexError(f"backward edge {k} out of range for cycle of {len(self.items)} items")
        return self.placeholders[k], self.items[(k + 1) % len(self.items)]


def detect_cycles(fwd, bwd) -> list[Cycle]:
    """Decompose item -> b(a(item)) into cycles, ordered by their smallest item."""
    fwd = np.asarray(fwd)
    bwd = np.asarray(bwd)
    seen = np.zeros(len(fwd), bool)
    cycles = []
    for start in range(len(fwd)):
        if seen[start]:
            continue
        items, places = [], []
        i = start
        while not seen[i]:
            seen[i] = True
            items.append(i)
            places.append(int(fwd[i]))
            i = int(bwd[fwd[i]])
        cycles.append(Cycle(tuple(items), tuple(places)))
    return cycles


def cycle_cost(inst: Instance, c: Cycle) -> float:
    total = 0.0
    k = len(c)
    for t in range(k):
        p = inst.items[c.items[t]]
        s = inst.placeholders[c.placeholders[t]]
        total += dist(p, s) + dist(s, inst.items[c.items[(t + 1) % k]])
    return total


def merge_delta(inst: Instance, ca: Cycle, cb: Cycle, i: int, j: int) -> float:
    """Tour length change from swapping backward edge ``i`` of ``ca`` with edge ``j`` of ``cb``."""
    sa, pa = ca.backward_edge(i)
    sb, pb = cb.backward_edge(j)
    S, P = inst.placeholders, inst.items
    return dist(S[sa], P[pb]) + dist(S[sb], P[pa]) - dist(S[sa], P[pa]) - dist(S[sb], P[pb])


def splice(ca: Cycle, cb: Cycle, i: int, j: int) -> Cycle:
    """Join two cycles through backward edge ``i`` of ``ca`` and ``j`` of ``cb``."""
    ca.backward_edge(i)
    cb.backward_edge(j)
    items = ca.items[: i + 1] + cb.items[j + 1:] + cb.items[: j + 1] + ca.items[i + 1:]
    places = (ca.placeholders[: i + 1] + cb.placeholders[j + 1:]
              + cb.placeholders[: j + 1] + ca.placeholders[i + 1:])
    return Cycle(items, places)


def links_from_cycles(cycles: list[Cycle]) -> tuple[np.ndarray, np.ndarray]:
    size = sum(len(c) for c in cycles)
    fwd = np.full(size, -1, dtype=np.int64)
    bwd = np.full(size, -1, dtype=np.int64)
    for c in cycles:
        k = len(c)
        for t in range(k):
            fwd[c.items[t]] = c.placeholders[t]
            bwd[c.placeholders[t]] = c.items[(t + 1) % k]
    if (fwd < 0).any() or (bwd < 0).any():
        raise ValueError("cycles do not cover every item and placeholder")
    return fwd, bwd


def sequence_from_links(fwd, bwd) -> np.ndarray:
    size = len(fwd)
    seq = np.empty(size, dtype=np.int64)
    i = 0
    for k in range(size):
        seq[k] = i
        i = bwd[fwd[i]]
    return seq


@dataclass
class MergeResult:
    solution: Solution
    initial_cost: float  # summed length of the input cycles
    deltas: list[float] = field(default_factory=list)
    merged_pairs: list[tuple[int, int]] = field(default_factory=list)

    @property
    def rounds(self) -> int:
        return len(self.deltas)


class _PairCache:
    """Best merge per cycle pair, over the dense backward-edge swap matrix.

    Backward edges are identified by their source placeholder. Swapping two
    edges only changes the swap costs in their own rows/columns, so after a
    merge only the merged cycle's pair minima need refreshing.
    """

    def __init__(self, inst: Instance, cycles: list[Cycle], bwd: np.ndarray):
        self.D = inst.item_to_placeholder().T  # D[j, i] = d(s_j, p_i)
        self.bwd = bwd
        size = len(bwd)
        idx = np.arange(size)
        self.base = self.D[idx, bwd]
        cross = self.D[:, bwd]
        self.swap = cross + cross.T - self.base[:, None] - self.base[None, :]

        m = len(cycles)
        self.members = {c: np.sort(np.array(cy.placeholders)) for c, cy in enumerate(cycles)}
        self.label = np.empty(size, dtype=np.int64)
        for c, e in self.members.items():
            self.label[e] = c
        self.best = np.full((m, m), np.inf)
        self.edge = np.full((m, m), -1, dtype=np.int64)
        for c in range(m):
            self._refresh(c)

    def _refresh(self, c: int):
        rows = self.members[c]
        block = self.swap[rows]
        colmin = block.min(axis=0)
        colarg = rows[block.argmin(axis=0)]

        live = [x for x in sorted(self.members) if x != c]
        if not live:
            return
        order = np.concatenate([self.members[x] for x in live])
        counts = np.array([len(self.members[x]) for x in live])
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        vals = colmin[order]
        segmin = np.minimum.reduceat(vals, starts)
        hits = np.flatnonzero(vals == np.repeat(segmin, counts))
        first = hits[np.searchsorted(hits, starts)]
        live = np.array(live)
        self.best[c, live] = segmin
        self.best[live, c] = segmin
        self.edge[c, live] = colarg[order[first]]
        self.edge[live, c] = order[first]

    def best_pair(self) -> tuple[int, int]:
        upper = np.triu(self.best, k=1)
        upper[np.tril_indices_from(upper)] = np.inf
        flat = int(np.argmin(upper))
        return divmod(flat, self.best.shape[0])

    def merge(self, a: int, b: int) -> tuple[float, int, int]:
        ea, eb = int(self.edge[a, b]), int(self.edge[b, a])
        delta = float(self.swap[ea, eb])
        bwd = self.bwd
        bwd[ea], bwd[eb] = bwd[eb], bwd[ea]
        for e in (ea, eb):
            self.base[e] = self.D[e, bwd[e]]
        for e in (ea, eb):
            line = self.D[:, bwd[e]] + self.D[e, bwd] - self.base - self.base[e]
            self.swap[:, e] = line
            self.swap[e, :] = line
        self.members[a] = np.sort(np.concatenate([self.members[a], self.members.pop(b)]))
        self.label[self.members[a]] = a
        self.best[b, :] = np.inf
        self.best[:, b] = np.inf
        self._refresh(a)
        return delta, ea, eb


def merge_all(inst: Instance, cycles: list[Cycle]) -> MergeResult:
    """Greedily merge the cheapest cycle pair until a single tour remains."""
    fwd, bwd = links_from_cycles(cycles)
    initial = sum(cycle_cost(inst, c) for c in cycles)
    result = MergeResult(solution=None, initial_cost=initial)  # type: ignore[arg-type]
    if len(cycles) > 1:
        cache = _PairCache(inst, cycles, bwd)
        for _ in range(len(cycles) - 1):
            a, b = cache.best_pair()
            delta, ea, eb = cache.merge(a, b)
            result.deltas.append(delta)
            result.merged_pairs.append((ea, eb))
        bwd = cache.bwd
    seq = sequence_from_links(fwd, bwd)
    result.solution = Solution.build(inst, seq, fwd)
    return result
