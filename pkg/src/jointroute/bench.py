"""Repeated-run benchmark in a comparison-table layout.

Per instance: reference cost, mean +- population std of the final cost over
the repeats, best final cost, initial merged cost L_M and the merge + SA
wall-clock split. Percent gaps are relative to the reference when one is
given.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from jointroute.anneal import SaParams
from jointroute.model import Instance
from jointroute.pipeline import SolveReport, solve
from jointroute.shake import ShakeParams


@dataclass
class BenchRow:
    exp_no: int
    name: str
    reference_cost: Optional[float]
    avg_cost: float
    std_cost: float
    min_cost: float
    merge_cost: float
    time_merge: float
    time_sa: float
    reference_time: Optional[float] = None

    def gap(self, value: float) -> Optional[float]:
        if self.reference_cost is None or self.reference_cost == 0:
            return None
        return 100.0 * (value - self.reference_cost) / self.reference_cost

    @property
    def gap_avg(self):
        return self.gap(self.avg_cost)

    @property
    def gap_min(self):
        return self.gap(self.min_cost)

    @property
    def gap_merge(self):
        return self.gap(self.merge_cost)


def _row(exp_no: int, reports: list[SolveReport], ref: Optional[dict]) -> BenchRow:
    finals = np.array([r.final_cost for r in reports])
    return BenchRow(
        exp_no=exp_no,
        name=reports[0].name,
        reference_cost=None if ref is None else ref["cost"],
        avg_cost=float(finals.mean()),
        std_cost=float(finals.std()),  # population std
        min_cost=float(finals.min()),
        merge_cost=reports[0].merge_cost,
        time_merge=float(np.mean([r.stage_times["merge"] for r in reports])),
        time_sa=float(np.mean([r.stage_times["sa"] for r in reports])),
        reference_time=None if ref is None else ref.get("time"),
    )


def bench(instances: Sequence[Instance], repeats: int = 10,
          shake_params: ShakeParams = ShakeParams(), sa_params: SaParams = SaParams(),
          reference: Optional[dict] = None, workers: int = 1) -> list[BenchRow]:
    """Solve every instance ``repeats`` times with seeds sa_params.rng_seed + r."""
    if repeats < 1:
        raise ValueError("repeats must be >= 1")
    reference = reference or {}
    jobs = [(inst, r) for inst in instances for r in range(repeats)]

    def run(job):
        inst, r = job
        return solve(inst, shake_params, replace(sa_params, rng_seed=sa_params.rng_seed + r))

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        reports = list(pool.map(run, jobs))
    return [
        _row(k, reports[k * repeats:(k + 1) * repeats], reference.get(inst.name))
        for k, inst in enumerate(instances)
    ]


def _fmt(value: Optional[float], digits: int) -> str:
    return "" if value is None else f"{value:.{digits}f}"


def _mean_or_none(values):
    values = [v for v in values if v is not None]
    return float(np.mean(values)) if values else None


CSV_COLUMNS = ["exp_no", "name", "reference", "avg", "std", "avg_gap_pct", "min", "min_gap_pct",
               "L_M", "L_M_gap_pct"]
CSV_TIME_COLUMNS = ["dt_M", "dt_SA", "dt_ref"]


def to_csv(rows: list[BenchRow], include_times: bool = True) -> str:
    """CSV text; with ``include_times=False`` the output is reproducible byte for byte."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS + (CSV_TIME_COLUMNS if include_times else []))
    for r in rows:
        line = [r.exp_no, r.name, _fmt(r.reference_cost, 3), _fmt(r.avg_cost, 3),
                _fmt(r.std_cost, 3), _fmt(r.gap_avg, 2), _fmt(r.min_cost, 3),
                _fmt(r.gap_min, 2), _fmt(r.merge_cost, 3), _fmt(r.gap_merge, 2)]
        if include_times:
            line += [_fmt(r.time_merge, 2), _fmt(r.time_sa, 2), _fmt(r.reference_time, 4)]
        writer.writerow(line)
    footer = ["Avg. %", "", "", "", "", _fmt(_mean_or_none(r.gap_avg for r in rows), 2), "",
              _fmt(_mean_or_none(r.gap_min for r in rows), 2), "",
              _fmt(_mean_or_none(r.gap_merge for r in rows), 2)]
    if include_times:
        footer += [_fmt(_mean_or_none(r.time_merge for r in rows), 2),
                   _fmt(_mean_or_none(r.time_sa for r in rows), 2),
                   _fmt(_mean_or_none(r.reference_time for r in rows), 4)]
    writer.writerow(footer)
    return buf.getvalue()


TABLE_HEADER = ["Exp No.", "Reference", "Average ± Std (%)", "Min (%)", "L_M (%)",
                "dt_M+dt_SA (s)", "dt_ref (s)"]


def _with_gap(value: float, gap: Optional[float]) -> str:
    return f"{value:.3f}" + ("" if gap is None else f" ({gap:.2f}%)")


def to_table(rows: list[BenchRow]) -> str:
    body = []
    for r in rows:
        body.append([
            str(r.exp_no),
            _fmt(r.reference_cost, 3) or "-",
            f"{r.avg_cost:.3f} ± {r.std_cost:.3f}" + ("" if r.gap_avg is None else f" ({r.gap_avg:.2f}%)"),
            _with_gap(r.min_cost, r.gap_min),
            _with_gap(r.merge_cost, r.gap_merge),
            f"{r.time_merge:.2f} + {r.time_sa:.2f}",
            _fmt(r.reference_time, 4) or "-",
        ])

    def pct(values):
        m = _mean_or_none(values)
        return "-" if m is None else f"{m:.2f}%"

    body.append(["Avg. %", "-", pct(r.gap_avg for r in rows), pct(r.gap_min for r in rows),
                 pct(r.gap_merge for r in rows), "-", "-"])
    if rows:
        tm = np.mean([r.time_merge for r in rows])
        ts = np.mean([r.time_sa for r in rows])
        ref_t = _mean_or_none(r.reference_time for r in rows)
        body.append(["Avg. Time", "-", "-", "-", "-", f"{tm:.2f} + {ts:.2f}",
                     "-" if ref_t is None else f"{ref_t:.4f}"])
    widths = [max(len(line[k]) for line in [TABLE_HEADER] + body) for k in range(len(TABLE_HEADER))]

    def fmt(line):
        return " | ".join(cell.ljust(w) for cell, w in zip(line, widths))

    rule = "-+-".join("-" * w for w in widths)
    return "\n".join([fmt(TABLE_HEADER), rule] + [fmt(line) for line in body]) + "\n"
