"""Command line entry point: gen, solve, verify, oracle, bench, plot.

Exit codes: 0 success, 1 failed verification or other error, 2 parse error,
3 infeasible, 4 size guard.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from jointroute.anneal import SaParams
from jointroute.bench import bench, to_csv, to_table
from jointroute.files import (generate, instance_to_dict, read_instance, read_reference,
                              read_solution, write_instance, write_solution)
from jointroute.model import GuardError, InfeasibleError, ParseError, validate_solution
from jointroute.oracle import brute_force
from jointroute.pipeline import solve
from jointroute.render import render_svg
from jointroute.shake import ShakeParams

EXIT_PARSE, EXIT_INFEASIBLE, EXIT_GUARD = 2, 3, 4


def _add_solver_flags(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=0, help="base RNG seed for annealing")
    p.add_argument("--window", type=int, default=12)
    p.add_argument("--step", type=int, default=6)
    p.add_argument("--t0", type=float, default=None, help="default: mean tour leg length")
    p.add_argument("--t-min", type=float, default=None, help="default: t0 / 1000")
    p.add_argument("--alpha", type=float, default=0.95)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--max-iters", type=int, default=50)
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--cooling", choices=["per_sample", "per_lap"], default="per_sample")


def _params(args) -> tuple[ShakeParams, SaParams]:
    return (
        ShakeParams(max_iters=args.max_iters, tolerance=args.eps),
        SaParams(window=args.window, step=args.step, t0=args.t0, t_min=args.t_min,
                 alpha=args.alpha, samples=args.samples, rng_seed=args.seed,
                 cooling=args.cooling),
    )


def cmd_gen(args) -> int:
    inst = generate(args.n, args.seed, args.extent)
    if args.out:
        write_instance(inst, args.out)
    else:
        print(json.dumps(instance_to_dict(inst), indent=1))
    return 0


def cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    shake_params, sa_params = _params(args)
    report = solve(inst, shake_params, sa_params)
    t = report.stage_times
    print(f"{inst.name}: n={inst.n} cycles={report.n_cycles} LB={report.lower_bound:.3f} "
          f"L_M={report.merge_cost:.3f} shaken={report.shaken_cost:.3f} "
          f"final={report.final_cost:.3f}  dt_M={t['merge']:.3f}s dt_shake={t['shake']:.3f}s "
          f"dt_SA={t['sa']:.3f}s")
    if args.out:
        write_solution(report.solution, args.out, inst.name)
    if args.report:
        data = report.numerics() | {"stage_times": report.stage_times}
        Path(args.report).write_text(json.dumps(data, indent=1) + "\n")
    return 0


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    sol = read_solution(args.solution)
    problems = validate_solution(inst, sol)
    for line in problems:
        print(line)
    if problems:
        return 1
    print(f"ok: feasible, cost {sol.cost:.6f}")
    return 0


def cmd_oracle(args) -> int:
    inst = read_instance(args.instance)
    sol = brute_force(inst)
    print(f"{inst.name}: optimum {sol.cost:.6f} sequence={sol.sequence.tolist()} "
          f"assignment={sol.assignment.tolist()}")
    if args.out:
        write_solution(sol, args.out, inst.name)
    return 0


def cmd_bench(args) -> int:
    if args.instances:
        instances = [read_instance(p) for p in args.instances]
    else:
        if args.n is None:
            raise ParseError("bench needs instance files or --n")
        instances = [generate(args.n, args.seed + k, args.extent) for k in range(args.count)]
    reference = read_reference(args.ref) if args.ref else None
    if args.ref_oracle:
        reference = {inst.name: {"cost": brute_force(inst).cost, "time": None}
                     for inst in instances}
    shake_params, sa_params = _params(args)
    rows = bench(instances, args.repeats, shake_params, sa_params, reference, args.workers)
    print(to_table(rows), end="")
    if args.out:
        Path(args.out).write_text(to_csv(rows, include_times=not args.no_times))
    return 0


def cmd_plot(args) -> int:
    inst = read_instance(args.instance)
    sol = read_solution(args.solution)
    problems = validate_solution(inst, sol)
    if problems:
        raise ParseError("; ".join(problems))
    render_svg(inst, sol, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jointroute", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a uniform random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--extent", type=float, default=1.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="run the heuristic pipeline")
    p.add_argument("instance")
    _add_solver_flags(p)
    p.add_argument("--out", help="write the solution file here")
    p.add_argument("--report", help="write a JSON report with stage costs and times")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution file against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive optimum for n <= 7")
    p.add_argument("instance")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="repeated runs in comparison-table layout")
    p.add_argument("instances", nargs="*")
    p.add_argument("--n", type=int, help="generate instances of this size instead of reading files")
    p.add_argument("--count", type=int, default=10, help="number of generated instances")
    p.add_argument("--extent", type=float, default=1.0)
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--ref", help="JSON reference costs keyed by instance name")
    p.add_argument("--ref-oracle", action="store_true", help="use the exhaustive optimum as reference")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-times", action="store_true", help="omit timing columns from the CSV")
    p.add_argument("--out", help="CSV output path")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="render instance and tour to SVG")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except GuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
