"""Comparison table on seeded uniform instances.

Prints the table for each size and writes one CSV per size. For n <= 7 the
exhaustive optimum is used as the reference column; larger sizes take an
optional reference JSON (name -> cost or {"cost", "time"}).

    python scripts/run_benchmark.py --sizes 32 100 --count 10 --repeats 10
"""

import argparse
from pathlib import Path

from jointroute import SaParams
from jointroute.bench import bench, to_csv, to_table
from jointroute.files import generate, read_reference
from jointroute.oracle import MAX_ORACLE_N, brute_force


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[32, 100, 200, 300])
    ap.add_argument("--count", type=int, default=10)
    ap.add_argument("--repeats", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--ref", help="reference JSON for generated instance names")
    ap.add_argument("--out-dir", default="results")
    args = ap.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    external = read_reference(args.ref) if args.ref else {}
    for n in args.sizes:
        instances = [generate(n, args.seed + k) for k in range(args.count)]
        if n <= MAX_ORACLE_N:
            reference = {i.name: {"cost": brute_force(i).cost, "time": None} for i in instances}
        else:
            reference = external
        rows = bench(instances, args.repeats, sa_params=SaParams(rng_seed=args.seed),
                     reference=reference, workers=args.workers)
        print(f"\nn = {n}")
        print(to_table(rows), end="")
        (out / f"bench_n{n}.csv").write_text(to_csv(rows))


if __name__ == "__main__":
    main()
