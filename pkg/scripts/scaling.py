"""Wall-clock per stage against instance size.

    python scripts/scaling.py --sizes 100 300 1000
"""

import argparse
import time

from jointroute import SaParams, solve
from jointroute.files import generate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 300, 500, 1000])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>6} {'cycles':>7} {'L_M':>10} {'final':>10} {'LB':>10} "
          f"{'merge s':>8} {'shake s':>8} {'SA s':>8} {'total s':>8}")
    for n in args.sizes:
        inst = generate(n, args.seed)
        t = time.perf_counter()
        rep = solve(inst, sa_params=SaParams(rng_seed=args.seed))
        total = time.perf_counter() - t
        st = rep.stage_times
        print(f"{n:>6} {rep.n_cycles:>7} {rep.merge_cost:>10.3f} {rep.final_cost:>10.3f} "
              f"{rep.lower_bound:>10.3f} {st['merge']:>8.2f} {st['shake']:>8.2f} "
              f"{st['sa']:>8.2f} {total:>8.2f}")


if __name__ == "__main__":
    main()
