"""Gap to the exhaustive optimum on small instances, per size.

    python scripts/oracle_gap.py --count 100
"""

import argparse

import numpy as np

from jointroute import SaParams, solve
from jointroute.files import generate
from jointroute.oracle import brute_force


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[3, 4, 5, 6, 7])
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>3} {'mean gap %':>11} {'max gap %':>10} {'exact %':>8} {'L_M gap %':>10} {'LB/opt':>7}")
    for n in args.sizes:
        gaps, merge_gaps, lb = [], [], []
        for k in range(args.count):
            inst = generate(n, args.seed + k)
            rep = solve(inst, sa_params=SaParams(rng_seed=k))
            opt = brute_force(inst).cost
            gaps.append((rep.final_cost - opt) / opt)
            merge_gaps.append((rep.merge_cost - opt) / opt)
            lb.append(rep.lower_bound / opt)
        gaps = np.array(gaps)
        print(f"{n:>3} {100 * gaps.mean():>11.4f} {100 * gaps.max():>10.4f} "
              f"{100 * np.mean(gaps <= 1e-9):>8.1f} {100 * np.mean(merge_gaps):>10.3f} "
              f"{np.mean(lb):>7.3f}")


if __name__ == "__main__":
    main()
