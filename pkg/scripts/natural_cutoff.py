"""Median maximum degree versus network size, with the log-log regression slope.

    python scripts/natural_cutoff.py --tau-j 3 1000 --sizes 1000 4000 16000
"""
import argparse

import numpy as np

from adhocsf.growth import GrowthParams, grow
from adhocsf.rng import derive_seed


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tau-j", type=int, nargs="+", default=[3])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 4000, 16000])
    ap.add_argument("--m", type=int, default=1)
    ap.add_argument("--realizations", type=int, default=5)
    ap.add_argument("--base-seed", type=int, default=0)
    args = ap.parse_args()

    print("tau_j,n,median_max_degree,hub_edge_share")
    for tau_j in args.tau_j:
        medians = []
        for n in args.sizes:
            point = (0.0, tau_j, 0, None, args.m, n)
            graphs = [grow(GrowthParams(m=args.m, tau_j=tau_j, n_target=n,
                                        seed=derive_seed(args.base_seed, point, r)))[0]
                      for r in range(args.realizations)]
            medians.append(float(np.median([g.max_degree() for g in graphs])))
            share = np.mean([g.max_degree() / g.edge_count for g in graphs])
            print(f"{tau_j},{n},{medians[-1]:g},{share:.4f}")
        slope = np.polyfit(np.log(args.sizes), np.log(medians), 1)[0]
        print(f"# tau_j={tau_j} slope={slope:.4f}")


if __name__ == "__main__":
    main()
