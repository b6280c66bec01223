"""Compare e(N) and mu(N) from the closed formulas with direct enumeration on random instances.

    python3 scripts/oracle_sweep.py --trials 40 --seed 1
"""

import argparse
import random
import time

from reesmult import ExploreConfig, e_N_direct, e_N_formula, mu_N, mu_N_direct
from reesmult.theorems import random_instance

FAMILIES = [("polynomial", 1), ("polynomial", 2), ("semigroup", 1)]


def label(inst):
    return f"{inst.ring}: " + " | ".join(str(i) for i in inst.ideals)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=30)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--bound", type=int, default=3, help="exponent bound for random generators")
    args = ap.parse_args(argv)
    bad = 0
    start = time.perf_counter()
    for t in range(args.trials):
        family, d = FAMILIES[t % len(FAMILIES)]
        g = 1 + (t // len(FAMILIES)) % 2
        cfg = ExploreConfig(ring_family=family, d=d, g=g, exponent_bound=args.bound, trials=1, seed=args.seed)
        inst = random_instance(random.Random(f"{args.seed}/{t}"), cfg)
        pair = (e_N_formula(inst), e_N_direct(inst), mu_N(inst), mu_N_direct(inst))
        ok = pair[0] == pair[1] and pair[2] == pair[3]
        bad += not ok
        print(f"{'ok ' if ok else 'BAD'} e={pair[0]}/{pair[1]} mu={pair[2]}/{pair[3]}  {label(inst)}")
    print(f"{args.trials - bad}/{args.trials} agree in {time.perf_counter() - start:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
