"""Find g = 2 instances where the numeric equation e(N) = mu(N) - dim B + 1 holds
although B_N is not Cohen-Macaulay.

In dimension 1 the reduction equation J N = N^2, with
J = (t1^-1, t2^-1, m, x1 t1, x2 t2) and x_j the smallest element of I_j, is checked
on a bounded box.  A failure together with the numeric equation rules out the
Cohen-Macaulay property, since for a Cohen-Macaulay B_N the equation forces J N = N^2.

    python3 scripts/cohen_macaulay_witness.py --trials 300
"""

import argparse
import random

from reesmult import (
    ExploreConfig,
    LaurentElement,
    check_reduction_equation_bounded,
    e_N_formula,
    mu_N,
    rees_dim,
    reduction_number_dim1,
)
from reesmult.theorems import random_instance


def sally_generators(instance):
    ring, (I1, I2) = instance.ring, instance.ideals
    gens = [LaurentElement.of(ring, [(1, 0, (-1, 0))]), LaurentElement.of(ring, [(1, 0, (0, -1))])]
    gens += [LaurentElement.of(ring, [(1, v, (0, 0))]) for v in instance.m.gens]
    gens += [LaurentElement.of(ring, [(1, min(I1.gens), (1, 0))]),
             LaurentElement.of(ring, [(1, min(I2.gens), (0, 1))])]
    return gens


def label(inst):
    return f"{inst.ring}: " + " | ".join(str(i) for i in inst.ideals)


def main(argv=None):
    ap = argparse.ArgumentParser(description="search for numeric-equation instances that are not CM")
    ap.add_argument("--trials", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    cfg = ExploreConfig(ring_family="semigroup", d=1, g=2, trials=1, seed=args.seed, ideal_model="near_square")
    equal = witnesses = 0
    seen = set()
    for t in range(args.trials):
        inst = random_instance(random.Random(f"{args.seed}/{t}"), cfg)
        if e_N_formula(inst) != mu_N(inst) - rees_dim(inst) + 1:
            continue
        equal += 1
        verdict = check_reduction_equation_bounded(inst, sally_generators(inst))
        if not verdict.holds and label(inst) not in seen:
            seen.add(label(inst))
            witnesses += 1
            rs = [reduction_number_dim1(I) for I in inst.ideals]
            print(f"{label(inst)}: J N != N^2 at {verdict.fails_at}, reduction numbers {rs}")
    print(f"{equal} of {args.trials} instances satisfy the equation; {witnesses} distinct ones are not CM")


if __name__ == "__main__":
    main()
