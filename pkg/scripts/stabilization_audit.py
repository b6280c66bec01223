"""How late do first differences of n -> ell(R/I^n) settle in numerical semigroup rings?

The difference ell(R/I^(n+1)) - ell(R/I^n) eventually equals e(I), which is the
smallest element of I.  This prints, for random ideals, the last n at which the
difference is still wrong, and flags sequences that pause on a wrong value
(a false plateau that a short stabilization window would accept).

    python3 scripts/stabilization_audit.py --trials 300
"""

import argparse
import collections
import random

from reesmult import ideal_from_gens, numerical_semigroup, sample_length
from reesmult.theorems import DEFAULT_SEMIGROUPS


def main(argv=None):
    ap = argparse.ArgumentParser(description="audit when first differences settle")
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--horizon", type=int, default=24)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    last_wrong = collections.Counter()
    plateaus = []
    for _ in range(args.trials):
        ring = numerical_semigroup(*rng.choice(DEFAULT_SEMIGROUPS))
        top = 3 * max(ring.semigroup_gens)
        members = [s for s in range(1, top) if ring.in_semigroup(s)]
        ideal = ideal_from_gens(ring, rng.sample(members, rng.randint(1, 3)))
        e = min(ideal.gens)
        lengths = [sample_length([ideal], [n]) for n in range(args.horizon + 1)]
        diffs = [b - a for a, b in zip(lengths, lengths[1:])]
        wrong = [n for n, x in enumerate(diffs) if x != e]
        last_wrong[max(wrong) if wrong else -1] += 1
        if any(diffs[n] == diffs[n + 1] != e for n in range(len(diffs) - 1)):
            plateaus.append((str(ideal), diffs[:8]))
    print("last index with a wrong difference -> count")
    for k in sorted(last_wrong):
        print(f"  {k:>3}: {last_wrong[k]}")
    print(f"{len(plateaus)} sequences pause on a wrong value, e.g.")
    for ideal, head in plateaus[:5]:
        print(f"  {ideal}: {head}")


if __name__ == "__main__":
    main()
