"""Tabulate descent obstructions of candidate twists over random Brauer classes.

For each period, counts how often m*alpha + n*(2 alpha) vanishes, showing that
O(2) x O(1) works for every class of period 4 and O(1) x Omega(2) for period 5,
while neighbouring twists do not.

    python scripts/obstruction_table.py --samples 200
"""

import argparse
import random

from brauercurves.brauerq import random_class
from brauercurves.constructions import BundleTwist, kunneth_obstruction

PRIMES = [2, 3, 5, 7, 11, 13, 17, 19]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    twists = [BundleTwist(m, n) for m in range(0, 4) for n in range(0, 3)]
    print("period  " + "  ".join(f"({t.m},{t.n})" for t in twists))
    for per in (2, 3, 4, 5):
        classes = [random_class(per, rng.sample(PRIMES, rng.randint(2, 4)), rng.getrandbits(32))
                   for _ in range(args.samples)]
        row = []
        for t in twists:
            hits = sum(kunneth_obstruction(t, a, 2 * a).is_zero() for a in classes)
            row.append(f"{hits / len(classes):5.0%}")
        print(f"{per:>6}  " + "  ".join(row))


if __name__ == "__main__":
    main()
