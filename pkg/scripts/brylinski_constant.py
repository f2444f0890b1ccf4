#!/usr/bin/env python3
"""Fit the constant relating the symbolic Poisson boundary (through the
HKR maps) to Brylinski's delta on random polynomial forms, and compare it
with 2 (k-1)!."""

import argparse
import random

from orbistar.poisson import verify_brylinski_compat
from orbistar.sampling import random_form
from orbistar.star import ConstantBivector

ORDER = 4


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--k-max", type=int, default=2)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    for half_dim in (1, 2):
        pi = ConstantBivector.standard_symplectic(half_dim, ORDER)
        nvars = 2 * half_dim
        print(f"== R^{nvars} standard symplectic ==")
        for k in range(1, args.k_max + 1):
            samples = [random_form(rng, nvars, ORDER, k)
                       for _ in range(args.samples)]
            result = verify_brylinski_compat(pi, samples, k)
            print(f"  k={k}: fitted constant {result['constant']}, "
                  f"expected {result['expected']}, "
                  f"constrained samples {result['constrained']}/"
                  f"{result['checked']}, "
                  f"match: {result['matches_expected']}")
        print()


if __name__ == "__main__":
    main()
