#!/usr/bin/env python3
"""Print computed-versus-predicted dual Koszul cohomology tables per
conjugacy class, and the summed centralizer-invariant table that gives the
graded shape of the crossed-product cohomology."""

import argparse

from orbistar.groups import generate_group
from orbistar.koszul import compare, convolution_cohomology_report
from orbistar.scalars import Cyclotomic

ORDER = 4


def cyc(rows):
    return [[Cyclotomic.from_rational(v, ORDER) for v in row] for row in rows]


GROUPS = {
    "z2": [cyc([[-1, 0], [0, -1]])],
    "z4": [cyc([[0, -1], [1, 0]])],
    "reflection": [cyc([[1, 0], [0, -1]])],
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--k-max", type=int, default=2)
    parser.add_argument("--slice-min", type=int, default=-2)
    parser.add_argument("--slice-max", type=int, default=4)
    args = parser.parse_args()
    slices = range(args.slice_min, args.slice_max + 1)

    for name, gens in GROUPS.items():
        group = generate_group(gens, ORDER)
        print(f"== {name} ==")
        for g in range(len(group)):
            result = compare(group.element(g), ORDER, args.k_max, slices)
            status = "ok" if result["ok"] else f"MISMATCH {result['mismatches']}"
            print(f"  element {g}: {status}")
            for s in slices:
                print(f"    slice {s:+d}: computed {result['computed'][s]}"
                      f"  predicted {result['predicted'][s]}")
        totals = convolution_cohomology_report(group, args.k_max, slices)
        print("  invariant totals (graded crossed-product cohomology):")
        for s in slices:
            print(f"    slice {s:+d}: {totals['total'][s]}")
        print()


if __name__ == "__main__":
    main()
