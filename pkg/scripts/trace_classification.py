#!/usr/bin/env python3
"""Sweep the truncation window of the trace classifier and watch the
commutator-span codimension stabilize for the trivial, Z/2 and Z/4 actions
on the symplectic plane."""

import argparse

from orbistar.groups import generate_group
from orbistar.scalars import Cyclotomic
from orbistar.star import ConstantBivector
from orbistar.traces import trace_space_dimension

ORDER = 4


def cyc(rows):
    return [[Cyclotomic.from_rational(v, ORDER) for v in row] for row in rows]


GROUPS = {
    "trivial": [cyc([[1, 0], [0, 1]])],
    "z2": [cyc([[-1, 0], [0, -1]])],
    "z4": [cyc([[0, -1], [1, 0]])],
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=4,
                        help="largest polynomial-degree window")
    parser.add_argument("--hbar-order", type=int, default=1)
    args = parser.parse_args()

    pi = ConstantBivector.standard_symplectic(1, ORDER)
    for name, gens in GROUPS.items():
        group = generate_group(gens, ORDER)
        print(f"== {name} (|Gamma| = {len(group)}) ==")
        for cap in range(2, args.max_degree + 1, 2):
            result = trace_space_dimension(group, pi, cap, args.hbar_order)
            print(f"  D={cap} K={args.hbar_order}: "
                  f"dimension={result['dimension']} "
                  f"stable={result['stable']} "
                  f"windows={result['windows']} "
                  f"compact prediction="
                  f"{result['compact_support_prediction']}")
        print()


if __name__ == "__main__":
    main()
