"""Seeded random generators for polynomials, forms and crossed elements.

Shared by the command-line checks and the test suite so that a scenario
plus a seed pins down every verification input exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .crossed import CrossedElement
from .groups import MatrixGroup
from .poly import DiffForm, Polynomial
from .scalars import HbarSeries


def random_fraction(rng: random.Random, span: int = 4) -> Fraction:
    num = rng.randrange(-span, span + 1)
    den = rng.randrange(1, 4)
    return Fraction(num, den)


def random_polynomial(rng: random.Random, nvars: int, order: int,
                      degree: int, terms: int = 4,
                      hbar_max: int = 0) -> Polynomial:
    out = Polynomial.zero(nvars, order)
    for _ in range(terms):
        exps = [0] * nvars
        for _ in range(rng.randrange(degree + 1)):
            exps[rng.randrange(nvars)] += 1
        coeff = random_fraction(rng)
        if not coeff:
            continue
        scalar = HbarSeries.from_rational(coeff, order)
        if hbar_max:
            scalar = scalar * HbarSeries.hbar(order, rng.randrange(hbar_max + 1))
        out = out + Polynomial.monomial(exps, 1, order) * scalar
    return out


def random_form(rng: random.Random, nvars: int, order: int, ext_degree: int,
                poly_degree: int = 2, density: float = 0.7) -> DiffForm:
    components = {}
    for idx in combinations(range(nvars), ext_degree):
        if rng.random() >= density:
            continue
        exps = [0] * nvars
        for _ in range(rng.randrange(poly_degree + 1)):
            exps[rng.randrange(nvars)] += 1
        coeff = random_fraction(rng)
        if coeff:
            components[idx] = Polynomial.monomial(exps, coeff, order)
    return DiffForm(nvars, order, ext_degree, components)


def random_crossed(rng: random.Random, group: MatrixGroup, degree: int,
                   components: int = 2, terms: int = 3) -> CrossedElement:
    out = CrossedElement.zero(group)
    for _ in range(components):
        gamma = rng.randrange(len(group))
        poly = random_polynomial(rng, group.dimension, group.order,
                                 degree, terms)
        out = out + CrossedElement.delta(group, gamma, poly)
    return out
