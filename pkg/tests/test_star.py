"""Moyal-Weyl star product: associativity, canonical commutators, the
semiclassical limit and the star inverse square root."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbistar.poly import Polynomial
from orbistar.sampling import random_polynomial
from orbistar.scalars import Cyclotomic, HbarSeries
from orbistar.star import (ConstantBivector, moyal_product, star_commutator,
                           star_inv_sqrt, verify_associativity)

ORDER = 4
PI2 = ConstantBivector.standard_symplectic(1, ORDER)
PI4 = ConstantBivector.standard_symplectic(2, ORDER)


def polys(nvars, degree=3):
    def build(terms):
        out = Polynomial.zero(nvars, ORDER)
        for exps, coeff in terms:
            out = out + Polynomial.monomial(exps, coeff, ORDER)
        return out
    return st.lists(
        st.tuples(
            st.lists(st.integers(min_value=0, max_value=degree),
                     min_size=nvars, max_size=nvars),
            st.fractions(min_value=-3, max_value=3, max_denominator=3),
        ), max_size=3).map(build)


def test_antisymmetry_required():
    bad = [[Cyclotomic.zero(ORDER), Cyclotomic.one(ORDER)],
           [Cyclotomic.one(ORDER), Cyclotomic.zero(ORDER)]]
    with pytest.raises(ValueError):
        ConstantBivector(bad, ORDER)


def test_canonical_commutator():
    x = Polynomial.variable(0, 2, ORDER)
    p = Polynomial.variable(1, 2, ORDER)
    comm = star_commutator(x, p, PI2)
    i_hbar = Polynomial.constant(
        HbarSeries.from_cyclotomic(Cyclotomic.imaginary_unit(ORDER))
        * HbarSeries.hbar(ORDER), 2, ORDER)
    assert comm == i_hbar


@given(f=polys(2), g=polys(2))
def test_first_order_term_is_poisson(f, g):
    # f * g = f g + (i/2) h {f, g} + O(h^2)
    product = moyal_product(f, g, PI2)
    assert product.hbar_coefficient(0) == f * g
    half_i = HbarSeries.from_cyclotomic(
        Cyclotomic.imaginary_unit(ORDER) * Fraction(1, 2))
    assert product.hbar_coefficient(1) == PI2.bracket(f, g) * half_i


@given(f=polys(2), g=polys(2), h=polys(2))
@settings(max_examples=25)
def test_associativity_dim2(f, g, h):
    assert moyal_product(moyal_product(f, g, PI2), h, PI2) == \
        moyal_product(f, moyal_product(g, h, PI2), PI2)


@given(f=polys(4, 2), g=polys(4, 2), h=polys(4, 2))
@settings(max_examples=15)
def test_associativity_dim4(f, g, h):
    assert moyal_product(moyal_product(f, g, PI4), h, PI4) == \
        moyal_product(f, moyal_product(g, h, PI4), PI4)


def test_verify_associativity_report():
    rng = random.Random(5)
    triples = [tuple(random_polynomial(rng, 2, ORDER, 3) for _ in range(3))
               for _ in range(10)]
    report = verify_associativity(triples, PI2)
    assert report == {"checked": 10, "failures": [], "ok": True}


def test_commutator_of_functions_of_x_vanishes():
    x = Polynomial.variable(0, 2, ORDER)
    assert not star_commutator(x, x * x * x, PI2)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_star_inv_sqrt(seed):
    rng = random.Random(seed)
    one = Polynomial.one(2, ORDER)
    hbar = HbarSeries.hbar(ORDER)
    a = one + random_polynomial(rng, 2, ORDER, 2) * hbar
    b = star_inv_sqrt(a, PI2, 5)
    product = moyal_product(moyal_product(b, b, PI2), a, PI2)
    assert product.agrees_with(one, up_to=5)


def test_star_inv_sqrt_of_one():
    one = Polynomial.one(2, ORDER)
    assert star_inv_sqrt(one, PI2, 4).agrees_with(one, up_to=4)
