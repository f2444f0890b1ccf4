"""Brylinski's Poisson boundary, the HKR maps, and the constant relating
the symbolic Poisson boundary to the geometric one."""

import random
from fractions import Fraction
from math import factorial

import pytest

from orbistar.poisson import (SymbolicChain, brylinski_delta, epsilon_k,
                              fit_constant, interior_bivector, pi_k,
                              symbolic_b, symbolic_d_pi,
                              verify_brylinski_compat)
from orbistar.poly import DiffForm, Polynomial, de_rham_d
from orbistar.sampling import random_form, random_polynomial
from orbistar.star import ConstantBivector

ORDER = 4
PI2 = ConstantBivector.standard_symplectic(1, ORDER)
PI4 = ConstantBivector.standard_symplectic(2, ORDER)


def forms(pi, degree, count, seed):
    rng = random.Random(seed)
    return [random_form(rng, pi.dimension, ORDER, degree) for _ in range(count)]


@pytest.mark.parametrize("pi", [PI2, PI4])
def test_delta_squares_to_zero(pi):
    for degree in range(2, min(pi.dimension, 3) + 1):
        for omega in forms(pi, degree, 10, degree):
            assert not brylinski_delta(brylinski_delta(omega, pi), pi)


@pytest.mark.parametrize("pi", [PI2, PI4])
def test_delta_anticommutes_with_d(pi):
    for degree in range(1, min(pi.dimension, 3)):
        for omega in forms(pi, degree, 10, 10 + degree):
            lhs = de_rham_d(brylinski_delta(omega, pi))
            rhs = brylinski_delta(de_rham_d(omega), pi)
            assert not lhs + rhs


def test_interior_bivector_on_volume():
    one = Polynomial.one(2, ORDER)
    vol = DiffForm(2, ORDER, 2, {(0, 1): one})
    contracted = interior_bivector(vol, PI2)
    assert contracted.components == {(): one * PI2.matrix[0][1]}


def test_hkr_projection_inverts_antisymmetrization():
    rng = random.Random(3)
    for degree in (1, 2):
        omega = random_form(rng, 2, ORDER, degree)
        recovered = pi_k(epsilon_k(omega))
        assert recovered == omega * Fraction(factorial(degree))


def test_symbolic_b_of_hkr_image_vanishes():
    # the antisymmetrized chains are Hochschild cycles of the commutative
    # algebra; pointwise products of coordinates commute so b collapses
    rng = random.Random(4)
    omega = random_form(rng, 2, ORDER, 2)
    collapsed = pi_k(symbolic_b(epsilon_k(omega)))
    assert not collapsed


def test_d_pi_needs_positive_degree():
    chain = SymbolicChain(2, ORDER, 0, [(Polynomial.one(2, ORDER),)])
    with pytest.raises(ValueError):
        symbolic_d_pi(chain, PI2)


def test_fit_constant_detects_inconsistency():
    one = Polynomial.one(2, ORDER)
    a = DiffForm(2, ORDER, 1, {(0,): one})
    b = DiffForm(2, ORDER, 1, {(0,): one + one})
    assert fit_constant([(a, b), (b, a)]) is None


@pytest.mark.parametrize("pi,k", [(PI2, 1), (PI2, 2), (PI4, 1), (PI4, 2)])
def test_brylinski_compat_constant(pi, k):
    report = verify_brylinski_compat(pi, forms(pi, k, 12, 20 + k), k)
    assert report["ok"], report
    assert report["expected"] == 2 * factorial(k - 1)
    assert report["matches_expected"], report
