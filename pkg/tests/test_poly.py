"""Sparse polynomials, graded fields and the textual polynomial syntax."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbistar.poly import (DiffForm, MultiVector, Polynomial,
                           PolynomialSyntaxError, de_rham_d,
                           linear_substitute, parse_polynomial, wedge)
from orbistar.scalars import Cyclotomic, HbarSeries

ORDER = 4


def polys(nvars=2, degree=3):
    def build(terms):
        out = Polynomial.zero(nvars, ORDER)
        for exps, coeff in terms:
            out = out + Polynomial.monomial(exps, coeff, ORDER)
        return out
    return st.lists(
        st.tuples(
            st.lists(st.integers(min_value=0, max_value=degree),
                     min_size=nvars, max_size=nvars),
            st.fractions(min_value=-4, max_value=4, max_denominator=4),
        ), max_size=4).map(build)


@given(f=polys(), g=polys(), h=polys())
def test_ring_axioms(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * (g * h) == (f * g) * h
    assert f * g == g * f


@given(f=polys(), g=polys())
def test_leibniz(f, g):
    for i in range(2):
        lhs = (f * g).partial_derivative(i)
        rhs = f.partial_derivative(i) * g + f * g.partial_derivative(i)
        assert lhs == rhs


@given(f=polys())
def test_substitute_identity(f):
    ident = [[Cyclotomic.one(ORDER) if i == j else Cyclotomic.zero(ORDER)
              for j in range(2)] for i in range(2)]
    assert linear_substitute(f, ident) == f


@given(f=polys())
def test_substitute_composes(f):
    a = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
    b = [[Fraction(2), Fraction(0)], [Fraction(1), Fraction(1)]]
    am = [[Cyclotomic.from_rational(v, ORDER) for v in r] for r in a]
    bm = [[Cyclotomic.from_rational(v, ORDER) for v in r] for r in b]
    # (f o B) o A = f o (B A): the outer substitution feeds A x into B
    ba = [[sum((bm[i][k] * am[k][j] for k in range(2)),
               Cyclotomic.zero(ORDER)) for j in range(2)] for i in range(2)]
    assert linear_substitute(linear_substitute(f, bm), am) == \
        linear_substitute(f, ba)


def test_substitute_singular_raises():
    f = Polynomial.variable(0, 2, ORDER)
    singular = [[Cyclotomic.one(ORDER), Cyclotomic.one(ORDER)],
                [Cyclotomic.one(ORDER), Cyclotomic.one(ORDER)]]
    with pytest.raises(ValueError):
        linear_substitute(f, singular)


def test_hbar_coefficient_split():
    x = Polynomial.variable(0, 2, ORDER)
    h = HbarSeries.hbar(ORDER)
    f = x + x * x * h
    assert f.hbar_coefficient(0) == x
    assert f.hbar_coefficient(1) == x * x


# -- graded fields ------------------------------------------------------


def test_wedge_antisymmetry():
    one = Polynomial.one(2, ORDER)
    dx = DiffForm(2, ORDER, 1, {(0,): one})
    dy = DiffForm(2, ORDER, 1, {(1,): one})
    assert wedge(dx, dy) == -wedge(dy, dx)
    assert not wedge(dx, dx)


def test_de_rham_squares_to_zero():
    f = Polynomial.variable(0, 3, ORDER) * Polynomial.variable(1, 3, ORDER)
    omega = DiffForm(3, ORDER, 1, {(2,): f, (0,): f * f})
    assert not de_rham_d(de_rham_d(omega))


def test_contract_index_signs():
    one = Polynomial.one(3, ORDER)
    vol = MultiVector(3, ORDER, 3, {(0, 1, 2): one})
    assert vol.contract_index(1).components == {
        (0, 2): -one}


# -- textual syntax -----------------------------------------------------


def test_parse_examples():
    f = parse_polynomial("3*x0^2*x1 + (1/2)*h*x2", 3, ORDER)
    assert f.hbar_coefficient(0) == \
        Polynomial.monomial((2, 1, 0), 3, ORDER)
    assert f.hbar_coefficient(1) == \
        Polynomial.monomial((0, 0, 1), Fraction(1, 2), ORDER)


def test_parse_roots_of_unity():
    f = parse_polynomial("z4*x0", 1, ORDER)
    coeff = f.terms[(1,)].coefficient(0)
    assert coeff == Cyclotomic.imaginary_unit(ORDER)
    g = parse_polynomial("z2^1", 1, ORDER)
    assert g.constant_term().coefficient(0) == \
        Cyclotomic.from_rational(-1, ORDER)


def test_parse_error_has_position():
    with pytest.raises(PolynomialSyntaxError) as err:
        parse_polynomial("x0 + @", 2, ORDER)
    assert err.value.position == 5


@given(f=polys())
def test_repr_reparses(f):
    text = repr(f)
    assert parse_polynomial(text, 2, ORDER) == f
