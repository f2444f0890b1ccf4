"""Moyal-Weyl star product for a constant Poisson bivector, star
commutators, and order-by-order functional calculus (star inverse
square root).

On polynomials the bidifferential series terminates, so every product
here is exact in h up to whatever truncation the inputs carry.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Polynomial
from .scalars import Cyclotomic, HbarSeries


class ConstantBivector:
    """A constant antisymmetric bivector Pi on 2n (or any d) variables."""

    __slots__ = ("dimension", "order", "matrix", "symplectic", "_entries")

    def __init__(self, matrix: list, order: int, symplectic: bool = False):
        d = len(matrix)
        self.dimension = d
        self.order = order
        rows = []
        for row in matrix:
            if len(row) != d:
                raise ValueError("bivector matrix must be square")
            rows.append(tuple(
                v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(v, order)
                for v in row
            ))
        for i in range(d):
            for j in range(d):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError("bivector matrix must be antisymmetric")
        self.matrix = tuple(rows)
        self.symplectic = symplectic
        if symplectic:
            from .linalg import invert_dense
            invert_dense([list(r) for r in rows],
                         Cyclotomic.zero(order), Cyclotomic.one(order))
        self._entries = tuple(
            (i, j, rows[i][j])
            for i in range(d) for j in range(d) if rows[i][j]
        )

    @staticmethod
    def standard_symplectic(n: int, order: int) -> "ConstantBivector":
        """Pi with {x_a, x_{n+a}} = 1 (positions first, momenta second)."""
        one = Cyclotomic.one(order)
        zero = Cyclotomic.zero(order)
        d = 2 * n
        m = [[zero] * d for _ in range(d)]
        for a in range(n):
            m[a][n + a] = one
            m[n + a][a] = -one
        return ConstantBivector(m, order, symplectic=True)

    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        """The Poisson bracket Pi(df, dg)."""
        out = Polynomial.zero(f.nvars, f.order)
        for i, j, v in self._entries:
            out = out + f.partial_derivative(i) * g.partial_derivative(j) * v
        return out


def _check_dims(f: Polynomial, pi: ConstantBivector):
    if f.nvars != pi.dimension:
        raise ValueError(
            f"polynomial in {f.nvars} variables against a "
            f"{pi.dimension}-dimensional bivector"
        )


def moyal_product(f: Polynomial, g: Polynomial, pi: ConstantBivector) -> Polynomial:
    """f * g = sum_m (ih/2)^m/m! Pi^{i1 j1}..Pi^{im jm} d_I f d_J g."""
    _check_dims(f, pi)
    _check_dims(g, pi)
    order = f.order
    i_unit = Cyclotomic.imaginary_unit(order)
    half_i_h = HbarSeries(order, {1: i_unit * Fraction(1, 2)})
    result = Polynomial.zero(f.nvars, order)
    # pairs is the m-fold application of the operator Pi^{ij} d_i (x) d_j
    pairs = [(f, g)]
    prefactor = HbarSeries.one(order)
    m = 0
    while pairs:
        for a, b in pairs:
            result = result + a * b * prefactor
        m += 1
        prefactor = prefactor * half_i_h * Fraction(1, m)
        nxt = []
        for a, b in pairs:
            for i, j, v in pi._entries:
                da = a.partial_derivative(i)
                if not da:
                    continue
                db = b.partial_derivative(j)
                if not db:
                    continue
                nxt.append((da * v, db))
        pairs = nxt
    return result


def star_commutator(f: Polynomial, g: Polynomial, pi: ConstantBivector) -> Polynomial:
    return moyal_product(f, g, pi) - moyal_product(g, f, pi)


def star_inv_sqrt(a: Polynomial, pi: ConstantBivector, k_max: int) -> Polynomial:
    """b with b * b * a = 1 modulo h^{k_max+1}, for a = 1 + O(h).

    Solved order by order from the ansatz b = 1 + sum_k h^k b_k.
    """
    _check_dims(a, pi)
    one = Polynomial.one(a.nvars, a.order)
    defect = a - one
    if defect and min(c.lowest_exponent() for c in defect.terms.values()) < 1:
        raise ValueError("star_inv_sqrt needs a = 1 + O(h)")
    b = one
    for k in range(1, k_max + 1):
        resid = moyal_product(moyal_product(b, b, pi), a, pi) - one
        correction = resid.hbar_coefficient(k)
        if correction:
            b = b - correction * HbarSeries.hbar(a.order, k) * Fraction(1, 2)
    return b


def verify_associativity(samples, pi: ConstantBivector) -> dict:
    """Exact check of (f*g)*h = f*(g*h) on each sample triple."""
    samples = list(samples)
    failures = []
    for idx, (f, g, h) in enumerate(samples):
        left = moyal_product(moyal_product(f, g, pi), h, pi)
        right = moyal_product(f, moyal_product(g, h, pi), pi)
        if left != right:
            failures.append(idx)
    return {"checked": len(samples), "failures": failures, "ok": not failures}
