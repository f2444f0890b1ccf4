"""Finite matrix groups over a cyclotomic field: closure from generators,
conjugacy data, fixed-subspace decompositions and Molien-type graded
dimension counts for invariant polynomial multivector fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .linalg import invert_dense, kernel_basis, independent_subset, mat_mul, mat_vec
from .scalars import Cyclotomic

Matrix = tuple  # tuple of tuples of Cyclotomic


def _coerce_matrix(rows, order: int) -> Matrix:
    out = []
    for row in rows:
        out.append(tuple(
            v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(v, order)
            for v in row
        ))
    return tuple(out)


def _sort_key(m: Matrix):
    return tuple(tuple(entry.coeffs for entry in row) for row in m)


def identity_matrix(dim: int, order: int) -> Matrix:
    one = Cyclotomic.one(order)
    zero = Cyclotomic.zero(order)
    return tuple(tuple(one if i == j else zero for j in range(dim))
                 for i in range(dim))


def _mat_product(a: Matrix, b: Matrix, order: int) -> Matrix:
    zero = Cyclotomic.zero(order)
    return tuple(tuple(r) for r in mat_mul([list(r) for r in a],
                                           [list(r) for r in b], zero))


class GroupClosureError(ValueError):
    """Raised when generator closure exceeds the requested bound."""


class MatrixGroup:
    """A finite group of invertible matrices with its multiplication table."""

    def __init__(self, dimension: int, order: int, elements: list):
        self.dimension = dimension
        self.order = order
        self.elements = list(elements)
        self.index = {m: i for i, m in enumerate(self.elements)}
        self.identity = self.index[identity_matrix(dimension, order)]
        n = len(self.elements)
        self.table = [
            [self.index[_mat_product(self.elements[i], self.elements[j], order)]
             for j in range(n)]
            for i in range(n)
        ]
        self.inverses = [next(j for j in range(n) if self.table[i][j] == self.identity)
                         for i in range(n)]

    def __len__(self):
        return len(self.elements)

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inverse(self, i: int) -> int:
        return self.inverses[i]

    def element(self, i: int) -> Matrix:
        return self.elements[i]


def generate_group(generators, order: int, max_order: int = 1024) -> MatrixGroup:
    """Breadth-first closure of the generators (sorted frontier, so the
    element list is deterministic)."""
    if not generators:
        raise ValueError("need at least one generator (use the identity)")
    gens = [_coerce_matrix(g, order) for g in generators]
    dim = len(gens[0])
    for g in gens:
        if len(g) != dim or any(len(row) != dim for row in g):
            raise ValueError("generators must be square matrices of equal size")
        zero = Cyclotomic.zero(order)
        one = Cyclotomic.one(order)
        invert_dense([list(r) for r in g], zero, one)  # raises if singular
    seen = {identity_matrix(dim, order)}
    frontier = sorted(set(gens) - seen, key=_sort_key)
    seen.update(frontier)
    while frontier:
        nxt = set()
        for m in frontier:
            for g in gens:
                prod = _mat_product(m, g, order)
                if prod not in seen:
                    seen.add(prod)
                    nxt.add(prod)
                    if len(seen) > max_order:
                        raise GroupClosureError(
                            f"group closure exceeded {max_order} elements"
                        )
        frontier = sorted(nxt, key=_sort_key)
    return MatrixGroup(dim, order, sorted(seen, key=_sort_key))


@dataclass
class ConjClassData:
    representative: int
    members: tuple
    centralizer: tuple


def conjugacy_classes(group: MatrixGroup) -> list:
    n = len(group)
    unseen = set(range(n))
    classes = []
    for rep in range(n):
        if rep not in unseen:
            continue
        members = set()
        centralizer = []
        for h in range(n):
            conj = group.multiply(group.multiply(h, rep), group.inverse(h))
            members.add(conj)
            if conj == rep:
                centralizer.append(h)
        assert len(members) * len(centralizer) == n
        unseen -= members
        classes.append(ConjClassData(rep, tuple(sorted(members)),
                                     tuple(centralizer)))
    return classes


@dataclass
class FixedSpaceData:
    fixed_basis: list        # columns spanning V^gamma
    perp_basis: list         # columns spanning V_perp = im(gamma - 1)
    gamma_perp: list         # matrix of gamma on V_perp in the perp basis
    codimension: int

    @property
    def fixed_dim(self) -> int:
        return len(self.fixed_basis)


def fixed_subspace_decomposition(gamma: Matrix, order: int) -> FixedSpaceData:
    """V = ker(gamma - 1) (+) im(gamma - 1), with gamma's matrix on the
    second summand."""
    dim = len(gamma)
    zero = Cyclotomic.zero(order)
    one = Cyclotomic.one(order)
    delta = [[gamma[i][j] - (one if i == j else zero) for j in range(dim)]
             for i in range(dim)]
    rows = [{j: delta[i][j] for j in range(dim) if delta[i][j]}
            for i in range(dim)]
    fixed = [[vec.get(j, zero) for j in range(dim)]
             for vec in kernel_basis(rows, list(range(dim)), one)]
    cols = [{i: delta[i][j] for i in range(dim) if delta[i][j]}
            for j in range(dim)]
    perp = [[cols[j].get(i, zero) for i in range(dim)]
            for j in independent_subset(cols)]
    # coordinates of gamma * perp_j in the combined basis; the fixed-space
    # components must vanish since gamma preserves im(gamma - 1)
    basis_cols = fixed + perp
    basis_mat = [[basis_cols[j][i] for j in range(dim)] for i in range(dim)]
    basis_inv = invert_dense(basis_mat, zero, one)
    l_fix = len(fixed)
    gperp = []
    for v in perp:
        image = mat_vec([list(r) for r in gamma], v, zero)
        coords = mat_vec(basis_inv, image, zero)
        assert not any(coords[:l_fix]), "gamma does not preserve im(gamma-1)"
        gperp.append(coords[l_fix:])
    gamma_perp = [[gperp[j][i] for j in range(len(perp))]
                  for i in range(len(perp))]
    data = FixedSpaceData(fixed, perp, gamma_perp, dim - l_fix)
    ell = data.codimension
    if ell:
        check = [[gamma_perp[i][j] - (one if i == j else zero)
                  for j in range(ell)] for i in range(ell)]
        if not _det(check, zero):
            raise ValueError("1 - gamma_perp is singular on im(gamma - 1)")
    return data


def _det(matrix: list, zero):
    n = len(matrix)
    if n == 0:
        return zero + 1
    if n == 1:
        return matrix[0][0]
    total = zero
    for j in range(n):
        if not matrix[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * _det(minor, zero)
        total = total + (term if j % 2 == 0 else -term)
    return total


def restrict_to_subspace(h: Matrix, basis: list, full_basis: list, order: int) -> list:
    """Matrix of h on the span of ``basis``, given a completion to a full
    basis; fails if h does not preserve the span."""
    dim = len(h)
    zero = Cyclotomic.zero(order)
    one = Cyclotomic.one(order)
    basis_mat = [[full_basis[j][i] for j in range(dim)] for i in range(dim)]
    basis_inv = invert_dense(basis_mat, zero, one)
    l = len(basis)
    cols = []
    for v in basis:
        coords = mat_vec(basis_inv, mat_vec([list(r) for r in h], v, zero), zero)
        if any(coords[l:]):
            raise ValueError("subspace is not preserved")
        cols.append(coords[:l])
    return [[cols[j][i] for j in range(l)] for i in range(l)]


def trace_sym_power(m: list, d: int, order: int):
    """Trace of the induced action on degree-d polynomials in len(m) vars."""
    l = len(m)
    if l == 0:
        return Cyclotomic.one(order) if d == 0 else Cyclotomic.zero(order)
    from .poly import Polynomial
    total = Cyclotomic.zero(order)
    images = [sum((Polynomial.variable(j, l, order) * m[i][j]
                   for j in range(l) if m[i][j]),
                  Polynomial.zero(l, order))
              for i in range(l)]
    for exps in _compositions(d, l):
        mono = Polynomial.one(l, order)
        for i, e in enumerate(exps):
            for _ in range(e):
                mono = mono * images[i]
        coeff = mono.terms.get(exps)
        if coeff:
            total = total + coeff.coefficient(0)
    return total


def trace_wedge_power(m: list, q: int, order: int):
    """Trace of the induced action on Lambda^q: sum of principal q-minors."""
    zero = Cyclotomic.zero(order)
    if q == 0:
        return Cyclotomic.one(order)
    total = zero
    for idx in combinations(range(len(m)), q):
        minor = [[m[i][j] for j in idx] for i in idx]
        total = total + _det(minor, zero)
    return total


def _compositions(d: int, l: int):
    if l == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in _compositions(d - first, l - 1):
            yield (first,) + rest


def molien_dims(group: MatrixGroup, subgroup: list, fixed: FixedSpaceData,
                q: int, d: int) -> int:
    """Dimension of the degree-d part of (Poly(V^gamma) (x) Lambda^q T V^gamma)
    invariant under the listed subgroup elements, by character averaging.

    Functions transform by h.f = f o h^{-1} and vector fields push forward,
    so each term pairs tr Sym^d(h^{-1}|_{V^gamma}) with tr Lambda^q(h|_{V^gamma}).
    """
    order = group.order
    full_basis = fixed.fixed_basis + fixed.perp_basis
    total = Cyclotomic.zero(order)
    for h in subgroup:
        hm = group.element(h)
        hr = restrict_to_subspace(hm, fixed.fixed_basis, full_basis, order)
        hr_inv = restrict_to_subspace(group.element(group.inverse(h)),
                                      fixed.fixed_basis, full_basis, order)
        total = total + (trace_sym_power(hr_inv, d, order)
                         * trace_wedge_power(hr, q, order))
    avg = total * Fraction(1, len(subgroup))
    value = avg.rational_part()
    if value.denominator != 1:
        raise ValueError(f"non-integer Molien average {value}")
    return int(value)
