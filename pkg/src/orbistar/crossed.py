"""Crossed products of the polynomial (or Moyal-deformed) algebra with a
finite matrix group, and the commutator-span machinery behind trace
classification.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .groups import MatrixGroup
from .linalg import Echelon
from .poly import Polynomial, linear_substitute
from .star import ConstantBivector, moyal_product


def group_action(group: MatrixGroup, gamma: int, f: Polynomial) -> Polynomial:
    """(gamma . f)(x) = f(gamma^{-1} x)."""
    inv = group.element(group.inverse(gamma))
    return linear_substitute(f, [list(row) for row in inv])


class CrossedElement:
    """A finitely supported sum  a = sum_gamma f_gamma delta_gamma."""

    __slots__ = ("group", "order", "components")

    def __init__(self, group: MatrixGroup, components: dict):
        self.group = group
        self.order = group.order
        clean = {}
        for gamma, poly in components.items():
            if poly.nvars != group.dimension:
                raise ValueError("component variable count does not match the group")
            if poly:
                clean[gamma] = poly
        self.components = clean

    @staticmethod
    def delta(group: MatrixGroup, gamma: int, poly: Polynomial = None) -> "CrossedElement":
        if poly is None:
            poly = Polynomial.one(group.dimension, group.order)
        return CrossedElement(group, {gamma: poly})

    @staticmethod
    def zero(group: MatrixGroup) -> "CrossedElement":
        return CrossedElement(group, {})

    def __add__(self, other):
        self._check(other)
        out = dict(self.components)
        for gamma, poly in other.components.items():
            cur = out.get(gamma)
            out[gamma] = poly if cur is None else cur + poly
        return CrossedElement(self.group, out)

    def __neg__(self):
        return CrossedElement(self.group,
                              {g: -p for g, p in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return CrossedElement(self.group,
                              {g: p * scalar for g, p in self.components.items()})

    __rmul__ = __mul__

    def _check(self, other):
        if self.group is not other.group:
            raise ValueError("crossed elements over different groups")

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        return (isinstance(other, CrossedElement)
                and self.group is other.group
                and self.components == other.components)

    def __repr__(self):
        if not self.components:
            return "0"
        return " + ".join(f"({p})*d[{g}]"
                          for g, p in sorted(self.components.items()))


def crossed_multiply(a: CrossedElement, b: CrossedElement,
                     pi: ConstantBivector = None) -> CrossedElement:
    """(f1 d_g1)(f2 d_g2) = (f1 * (g1 . f2)) d_{g1 g2}; pointwise product
    when pi is None, Moyal product otherwise."""
    a._check(b)
    group = a.group
    if pi is not None and pi.dimension != group.dimension:
        raise ValueError("bivector dimension does not match the group")
    out: dict = {}
    for g1, f1 in a.components.items():
        for g2, f2 in b.components.items():
            moved = group_action(group, g1, f2)
            prod = moyal_product(f1, moved, pi) if pi is not None else f1 * moved
            g = group.multiply(g1, g2)
            cur = out.get(g)
            out[g] = prod if cur is None else cur + prod
    return CrossedElement(group, out)


def crossed_commutator(a: CrossedElement, b: CrossedElement,
                       pi: ConstantBivector = None) -> CrossedElement:
    return crossed_multiply(a, b, pi) - crossed_multiply(b, a, pi)


def verify_crossed_associativity(samples, pi: ConstantBivector = None) -> dict:
    samples = list(samples)
    failures = []
    for idx, (a, b, c) in enumerate(samples):
        left = crossed_multiply(crossed_multiply(a, b, pi), c, pi)
        right = crossed_multiply(a, crossed_multiply(b, c, pi), pi)
        if left != right:
            failures.append(idx)
    return {"checked": len(samples), "failures": failures, "ok": not failures}


def _monomials_up_to(nvars: int, degree: int):
    for d in range(degree + 1):
        for picks in combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in picks:
                exps[i] += 1
            yield tuple(exps)


def _window_row(a: CrossedElement, degree_cap: int, hbar_cap: int):
    """Row over columns (exponent tuple, gamma) with h-series entries
    truncated at hbar_cap, or None if the element sticks out of the
    polynomial-degree window.

    Degree projection would be unsound here: a trace functional does not
    vanish on the high-degree tail of a commutator, so chopping that tail
    off would impose constraints no trace has to satisfy.  Truncating in
    h only discards information and can never manufacture a constraint.
    """
    row = {}
    for gamma, poly in a.components.items():
        for exps, coeff in poly.terms.items():
            if sum(exps) > degree_cap:
                return None
            c = coeff.truncate(hbar_cap)
            if c:
                row[(exps, gamma)] = c
    return row


def commutator_subspace_basis(group: MatrixGroup, pi: ConstantBivector,
                              degree_cap: int, hbar_cap: int):
    """Echelon basis of the span of crossed-product star-commutators,
    projected to {polynomial degree <= degree_cap, h-order <= hbar_cap}.

    Generators run over monomials up to degree degree_cap + 2*hbar_cap so
    that commutators reaching back into the window via h-corrections are
    not missed.  Returns (echelon, columns).
    """
    nvars = group.dimension
    order = group.order
    gen_cap = degree_cap + 2 * hbar_cap
    gens = []
    for exps in _monomials_up_to(nvars, gen_cap):
        for gamma in range(len(group)):
            gens.append((sum(exps), CrossedElement.delta(
                group, gamma, Polynomial.monomial(exps, 1, order))))
    ech = Echelon()
    for i in range(len(gens)):
        d1, a = gens[i]
        for j in range(i + 1, len(gens)):
            d2, b = gens[j]
            # a term at h^m has degree d1 + d2 - 2m; nothing survives the
            # projection unless the total degree fits the enlarged window
            if d1 + d2 > degree_cap + 2 * hbar_cap:
                continue
            comm = crossed_commutator(a, b, pi)
            row = _window_row(comm, degree_cap, hbar_cap)
            if row:
                ech.insert(row)
    columns = [(exps, gamma)
               for exps in _monomials_up_to(nvars, degree_cap)
               for gamma in range(len(group))]
    return ech, columns
