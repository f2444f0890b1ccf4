"""Dual Koszul complexes for a finite-order matrix gamma: polynomial
multivector fields with differential (kappa wedge -), where kappa is the
displacement vector field of gamma in coordinates adapted to the fixed
subspace.  The differential raises polynomial and exterior degree by one,
so cohomology is computed exactly on finite slices of constant
(polynomial degree - exterior degree), and compared against the predicted
multivector fields on the fixed subspace, optionally centralizer-invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .crossed import _monomials_up_to
from .groups import (FixedSpaceData, MatrixGroup, conjugacy_classes,
                     fixed_subspace_decomposition, molien_dims)
from .linalg import Echelon, invert_dense
from .poly import MultiVector, Polynomial
from .scalars import Cyclotomic


@dataclass
class KoszulComplexSpec:
    """kappa in eigen-adapted coordinates: zero on the fixed block, the
    linear field (gamma_perp^{-1} - 1) x on the perpendicular block."""
    dimension: int
    order: int
    fixed: FixedSpaceData
    kappa: MultiVector  # degree-1 multivector with linear components

    @property
    def fixed_dim(self) -> int:
        return self.fixed.fixed_dim


def koszul_field(gamma, order: int) -> KoszulComplexSpec:
    """Displacement field with components (gamma^{-1}-substituted coordinate
    minus the coordinate), in the adapted basis V^gamma (+) V_perp."""
    fixed = fixed_subspace_decomposition(gamma, order)
    n = len(gamma)
    l = fixed.fixed_dim
    zero = Cyclotomic.zero(order)
    one = Cyclotomic.one(order)
    components = {}
    if fixed.codimension:
        gperp_inv = invert_dense([list(r) for r in fixed.gamma_perp],
                                 zero, one)
        for a in range(fixed.codimension):
            poly = Polynomial.zero(n, order)
            for b in range(fixed.codimension):
                coeff = gperp_inv[a][b] - (one if a == b else zero)
                if coeff:
                    poly = poly + Polynomial.variable(l + b, n, order) * coeff
            if poly:
                components[(l + a,)] = poly
    return KoszulComplexSpec(n, order, fixed,
                             MultiVector(n, order, 1, components))


def _slice_basis(n: int, q: int, polydeg: int):
    """Basis of Poly_polydeg (x) Lambda^q in n variables."""
    if polydeg < 0 or q < 0 or q > n:
        return []
    monos = [e for e in _monomials_up_to(n, polydeg) if sum(e) == polydeg]
    return [(exps, idx) for exps in monos
            for idx in combinations(range(n), q)]


def _differential_rows(spec: KoszulComplexSpec, q: int, polydeg: int):
    """Rows of kappa ^ - : Poly_polydeg (x) Lambda^q -> the next bidegree."""
    n, order = spec.dimension, spec.order
    rows = []
    for exps, idx in _slice_basis(n, q, polydeg):
        source = MultiVector(n, order, q,
                             {idx: Polynomial.monomial(exps, 1, order)})
        image = spec.kappa.wedge(source)
        row = {}
        for out_idx, poly in image.components.items():
            for out_exps, coeff in poly.terms.items():
                row[(out_exps, out_idx)] = coeff
        if row:
            rows.append(row)
    return rows


def _slice_rank(spec: KoszulComplexSpec, q: int, polydeg: int) -> int:
    ech = Echelon()
    for row in _differential_rows(spec, q, polydeg):
        ech.insert(row)
    return ech.rank


def cohomology_dims(spec: KoszulComplexSpec, k_max: int,
                    slice_range) -> dict:
    """dim H^k per slice s = polynomial degree - exterior degree, for
    0 <= k <= k_max and s in slice_range; exact rank-nullity per slice."""
    n = spec.dimension
    table = {}
    for s in slice_range:
        ranks = {}
        for q in range(k_max + 2):
            ranks[q] = _slice_rank(spec, q, s + q)
        dims = []
        for k in range(k_max + 1):
            chain_dim = len(_slice_basis(n, k, s + k))
            incoming = ranks[k - 1] if k >= 1 else 0
            dims.append(chain_dim - ranks[k] - incoming)
        table[s] = dims
    return table


def predicted_dims(spec: KoszulComplexSpec, k: int, s: int) -> int:
    """Graded dimension of Poly(V^gamma) (x) Lambda^{k - codim} T V^gamma in
    the slice s (its representatives have polynomial degree s + k)."""
    l = spec.fixed_dim
    q = k - spec.fixed.codimension
    d = s + k
    if q < 0 or q > l or d < 0:
        return 0
    poly_dim = comb(d + l - 1, l - 1) if l else (1 if d == 0 else 0)
    return poly_dim * comb(l, q)


def invariant_predicted_dims(group: MatrixGroup, class_rep: int, k: int,
                             s: int, centralizer=None) -> int:
    """Centralizer-invariant version of predicted_dims for a conjugacy
    class representative inside a finite matrix group."""
    gamma = group.element(class_rep)
    fixed = fixed_subspace_decomposition(gamma, group.order)
    q = k - fixed.codimension
    d = s + k
    if q < 0 or q > fixed.fixed_dim or d < 0:
        return 0
    if centralizer is None:
        centralizer = next(c.centralizer for c in conjugacy_classes(group)
                           if class_rep in c.members)
    return molien_dims(group, list(centralizer), fixed, q, d)


def compare(gamma, order: int, k_max: int, slice_range) -> dict:
    """Slice-by-slice comparison of computed and predicted cohomology."""
    spec = koszul_field(gamma, order)
    computed = cohomology_dims(spec, k_max, slice_range)
    predicted = {s: [predicted_dims(spec, k, s) for k in range(k_max + 1)]
                 for s in computed}
    mismatches = [(s, k) for s in computed for k in range(k_max + 1)
                  if computed[s][k] != predicted[s][k]]
    return {"computed": computed, "predicted": predicted,
            "mismatches": mismatches, "ok": not mismatches}


def convolution_cohomology_report(group: MatrixGroup, k_max: int,
                                  slice_range) -> dict:
    """Per-conjugacy-class invariant predictions and their sum: the graded
    shape of the Hochschild cohomology of the crossed product."""
    classes = conjugacy_classes(group)
    per_class = {}
    totals = {s: [0] * (k_max + 1) for s in slice_range}
    for cls in classes:
        tab = {}
        for s in slice_range:
            tab[s] = [invariant_predicted_dims(group, cls.representative, k, s,
                                               cls.centralizer)
                      for k in range(k_max + 1)]
            for k in range(k_max + 1):
                totals[s][k] += tab[s][k]
        per_class[cls.representative] = tab
    return {"per_class": per_class, "total": totals}
