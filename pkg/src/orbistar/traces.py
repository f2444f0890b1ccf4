"""Twisted trace functionals on the Moyal model of a finite symplectic
group action, trace assembly over conjugacy classes, axiom verification,
and brute-force classification of the trace space.

For a group element gamma with no nonzero fixed vectors the twisted
trace is the purely algebraic functional

    tau_gamma(f) = det(1 - gamma_perp^{-1})^{-1}
                   [exp(hbar sum_a M_a d_{z_a} d_{zbar_a}) f]|_{z=0},

computed in a complex eigenframe of the perpendicular action.  The frame
convention (which eigenvalue of each pair counts as holomorphic, and the
symplectic pairing normalization <z, zbar> = -2i, i.e. [z, zbar] = 2 hbar)
is pinned by requiring the twisted trace axiom to hold for the order-4
rotation; the order-2 case has M = 0 and is convention-independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .crossed import CrossedElement, commutator_subspace_basis, group_action
from .groups import FixedSpaceData, MatrixGroup, conjugacy_classes, \
    fixed_subspace_decomposition
from .linalg import invert_dense, kernel_basis, mat_vec
from .poly import Polynomial, linear_substitute
from .scalars import Cyclotomic, HbarSeries
from .star import ConstantBivector, moyal_product


def _row_pi_col(c, pi_rows, d, zero):
    """c . Pi . d^T for row vectors c, d."""
    total = zero
    for i, ci in enumerate(c):
        if not ci:
            continue
        for j, dj in enumerate(d):
            if dj and pi_rows[i][j]:
                total = total + ci * pi_rows[i][j] * dj
    return total


@dataclass
class TwistedTraceSpec:
    gamma: int
    group: MatrixGroup
    fixed: FixedSpaceData
    frame: list            # rows: l fixed coordinates, m holomorphic, m conjugate
    frame_inv: list
    eigenvalues: list      # holomorphic eigenvalue mu_a per pair
    det_norm: Cyclotomic   # prod_a (1 - mu_a^{-1})
    m_factors: list        # M_a = (1 + mu_a^{-1}) / (1 - mu_a^{-1})

    @property
    def fixed_dim(self) -> int:
        return self.fixed.fixed_dim

    @property
    def pair_count(self) -> int:
        return len(self.eigenvalues)

    def to_frame(self, f: Polynomial) -> Polynomial:
        """Rewrite f in the frame coordinates (y_1..y_l, z_1..z_m, zbar_1..zbar_m)."""
        return linear_substitute(f, self.frame_inv)


def build_trace_spec(group: MatrixGroup, gamma: int,
                     pi: ConstantBivector) -> TwistedTraceSpec:
    order = group.order
    dim = group.dimension
    zero = Cyclotomic.zero(order)
    one = Cyclotomic.one(order)
    i_unit = Cyclotomic.imaginary_unit(order)
    gm = group.element(gamma)
    fixed = fixed_subspace_decomposition(gm, order)
    gm_inv = group.element(group.inverse(gamma))
    pi_rows = [list(r) for r in pi.matrix]

    # left eigenvectors of gamma^{-1}: rows c with c gamma^{-1} = mu c,
    # i.e. c in the kernel of (gamma^{-1})^T - mu
    def left_eigenvectors(mu: Cyclotomic) -> list:
        rows = []
        for i in range(dim):
            row = {}
            for j in range(dim):
                entry = gm_inv[j][i] - (mu if i == j else zero)
                if entry:
                    row[j] = entry
            rows.append(row)
        return [[vec.get(j, zero) for j in range(dim)]
                for vec in kernel_basis(rows, list(range(dim)), one)]

    half = order // 2 if order % 2 == 0 else None
    pairs = []  # (mu_holomorphic, c_row, d_row)
    for k in range(1, order // 2 + 1):
        mu = Cyclotomic.root_of_unity(k, order)
        holo = left_eigenvectors(mu)
        if not holo:
            continue
        if half is not None and k == half:
            # mu = -1 is self-inverse: pair vectors inside one eigenspace
            vecs = list(holo)
            while vecs:
                c = vecs.pop(0)
                partner = None
                for t, d in enumerate(vecs):
                    if _row_pi_col(c, pi_rows, d, zero):
                        partner = vecs.pop(t)
                        break
                if partner is None:
                    raise ValueError(
                        "degenerate symplectic pairing on the -1 eigenspace")
                s = _row_pi_col(c, pi_rows, partner, zero)
                d = [v * ((-2) * i_unit / s) for v in partner]
                s = _row_pi_col(c, pi_rows, d, zero)
                reduced = []
                for v in vecs:
                    vd = _row_pi_col(v, pi_rows, d, zero) / s
                    cv = _row_pi_col(c, pi_rows, v, zero) / s
                    reduced.append([vv - vd * cc - cv * dd
                                    for vv, cc, dd in zip(v, c, d)])
                vecs = [v for v in reduced if any(v)]
                pairs.append((mu, c, d))
        else:
            anti = left_eigenvectors(mu.inverse())
            if len(anti) != len(holo):
                raise ValueError(
                    f"eigenvalue multiplicities of mu and mu^-1 differ for k={k}")
            holo = list(holo)
            anti = list(anti)
            while holo:
                c = holo.pop(0)
                partner = None
                for t, d in enumerate(anti):
                    if _row_pi_col(c, pi_rows, d, zero):
                        partner = anti.pop(t)
                        break
                if partner is None:
                    raise ValueError(
                        "symplectic pairing is degenerate between the mu "
                        "and mu^-1 eigenspaces")
                s = _row_pi_col(c, pi_rows, partner, zero)
                d = [v * ((-2) * i_unit / s) for v in partner]
                s = _row_pi_col(c, pi_rows, d, zero)
                holo = [[vv - (_row_pi_col(v, pi_rows, d, zero) / s) * cc
                         for vv, cc in zip(v, c)] for v in holo]
                holo = [v for v in holo if any(v)]
                anti = [[vv - (_row_pi_col(c, pi_rows, v, zero) / s) * dd
                         for vv, dd in zip(v, d)] for v in anti]
                anti = [v for v in anti if any(v)]
                pairs.append((mu, c, d))

    if 2 * len(pairs) != fixed.codimension:
        raise ValueError(
            "perpendicular space is not diagonalizable into symplectic "
            f"eigenpairs over this cyclotomic field (got {len(pairs)} pairs "
            f"for codimension {fixed.codimension})")

    # frame rows: duals of the fixed basis first, then z rows, then zbar rows
    l = fixed.fixed_dim
    basis_cols = fixed.fixed_basis + fixed.perp_basis
    basis_mat = [[basis_cols[j][i] for j in range(dim)] for i in range(dim)]
    dual = invert_dense(basis_mat, zero, one)
    frame = [list(dual[i]) for i in range(l)]
    frame += [list(c) for _, c, _ in pairs]
    frame += [list(d) for _, _, d in pairs]
    frame_inv = invert_dense([list(r) for r in frame], zero, one)

    det_norm = one
    m_factors = []
    eigenvalues = []
    for mu, _, _ in pairs:
        mu_inv = mu.inverse()
        det_norm = det_norm * (one - mu_inv)
        m_factors.append((one + mu_inv) / (one - mu_inv))
        eigenvalues.append(mu)
    return TwistedTraceSpec(gamma, group, fixed, frame, frame_inv,
                            eigenvalues, det_norm, m_factors)


def frame_bivector(spec: TwistedTraceSpec, pi: ConstantBivector) -> ConstantBivector:
    """Pi expressed in the frame coordinates: (T Pi T^T)_{ab}."""
    order = spec.group.order
    zero = Cyclotomic.zero(order)
    dim = spec.group.dimension
    pi_rows = [list(r) for r in pi.matrix]
    rows = [[_row_pi_col(spec.frame[a], pi_rows, spec.frame[b], zero)
             for b in range(dim)] for a in range(dim)]
    return ConstantBivector(rows, order, symplectic=pi.symplectic)


def partial_weyl_trace(f: Polynomial, spec: TwistedTraceSpec) -> Polynomial:
    """The algebraic fiber part of the twisted trace: f must already be
    written in the spec's frame coordinates.  Returns a polynomial in the
    fixed-space variables (indices 0..l-1)."""
    order = spec.group.order
    l = spec.fixed_dim
    m = spec.pair_count
    current = f
    total = f
    k = 1
    while current:
        nxt = Polynomial.zero(f.nvars, order)
        for a in range(m):
            if not spec.m_factors[a]:
                continue
            piece = current.partial_derivative(l + a).partial_derivative(l + m + a)
            if piece:
                nxt = nxt + piece * spec.m_factors[a]
        if not nxt:
            break
        current = nxt * Fraction(1, k)
        total = total + current * HbarSeries.hbar(order, k)
        k += 1
    restricted = total.set_vars_zero(range(l, f.nvars))
    return restricted * HbarSeries.from_cyclotomic(spec.det_norm.inverse())


def full_twisted_trace(f: Polynomial, spec: TwistedTraceSpec) -> HbarSeries:
    """Scalar twisted trace; only defined when the fixed-point space is 0.

    f is given in the original coordinates.
    """
    if spec.fixed_dim > 0:
        raise ValueError(
            "full twisted trace needs dim V^gamma = 0; the integral over a "
            "positive-dimensional fixed space requires a compact-support "
            "model, out of scope here")
    return partial_weyl_trace(spec.to_frame(f), spec).constant_term()


def ambient_partial_trace(f: Polynomial, spec: TwistedTraceSpec) -> Polynomial:
    """The partial twisted trace of f, pulled back to a polynomial in the
    original ambient coordinates (constant along V_perp).  This composite
    does not depend on the frame choice, so traces of conjugate elements
    can be compared directly."""
    restricted = partial_weyl_trace(spec.to_frame(f), spec)
    return linear_substitute(restricted, spec.frame)


def verify_twisted_trace_axioms(group: MatrixGroup, pi: ConstantBivector,
                                specs: dict, sample_pairs) -> dict:
    """Check tau_gamma(f * f') = tau_gamma(f' * (gamma.f)) for every spec
    with fixed_dim 0, and the conjugation axiom
    tau_{g'}(f) = tau_{g g' g^-1}(g.f) across the given specs."""
    sample_pairs = list(sample_pairs)
    failures = []
    for gamma, spec in specs.items():
        if spec.fixed_dim:
            continue
        for f, fp in sample_pairs:
            lhs = full_twisted_trace(moyal_product(f, fp, pi), spec)
            rhs = full_twisted_trace(
                moyal_product(fp, group_action(group, gamma, f), pi), spec)
            if lhs != rhs:
                failures.append(("average-invariance", gamma, f, fp))
    for gamma_p, spec_p in specs.items():
        for g in range(len(group)):
            conj = group.multiply(group.multiply(g, gamma_p), group.inverse(g))
            spec_c = specs.get(conj)
            if spec_c is None:
                continue
            for f, _ in sample_pairs:
                # compare the partial traces as functions on the ambient
                # space: tau_{g gamma g^-1}(g.f) must be the g-translate of
                # tau_gamma(f) under the identification V^conj = g V^gamma
                lhs = ambient_partial_trace(f, spec_p)
                rhs = ambient_partial_trace(group_action(group, g, f), spec_c)
                if rhs != group_action(group, g, lhs):
                    failures.append(("conjugation-invariance", gamma_p, g, f))
    return {"checked_pairs": len(sample_pairs), "failures": failures,
            "ok": not failures}


@dataclass
class TraceWeights:
    """A weight per conjugacy class, keyed by class representative index."""
    group: MatrixGroup
    weights: dict = field(default_factory=dict)

    def weight_of(self, gamma: int) -> HbarSeries:
        rep = self._class_rep(gamma)
        w = self.weights.get(rep)
        if w is None:
            return HbarSeries.zero(self.group.order)
        if isinstance(w, (int, Fraction)):
            w = HbarSeries.from_rational(w, self.group.order)
        elif isinstance(w, Cyclotomic):
            w = HbarSeries.from_cyclotomic(w)
        return w

    def _class_rep(self, gamma: int) -> int:
        for cls in conjugacy_classes(self.group):
            if gamma in cls.members:
                return cls.representative
        raise KeyError(gamma)


def assemble_trace(a: CrossedElement, weights: TraceWeights,
                   pi: ConstantBivector, specs: dict = None) -> HbarSeries:
    """tr(a) = sum_gamma kappa_<gamma> tau_gamma(f_gamma)."""
    group = a.group
    if specs is None:
        specs = {}
    total = HbarSeries.zero(group.order)
    for gamma, f in a.components.items():
        w = weights.weight_of(gamma)
        if not w:
            continue
        spec = specs.get(gamma)
        if spec is None:
            spec = build_trace_spec(group, gamma, pi)
            specs[gamma] = spec
        if spec.fixed_dim > 0:
            raise ValueError(
                f"class of element {gamma} has a {spec.fixed_dim}-dimensional "
                "fixed space: not traceable in the polynomial model")
        total = total + w * full_twisted_trace(f, spec)
    return total


def trace_space_dimension(group: MatrixGroup, pi: ConstantBivector,
                          degree_cap: int, hbar_cap: int) -> dict:
    """Classify traces of the truncated crossed product by elimination.

    The dimension is the codimension of the star-commutator span in the
    window {poly degree <= D, h-order <= K}, accepted only if it agrees
    with the window (D+2, K+2).  The report also carries the two analytic
    reference counts: the number of classes with trivial fixed space
    (polynomial model) and the total class count (the compact-support
    prediction, where every sector supports a trace).
    """
    windows = {}
    for d_cap, k_cap in ((degree_cap, hbar_cap),
                         (degree_cap + 2, hbar_cap + 2)):
        ech, cols = commutator_subspace_basis(group, pi, d_cap, k_cap)
        windows[(d_cap, k_cap)] = len(cols) - ech.rank
    values = set(windows.values())
    stable = len(values) == 1
    classes = conjugacy_classes(group)
    admissible = 0
    for cls in classes:
        fd = fixed_subspace_decomposition(group.element(cls.representative),
                                          group.order)
        if fd.fixed_dim == 0:
            admissible += 1
    return {
        "dimension": windows[(degree_cap, hbar_cap)] if stable else None,
        "stable": stable,
        "windows": {f"D={d},K={k}": v for (d, k), v in windows.items()},
        "admissible_classes": admissible,
        "compact_support_prediction": len(classes),
    }
