"""Brylinski's Poisson boundary on polynomial differential forms, the
HKR (anti)symmetrization maps, and the noncommutative Poisson boundary
d_Pi on symbolic polynomial chains, with the compatibility check that
fits the constant relating the two pictures.

The printed coordinate formula for the Poisson boundary maps a k-form to
mixed degrees (its first sum carries an extra exterior derivative), so the
boundary is implemented as the commutator delta = i_Pi d - d i_Pi, which is
validated here by delta^2 = 0, d delta + delta d = 0, and the fitted
compatibility constant.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import DiffForm, Polynomial, de_rham_d
from .star import ConstantBivector


class SymbolicChain:
    """A formal sum of tensors f_0 (x) ... (x) f_k of polynomials."""

    __slots__ = ("nvars", "order", "degree", "summands")

    def __init__(self, nvars: int, order: int, degree: int, summands: list):
        self.nvars = nvars
        self.order = order
        self.degree = degree
        clean = []
        for factors in summands:
            factors = tuple(factors)
            if len(factors) != degree + 1:
                raise ValueError("tensor rank does not match the degree")
            for f in factors:
                if f.nvars != nvars:
                    raise ValueError("mixed variable counts in a chain")
            if all(factors):
                clean.append(factors)
        self.summands = clean

    def __add__(self, other):
        if self.degree != other.degree or self.nvars != other.nvars:
            raise ValueError("incompatible chains")
        return SymbolicChain(self.nvars, self.order, self.degree,
                             self.summands + other.summands)

    def __neg__(self):
        return SymbolicChain(self.nvars, self.order, self.degree,
                             [(-fs[0],) + fs[1:] for fs in self.summands])

    def __bool__(self):
        return bool(self.summands)


def symbolic_b(c: SymbolicChain) -> SymbolicChain:
    """Hochschild boundary with pointwise products (commutative algebra)."""
    k = c.degree
    out = []
    for fs in c.summands:
        for i in range(k):
            merged = fs[:i] + (fs[i] * fs[i + 1],) + fs[i + 2:]
            if i % 2:
                merged = (-merged[0],) + merged[1:]
            out.append(merged)
        wrap = (fs[k] * fs[0],) + fs[1:k]
        if k % 2:
            wrap = (-wrap[0],) + wrap[1:]
        out.append(wrap)
    return SymbolicChain(c.nvars, c.order, k - 1, out)


def symbolic_d_pi(c: SymbolicChain, pi: ConstantBivector) -> SymbolicChain:
    """d_Pi = sum_i (-1)^i d^i_Pi, replacing neighbouring factors by
    Pi(f_i, f_{i+1}); the wrap term inserts Pi(f_k, f_0) in front."""
    k = c.degree
    if k < 1:
        raise ValueError("d_Pi needs degree >= 1")
    out = []
    for fs in c.summands:
        for i in range(k):
            br = pi.bracket(fs[i], fs[i + 1])
            if not br:
                continue
            merged = fs[:i] + (br,) + fs[i + 2:]
            if i % 2:
                merged = (-merged[0],) + merged[1:]
            out.append(merged)
        br = pi.bracket(fs[k], fs[0])
        if br:
            wrap = (br,) + fs[1:k]
            if k % 2:
                wrap = (-wrap[0],) + wrap[1:]
            out.append(wrap)
    return SymbolicChain(c.nvars, c.order, k - 1, out)


def interior_bivector(omega: DiffForm, pi: ConstantBivector) -> DiffForm:
    """i_Pi: contraction with the bivector, sum over entries i < j."""
    out = DiffForm.zero(omega.nvars, omega.order, max(omega.degree - 2, 0))
    if omega.degree < 2:
        return out
    for i, j, value in pi._entries:
        if i >= j:
            continue
        piece = omega.contract_index(i).contract_index(j)
        if piece:
            out = out + piece * value
    return out


def brylinski_delta(omega: DiffForm, pi: ConstantBivector) -> DiffForm:
    """delta = i_Pi d - d i_Pi; degree drops by one; delta^2 = 0."""
    if omega.degree == 0:
        return DiffForm.zero(omega.nvars, omega.order, 0)
    first = interior_bivector(de_rham_d(omega), pi)
    second = de_rham_d(interior_bivector(omega, pi)) if omega.degree >= 2 \
        else DiffForm.zero(omega.nvars, omega.order, omega.degree - 1)
    return first - second


def _permutations_signed(k: int):
    def go(rest):
        if not rest:
            yield (), 1
            return
        for pos, x in enumerate(rest):
            for tail, sign in go(rest[:pos] + rest[pos + 1:]):
                yield (x,) + tail, sign * (1 if pos % 2 == 0 else -1)
    yield from go(tuple(range(k)))


def epsilon_k(omega: DiffForm) -> SymbolicChain:
    """HKR antisymmetrization: f_0 df_1 ^ ... ^ df_k maps to the signed sum
    over S_k of f_0 (x) f_{s(1)} (x) ... (x) f_{s(k)}."""
    k = omega.degree
    nvars, order = omega.nvars, omega.order
    coords = [Polynomial.variable(i, nvars, order) for i in range(nvars)]
    out = []
    for idx, coeff in omega.components.items():
        for perm, sign in _permutations_signed(k):
            head = coeff if sign > 0 else -coeff
            out.append((head,) + tuple(coords[idx[p]] for p in perm))
    return SymbolicChain(nvars, order, k, out)


def pi_k(c: SymbolicChain) -> DiffForm:
    """HKR projection: f_0 (x) f_1 (x) ... (x) f_k maps to f_0 df_1 ^ ... ^ df_k."""
    k = c.degree
    out = DiffForm.zero(c.nvars, c.order, k)
    for fs in c.summands:
        form = DiffForm.from_polynomial(fs[0])
        for f in fs[1:]:
            form = form.wedge(de_rham_d(DiffForm.from_polynomial(f)))
        out = out + form
    return out


def fit_constant(pairs):
    """The unique c with lhs = c * rhs across all (lhs, rhs) pairs of forms,
    or None if no such constant exists.  Pairs with rhs = lhs = 0 impose no
    constraint; a surviving lhs over a vanishing rhs is inconsistent."""
    constant = None
    for lhs, rhs in pairs:
        if not rhs:
            if lhs:
                return None
            continue
        for idx, rpoly in rhs.components.items():
            lpoly = lhs.components.get(idx)
            if lpoly is None:
                return None
            for exps, rcoeff in rpoly.terms.items():
                lcoeff = lpoly.terms.get(exps)
                if lcoeff is None:
                    return None
                # exact scalar ratio of the two h-series coefficients
                ratio = lcoeff * rcoeff.inverse()
                if constant is None:
                    constant = ratio
                elif constant != ratio:
                    return None
        # every lhs entry must be matched by an rhs entry
        for idx, lpoly in lhs.components.items():
            rpoly = rhs.components.get(idx)
            if rpoly is None or set(lpoly.terms) != set(rpoly.terms):
                return None
    return constant


def verify_brylinski_compat(pi: ConstantBivector, samples, k: int) -> dict:
    """Fit the constant c with pi_{k-1}(d_Pi(eps_k(omega))) = c * delta(omega)
    across the samples; the expected value is 2 (k-1)!."""
    samples = list(samples)
    pairs = []
    for omega in samples:
        if omega.degree != k:
            raise ValueError("sample degree does not match k")
        lhs = pi_k(symbolic_d_pi(epsilon_k(omega), pi))
        rhs = brylinski_delta(omega, pi)
        pairs.append((lhs, rhs))
    constant = fit_constant(pairs)
    expected = Fraction(2)
    for i in range(1, k):
        expected *= i
    constrained = sum(1 for _, rhs in pairs if rhs)
    matches = False
    if constant is not None:
        from .scalars import HbarSeries
        matches = constant == HbarSeries.from_rational(expected, pi.order)
    return {
        "checked": len(samples),
        "constrained": constrained,
        "constant": constant,
        "expected": expected,
        "matches_expected": matches,
        "ok": constant is not None and constrained > 0,
    }
