"""Sparse multivariate polynomials with h-series coefficients, linear
substitutions, and polynomial differential forms / multivector fields.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Union

from .scalars import Cyclotomic, HbarSeries

Exponents = tuple


def _coerce_scalar(value, order: int) -> HbarSeries:
    if isinstance(value, HbarSeries):
        return value
    if isinstance(value, Cyclotomic):
        return HbarSeries.from_cyclotomic(value)
    if isinstance(value, (int, Fraction)):
        return HbarSeries.from_rational(value, order)
    raise TypeError(f"cannot use {value!r} as a coefficient")


class Polynomial:
    """A polynomial in x0..x{n-1} with HbarSeries coefficients."""

    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars: int, order: int, terms: dict):
        self.nvars = nvars
        self.order = order
        clean = {}
        for exps, coeff in terms.items():
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} has wrong length")
            coeff = _coerce_scalar(coeff, order)
            if coeff:
                clean[tuple(exps)] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars: int, order: int) -> "Polynomial":
        return Polynomial(nvars, order, {})

    @staticmethod
    def constant(value, nvars: int, order: int) -> "Polynomial":
        return Polynomial(nvars, order, {(0,) * nvars: _coerce_scalar(value, order)})

    @staticmethod
    def one(nvars: int, order: int) -> "Polynomial":
        return Polynomial.constant(1, nvars, order)

    @staticmethod
    def variable(i: int, nvars: int, order: int) -> "Polynomial":
        exps = tuple(1 if j == i else 0 for j in range(nvars))
        return Polynomial(nvars, order, {exps: HbarSeries.one(order)})

    @staticmethod
    def monomial(exps: Iterable[int], coeff, order: int) -> "Polynomial":
        exps = tuple(exps)
        return Polynomial(len(exps), order, {exps: coeff})

    # -- queries -------------------------------------------------------

    def degree(self) -> int:
        """Total polynomial degree (h does not count); -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def hbar_coefficient(self, k: int) -> "Polynomial":
        """The polynomial coefficient of h^k."""
        out = {}
        for exps, coeff in self.terms.items():
            c = coeff.coeffs.get(k)
            if c:
                out[exps] = HbarSeries.from_cyclotomic(c)
        return Polynomial(self.nvars, self.order, out)

    def truncation(self):
        return min((c.trunc for c in self.terms.values()), default=math.inf)

    def truncate(self, k) -> "Polynomial":
        return Polynomial(
            self.nvars, self.order,
            {e: c.truncate(k) for e, c in self.terms.items()},
        )

    def constant_term(self) -> HbarSeries:
        return self.terms.get((0,) * self.nvars, HbarSeries.zero(self.order))

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError(
                    f"variable count mismatch: {self.nvars} vs {other.nvars}"
                )
            return other
        return Polynomial.constant(other, self.nvars, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for exps, coeff in other.terms.items():
            cur = out.get(exps)
            out[exps] = coeff if cur is None else cur + coeff
        return Polynomial(self.nvars, self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, self.order,
                          {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic, HbarSeries)):
            s = _coerce_scalar(other, self.order)
            return Polynomial(self.nvars, self.order,
                              {e: c * s for e, c in self.terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                cur = out.get(e)
                out[e] = p if cur is None else cur + p
        return Polynomial(self.nvars, self.order, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.one(self.nvars, self.order)
        for _ in range(k):
            result = result * self
        return result

    # -- calculus ------------------------------------------------------

    def partial_derivative(self, i: int) -> "Polynomial":
        out = {}
        for exps, coeff in self.terms.items():
            if exps[i]:
                lowered = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
                scaled = coeff * exps[i]
                cur = out.get(lowered)
                out[lowered] = scaled if cur is None else cur + scaled
        return Polynomial(self.nvars, self.order, out)

    def set_vars_zero(self, indices) -> "Polynomial":
        """Restrict by setting the listed variables to zero."""
        idx = set(indices)
        out = {e: c for e, c in self.terms.items()
               if all(e[i] == 0 for i in idx)}
        return Polynomial(self.nvars, self.order, out)

    # -- predicates / display -------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic, HbarSeries)):
            other = Polynomial.constant(other, self.nvars, self.order)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def agrees_with(self, other, up_to=None) -> bool:
        """Coefficient-wise HbarSeries.agrees_with on the term union."""
        other = self._coerce(other)
        zero = HbarSeries.zero(self.order)
        for exps in set(self.terms) | set(other.terms):
            a = self.terms.get(exps, zero)
            b = other.terms.get(exps, zero)
            if not a.agrees_with(b, up_to):
                return False
        return True

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            mono = "*".join(
                f"x{i}^{e}" if e > 1 else f"x{i}"
                for i, e in enumerate(exps) if e
            )
            c = self.terms[exps]
            parts.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(parts)


def linear_substitute(f: Polynomial, matrix: list) -> Polynomial:
    """f composed with the linear map given by ``matrix``: x_i -> sum_j A_ij x_j.

    Entries may be Cyclotomic or rational.  The matrix must be square of
    size f.nvars and invertible.
    """
    n = f.nvars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError(f"matrix must be {n}x{n}")
    from .linalg import invert_dense
    zero = Cyclotomic.zero(f.order)
    one = Cyclotomic.one(f.order)
    rows = [[_as_cyclotomic(v, f.order) for v in row] for row in matrix]
    invert_dense(rows, zero, one)  # raises ValueError on a singular matrix
    images = []
    for i in range(n):
        img = Polynomial.zero(n, f.order)
        for j, v in enumerate(rows[i]):
            if v:
                img = img + Polynomial.variable(j, n, f.order) * v
        images.append(img)
    out = Polynomial.zero(n, f.order)
    power_cache: dict = {}
    for exps, coeff in f.terms.items():
        term = Polynomial.constant(coeff, n, f.order)
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in power_cache:
                    power_cache[key] = images[i] ** e
                term = term * power_cache[key]
        out = out + term
    return out


def _as_cyclotomic(value, order: int) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        if value.ctx.order != order:
            raise ValueError(
                f"matrix entry of order {value.ctx.order} in an order-{order} context"
            )
        return value
    return Cyclotomic.from_rational(value, order)


# ---------------------------------------------------------------------------
# Graded objects: multivector fields and differential forms
# ---------------------------------------------------------------------------


class GradedField:
    """Shared machinery for DiffForm / MultiVector: a degree-k object with
    polynomial components indexed by strictly increasing index tuples."""

    __slots__ = ("nvars", "order", "degree", "components")

    def __init__(self, nvars: int, order: int, degree: int, components: dict):
        self.nvars = nvars
        self.order = order
        self.degree = degree
        clean = {}
        for idx, poly in components.items():
            idx = tuple(idx)
            if len(idx) != degree or any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing"
                                 f" of length {degree}")
            if any(i < 0 or i >= nvars for i in idx):
                raise ValueError(f"index out of range in {idx}")
            if poly:
                clean[idx] = poly
        self.components = clean

    @classmethod
    def zero(cls, nvars: int, order: int, degree: int):
        return cls(nvars, order, degree, {})

    @classmethod
    def from_polynomial(cls, f: Polynomial):
        return cls(f.nvars, f.order, 0, {(): f})

    def _check(self, other):
        if self.nvars != other.nvars or type(self) is not type(other):
            raise ValueError("incompatible graded objects")

    def __add__(self, other):
        self._check(other)
        if self.degree != other.degree:
            raise ValueError("cannot add different degrees")
        out = dict(self.components)
        for idx, poly in other.components.items():
            cur = out.get(idx)
            out[idx] = poly if cur is None else cur + poly
        return type(self)(self.nvars, self.order, self.degree, out)

    def __neg__(self):
        return type(self)(self.nvars, self.order, self.degree,
                          {i: -p for i, p in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        return type(self)(self.nvars, self.order, self.degree,
                          {i: p * scalar for i, p in self.components.items()})

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.components)

    def __eq__(self, other):
        return (type(self) is type(other) and self.nvars == other.nvars
                and self.degree == other.degree
                and self.components == other.components)

    def __hash__(self):
        return hash((type(self).__name__, self.degree,
                     tuple(sorted((i, hash(p)) for i, p in self.components.items()))))

    def wedge(self, other):
        self._check(other)
        deg = self.degree + other.degree
        result = type(self).zero(self.nvars, self.order, deg)
        if deg > self.nvars:
            return result
        out: dict = {}
        for idx1, p1 in self.components.items():
            for idx2, p2 in other.components.items():
                if set(idx1) & set(idx2):
                    continue
                merged, sign = _merge_sorted(idx1, idx2)
                prod = p1 * p2
                if sign < 0:
                    prod = -prod
                cur = out.get(merged)
                out[merged] = prod if cur is None else cur + prod
        return type(self)(self.nvars, self.order, deg, out)

    def contract_index(self, i: int):
        """Interior product with the i-th coordinate (co)vector."""
        out: dict = {}
        for idx, poly in self.components.items():
            if i not in idx:
                continue
            t = idx.index(i)
            reduced = idx[:t] + idx[t + 1:]
            signed = poly if t % 2 == 0 else -poly
            cur = out.get(reduced)
            out[reduced] = signed if cur is None else cur + signed
        return type(self)(self.nvars, self.order, self.degree - 1, out)

    def __repr__(self):
        tag = type(self).__name__
        if not self.components:
            return f"{tag}(0; degree {self.degree})"
        parts = [f"{idx}: {poly}" for idx, poly in sorted(self.components.items())]
        return f"{tag}({'; '.join(parts)})"


def _merge_sorted(idx1: tuple, idx2: tuple) -> tuple:
    """Merge two disjoint increasing tuples, returning (merged, Koszul sign)."""
    merged = []
    sign = 1
    i = j = 0
    while i < len(idx1) and j < len(idx2):
        if idx1[i] < idx2[j]:
            merged.append(idx1[i])
            i += 1
        else:
            # idx2[j] jumps over the remaining len(idx1) - i entries of idx1
            if (len(idx1) - i) % 2:
                sign = -sign
            merged.append(idx2[j])
            j += 1
    merged.extend(idx1[i:])
    merged.extend(idx2[j:])
    return tuple(merged), sign


class MultiVector(GradedField):
    """Polynomial multivector field: components against d/dx_{i1} ^ ... ^ d/dx_{ik}."""


class DiffForm(GradedField):
    """Polynomial differential form: components against dx_{i1} ^ ... ^ dx_{ik}."""


def wedge(u, v):
    return u.wedge(v)


def contract(X: MultiVector, omega: DiffForm) -> DiffForm:
    """Interior product of a vector field (degree-1 multivector) with a form."""
    if X.degree != 1:
        raise ValueError("contract expects a degree-1 multivector field")
    out = DiffForm.zero(omega.nvars, omega.order, omega.degree - 1)
    for (i,), coeff in X.components.items():
        piece = omega.contract_index(i)
        out = out + DiffForm(piece.nvars, piece.order, piece.degree,
                             {idx: p * coeff for idx, p in piece.components.items()})
    return out


def de_rham_d(omega: DiffForm) -> DiffForm:
    out: dict = {}
    for idx, poly in omega.components.items():
        for i in range(omega.nvars):
            if i in idx:
                continue
            df = poly.partial_derivative(i)
            if not df:
                continue
            merged, sign = _merge_sorted((i,), idx)
            signed = df if sign > 0 else -df
            cur = out.get(merged)
            out[merged] = signed if cur is None else cur + signed
    return DiffForm(omega.nvars, omega.order, omega.degree + 1, out)


# ---------------------------------------------------------------------------
# Textual polynomial syntax
# ---------------------------------------------------------------------------


class PolynomialSyntaxError(ValueError):
    """Parse failure; carries the character position of the offending token."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(
    r"\s*(?:(?P<frac>\(\s*-?\d+\s*/\s*\d+\s*\))|(?P<int>\d+)"
    r"|(?P<var>x\d+)|(?P<hbar>h)|(?P<root>z\d+)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise PolynomialSyntaxError(f"unexpected character {stripped[0]!r}", at)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, nvars: int, order: int) -> Polynomial:
    """Parse the textual syntax ``3*x0^2*x1 + (1/2)*h*x2``.

    ``h`` is the deformation parameter; ``zN^k`` denotes the k-th power
    of a primitive N-th root of unity (N must divide the ambient order).
    Parentheses group subexpressions, so the ``repr`` of an untruncated
    polynomial parses back to itself.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial", 0)
    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else (None, None, len(text))

    def take_power() -> int:
        nonlocal idx
        kind, val, pos = peek()
        if kind == "op" and val == "^":
            idx += 1
            kind, val, pos = peek()
            if kind != "int":
                raise PolynomialSyntaxError("expected an integer exponent", pos)
            idx += 1
            return int(val)
        return 1

    def parse_factor() -> Polynomial:
        nonlocal idx
        kind, val, pos = peek()
        if kind == "frac":
            num, den = val.strip("() \t").split("/")
            idx += 1
            return Polynomial.constant(Fraction(int(num), int(den)),
                                       nvars, order)
        if kind == "int":
            idx += 1
            return Polynomial.constant(Fraction(int(val)) ** take_power(),
                                       nvars, order)
        if kind == "var":
            v = int(val[1:])
            if v >= nvars:
                raise PolynomialSyntaxError(
                    f"variable x{v} out of range (have {nvars})", pos)
            idx += 1
            return Polynomial.variable(v, nvars, order) ** take_power()
        if kind == "hbar":
            idx += 1
            return Polynomial.constant(HbarSeries.hbar(order, take_power()),
                                       nvars, order)
        if kind == "root":
            n = int(val[1:])
            if n <= 0 or order % n != 0:
                raise PolynomialSyntaxError(
                    f"root of unity z{n} not available at order {order}", pos)
            idx += 1
            k = take_power()
            return Polynomial.constant(
                Cyclotomic.root_of_unity(k * (order // n), order),
                nvars, order)
        if kind == "op" and val == "(":
            idx += 1
            inner = parse_expr()
            kind, val, pos = peek()
            if not (kind == "op" and val == ")"):
                raise PolynomialSyntaxError("expected ')'", pos)
            idx += 1
            return inner ** take_power()
        raise PolynomialSyntaxError("expected a factor", pos)

    def parse_term() -> Polynomial:
        nonlocal idx
        term = parse_factor()
        while True:
            kind, val, _ = peek()
            if kind == "op" and val == "*":
                idx += 1
                term = term * parse_factor()
            else:
                return term

    def parse_expr() -> Polynomial:
        nonlocal idx
        result = Polynomial.zero(nvars, order)
        first = True
        while True:
            sign = 1
            kind, val, pos = peek()
            while kind == "op" and val in "+-":
                if val == "-":
                    sign = -sign
                idx += 1
                kind, val, pos = peek()
            if kind is None and first:
                raise PolynomialSyntaxError("expected a term", pos)
            term = parse_term()
            result = result + (term if sign > 0 else -term)
            first = False
            kind, val, pos = peek()
            if kind is None or (kind == "op" and val == ")"):
                return result
            if not (kind == "op" and val in "+-"):
                raise PolynomialSyntaxError(f"unexpected token {val!r}", pos)

    result = parse_expr()
    kind, val, pos = peek()
    if kind is not None:
        raise PolynomialSyntaxError(f"unexpected token {val!r}", pos)
    return result
