"""Exact coefficient arithmetic: cyclotomic field elements and truncated
formal Laurent series in the deformation parameter.

All values are immutable; arithmetic is exact rational arithmetic
throughout.  A ``Cyclotomic`` is an element of Q(zeta_N) stored as a
fully reduced residue modulo the N-th cyclotomic polynomial.  An
``HbarSeries`` is a formal Laurent series in ``h`` (the deformation
parameter) with ``Cyclotomic`` coefficients, carrying its own truncation
order so that no operation silently claims precision it does not have.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Union

RationalLike = Union[int, Fraction]


def _poly_divide_int(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (lowest degree first)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + len(den) - 1]
        assert c % den[-1] == 0
        q[k] = c // den[-1]
        for j, d in enumerate(den):
            num[k + j] -= q[k] * d
    assert all(c == 0 for c in num)
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    if n == 1:
        return (-1, 1)
    poly = [0] * (n + 1)
    poly[0], poly[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_int(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
class CyclotomicContext:
    """Shared per-N data: reduction of powers zeta^k for k >= phi(N)."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError("cyclotomic order must be positive")
        self.order = order
        self.phi = euler_phi(order)
        minpoly = cyclotomic_polynomial(order)
        # zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1})
        top = [-Fraction(c) for c in minpoly[: self.phi]]
        # reductions[j] = coefficient vector of zeta^(phi + j), enough to
        # reduce any product of two reduced elements
        reductions = [top]
        for _ in range(self.phi - 2):
            prev = reductions[-1]
            shifted = [Fraction(0)] + prev[:-1]
            if prev[-1]:
                shifted = [s + prev[-1] * t for s, t in zip(shifted, top)]
            reductions.append(shifted)
        self.reductions = [tuple(r) for r in reductions]

    def __repr__(self):
        return f"CyclotomicContext({self.order})"


class Cyclotomic:
    """An element of Q(zeta_N), reduced modulo the cyclotomic polynomial."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: CyclotomicContext, coeffs: Iterable[RationalLike]):
        self.ctx = ctx
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != ctx.phi:
            raise ValueError(
                f"expected {ctx.phi} coefficients for order {ctx.order}, got {len(cs)}"
            )
        self.coeffs = cs

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(value: RationalLike, order: int) -> "Cyclotomic":
        ctx = CyclotomicContext(order)
        return Cyclotomic(ctx, (Fraction(value),) + (Fraction(0),) * (ctx.phi - 1))

    @staticmethod
    def zero(order: int) -> "Cyclotomic":
        return Cyclotomic.from_rational(0, order)

    @staticmethod
    def one(order: int) -> "Cyclotomic":
        return Cyclotomic.from_rational(1, order)

    @staticmethod
    def root_of_unity(k: int, order: int) -> "Cyclotomic":
        """zeta_order^k, reduced."""
        ctx = CyclotomicContext(order)
        k %= order
        coeffs = [Fraction(0)] * ctx.phi
        if k < ctx.phi:
            coeffs[k] = Fraction(1)
            return Cyclotomic(ctx, coeffs)
        # multiply out zeta^k by repeated reduced squaring via table lookups
        result = Cyclotomic.one(order)
        zeta = Cyclotomic(
            ctx, [Fraction(1) if i == 1 else Fraction(0) for i in range(ctx.phi)]
        ) if ctx.phi > 1 else Cyclotomic(ctx, [Fraction(cyclotomic_polynomial(order)[0]) * -1])
        for _ in range(k):
            result = result * zeta
        return result

    @staticmethod
    def imaginary_unit(order: int) -> "Cyclotomic":
        if order % 4 != 0:
            raise ValueError(f"i is not in Q(zeta_{order}); order must be divisible by 4")
        return Cyclotomic.root_of_unity(order // 4, order)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "Cyclotomic"):
        if self.ctx is not other.ctx and self.ctx.order != other.ctx.order:
            raise ValueError(
                f"mixed cyclotomic orders {self.ctx.order} and {other.ctx.order}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other, self.ctx.order)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        self._check(other)
        return Cyclotomic(self.ctx, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.ctx, (-a for a in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other, self.ctx.order)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Cyclotomic(self.ctx, (a * f for a in self.coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        self._check(other)
        phi = self.ctx.phi
        raw = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    raw[i + j] += a * b
        out = raw[:phi]
        for j in range(phi, 2 * phi - 1):
            c = raw[j]
            if c:
                red = self.ctx.reductions[j - phi]
                for t in range(phi):
                    if red[t]:
                        out[t] += c * red[t]
        return Cyclotomic(self.ctx, out)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        phi = self.ctx.phi
        # columns of the multiplication-by-self matrix
        cols = []
        basis = [Cyclotomic(self.ctx, [Fraction(int(i == j)) for i in range(phi)])
                 for j in range(phi)]
        for e in basis:
            cols.append((self * e).coeffs)
        # solve M x = e_0 by Gaussian elimination on the phi x phi system
        aug = [[cols[j][i] for j in range(phi)] + [Fraction(int(i == 0))]
               for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if aug[r][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [v * inv for v in aug[col]]
            for r in range(phi):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
        return Cyclotomic(self.ctx, (aug[i][phi] for i in range(phi)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other, self.ctx.order)
        self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.from_rational(other, self.ctx.order) / self

    # -- predicates ----------------------------------------------------

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.from_rational(other, self.ctx.order)
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.ctx.order == other.ctx.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.order, self.coeffs))

    def rational_part(self) -> Fraction:
        """The value as a rational, if it is one."""
        if any(self.coeffs[1:]):
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                terms.append(f"{c}*z{self.ctx.order}^{k}" if c != 1 else f"z{self.ctx.order}^{k}")
        return " + ".join(terms) if terms else "0"


INFINITE_ORDER = math.inf


class HbarSeries:
    """Truncated formal Laurent series in h over a cyclotomic field.

    ``trunc`` is the highest h-exponent whose coefficient is known
    exactly (inclusive); ``math.inf`` marks an exact polynomial value.
    Binary operations take the minimum of the operands' truncations,
    tightened when a factor's low order shifts reliable information.
    """

    __slots__ = ("order", "coeffs", "trunc")

    def __init__(self, order: int, coeffs: dict[int, Cyclotomic], trunc=INFINITE_ORDER):
        self.order = order
        self.trunc = trunc
        self.coeffs = {e: c for e, c in coeffs.items() if c and e <= trunc}

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_cyclotomic(c: Cyclotomic, trunc=INFINITE_ORDER) -> "HbarSeries":
        return HbarSeries(c.ctx.order, {0: c}, trunc)

    @staticmethod
    def from_rational(value: RationalLike, order: int, trunc=INFINITE_ORDER) -> "HbarSeries":
        return HbarSeries(order, {0: Cyclotomic.from_rational(value, order)}, trunc)

    @staticmethod
    def zero(order: int) -> "HbarSeries":
        return HbarSeries(order, {})

    @staticmethod
    def one(order: int) -> "HbarSeries":
        return HbarSeries.from_rational(1, order)

    @staticmethod
    def hbar(order: int, exponent: int = 1) -> "HbarSeries":
        return HbarSeries(order, {exponent: Cyclotomic.one(order)})

    # -- structure -----------------------------------------------------

    def lowest_exponent(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def coefficient(self, exponent: int) -> Cyclotomic:
        if exponent > self.trunc:
            raise ValueError(f"coefficient at h^{exponent} beyond truncation {self.trunc}")
        return self.coeffs.get(exponent, Cyclotomic.zero(self.order))

    def truncate(self, trunc) -> "HbarSeries":
        return HbarSeries(self.order, self.coeffs, min(self.trunc, trunc))

    def is_unit(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "HbarSeries":
        if isinstance(other, HbarSeries):
            return other
        if isinstance(other, Cyclotomic):
            return HbarSeries.from_cyclotomic(other)
        if isinstance(other, (int, Fraction)):
            return HbarSeries.from_rational(other, self.order)
        raise TypeError(f"cannot coerce {other!r} to HbarSeries")

    _COERCIBLE = (int, Fraction, Cyclotomic)

    def __add__(self, other):
        if not isinstance(other, (HbarSeries,) + self._COERCIBLE):
            return NotImplemented
        other = self._coerce(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return HbarSeries(self.order, out, min(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries(self.order, {e: -c for e, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, (HbarSeries,) + self._COERCIBLE):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, (HbarSeries,) + self._COERCIBLE):
            return NotImplemented
        other = self._coerce(other)
        # a unit factor of low order v shifts reliable orders by v
        lo_s = self.lowest_exponent()
        lo_o = other.lowest_exponent()
        if lo_s is None or lo_o is None:
            trunc = min(self.trunc, other.trunc)
            return HbarSeries(self.order, {}, trunc)
        trunc = min(self.trunc + lo_o, other.trunc + lo_s)
        out: dict[int, Cyclotomic] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e > trunc:
                    continue
                p = c1 * c2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return HbarSeries(self.order, out, trunc)

    __rmul__ = __mul__

    def inverse(self) -> "HbarSeries":
        """Laurent-series inverse; requires a nonzero leading coefficient."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero h-series")
        v = self.lowest_exponent()
        lead = self.coeffs[v]
        lead_inv = lead.inverse()
        if self.trunc == INFINITE_ORDER and len(self.coeffs) == 1:
            return HbarSeries(self.order, {-v: lead_inv})
        if self.trunc == INFINITE_ORDER:
            raise ValueError(
                "inverse of a multi-term exact series needs a truncation; "
                "call .truncate(K) first"
            )
        # relative precision: coefficients of self are reliable for
        # exponents v..trunc, so the inverse is reliable for -v..trunc-2v
        n_terms = int(self.trunc) - v
        tail = {e - v: c * lead_inv for e, c in self.coeffs.items() if e > v}
        inv = {0: Cyclotomic.one(self.order)}  # inverse of 1 + tail
        for k in range(1, n_terms + 1):
            acc = Cyclotomic.zero(self.order)
            for e, c in tail.items():
                if e <= k and (k - e) in inv:
                    acc = acc + c * inv[k - e]
            if acc:
                inv[k] = -acc
        out = {e - v: c * lead_inv for e, c in inv.items()}
        return HbarSeries(self.order, out, self.trunc - 2 * v)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    # -- predicates ----------------------------------------------------

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = self._coerce(other)
        if not isinstance(other, HbarSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, tuple(sorted(self.coeffs.items(), key=lambda t: t[0]))))

    def agrees_with(self, other, up_to=None) -> bool:
        """Equality on every coefficient below the recorded truncations."""
        other = self._coerce(other)
        cap = min(self.trunc, other.trunc)
        if up_to is not None:
            cap = min(cap, up_to)
        zero = Cyclotomic.zero(self.order)
        exps = set(self.coeffs) | set(other.coeffs)
        return all(
            self.coeffs.get(e, zero) == other.coeffs.get(e, zero)
            for e in exps if e <= cap
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"({c})")
            elif e == 1:
                parts.append(f"({c})*h")
            else:
                parts.append(f"({c})*h^{e}")
        s = " + ".join(parts)
        if self.trunc != INFINITE_ORDER:
            s += f" + O(h^{int(self.trunc) + 1})"
        return s


def hbar_invert(a: HbarSeries) -> HbarSeries:
    """Series inverse of a unit; a * result = 1 up to the truncation order."""
    return a.inverse()


def embed_root_of_unity(k: int, order: int) -> Cyclotomic:
    """zeta_order^k as a reduced cyclotomic element."""
    return Cyclotomic.root_of_unity(k, order)
