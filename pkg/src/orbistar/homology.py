"""Brute-force Hochschild and cyclic homology of finite-dimensional
algebras: the (b, B)-bicomplex with twisted differentials and cyclic
operators, the cochain action d_phi with the Gerstenhaber bracket, and
the invariant-cohomology comparison for discrete crossed products.

Everything works over an exact scalar field (Fraction by default); chains
and cochains are sparse dictionaries over the algebra basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct

from .linalg import Echelon, kernel_basis, rank as _rank


def _vec_add(target: dict, source: dict, factor):
    for k, v in source.items():
        val = factor * v
        cur = target.get(k)
        new = val if cur is None else cur + val
        if new:
            target[k] = new
        else:
            target.pop(k, None)


class FiniteDimAlgebra:
    """An associative unital algebra given by structure constants.

    ``mult[i][j]`` is the sparse vector of e_i e_j; ``unit`` the sparse
    coordinate vector of 1.  An optional automorphism (matrix columns as
    sparse vectors) of finite order may be attached for twisted
    homology.  All axioms are checked on construction.
    """

    def __init__(self, mult, unit: dict, automorphism=None, labels=None,
                 check: bool = True):
        self.dim = len(mult)
        self.mult = mult
        self.unit = dict(unit)
        self.labels = labels or [f"e{i}" for i in range(self.dim)]
        self.automorphism = automorphism
        self.auto_order = None
        if check:
            self._check_axioms()
        if automorphism is not None:
            self.auto_order = self._check_automorphism()

    # -- products ------------------------------------------------------

    def basis_product(self, i: int, j: int) -> dict:
        return self.mult[i][j]

    def product(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                _vec_add(out, self.mult[i][j], a * b)
        return out

    def apply_auto(self, u: dict) -> dict:
        out: dict = {}
        for i, a in u.items():
            _vec_add(out, self.automorphism[i], a)
        return out

    # -- construction checks --------------------------------------------

    def _check_axioms(self):
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self.product(self.mult[i][j], {k: Fraction(1)})
                    right = self.product({i: Fraction(1)}, self.mult[j][k])
                    if left != right:
                        raise ValueError(
                            f"associativity fails on basis triple ({i},{j},{k})")
        for i in range(n):
            e = {i: Fraction(1)}
            if self.product(self.unit, e) != e or self.product(e, self.unit) != e:
                raise ValueError(f"unit law fails on basis element {i}")

    def _check_automorphism(self) -> int:
        n = self.dim
        alpha = self.automorphism
        for i in range(n):
            for j in range(n):
                lhs = self.apply_auto(self.mult[i][j])
                rhs = self.product(alpha[i], alpha[j])
                if lhs != rhs:
                    raise ValueError(
                        f"automorphism is not multiplicative on ({i},{j})")
        if self.apply_auto(self.unit) != self.unit:
            raise ValueError("automorphism does not fix the unit")
        # finite order
        current = alpha
        for r in range(1, 129):
            if all(current[i] == {i: Fraction(1)} for i in range(n)):
                return r
            nxt = []
            for i in range(n):
                out: dict = {}
                for j, c in current[i].items():
                    _vec_add(out, alpha[j], c)
                nxt.append(out)
            current = nxt
        raise ValueError("automorphism order exceeds 128")


# -- stock algebras -----------------------------------------------------


def matrix_algebra(n: int) -> FiniteDimAlgebra:
    """M_n over the rationals, basis e_{pq} at index p*n + q."""
    dim = n * n
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    if q == r:
                        mult[p * n + q][r * n + s] = {p * n + s: Fraction(1)}
    unit = {p * n + p: Fraction(1) for p in range(n)}
    labels = [f"E{p}{q}" for p in range(n) for q in range(n)]
    return FiniteDimAlgebra(mult, unit, labels=labels)


def group_algebra(table: list, identity: int = 0,
                  automorphism=None) -> FiniteDimAlgebra:
    """Group algebra from a multiplication table table[i][j] = index."""
    dim = len(table)
    mult = [[{table[i][j]: Fraction(1)} for j in range(dim)]
            for i in range(dim)]
    return FiniteDimAlgebra(mult, {identity: Fraction(1)},
                            automorphism=automorphism,
                            labels=[f"g{i}" for i in range(dim)])


def cyclic_group_table(n: int) -> list:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def truncated_polynomial_algebra(m: int) -> FiniteDimAlgebra:
    """Q[x]/(x^m), basis 1, x, ..., x^{m-1}."""
    mult = [[({i + j: Fraction(1)} if i + j < m else {}) for j in range(m)]
            for i in range(m)]
    return FiniteDimAlgebra(mult, {0: Fraction(1)},
                            labels=[f"x^{i}" for i in range(m)])


def function_algebra(points: int) -> FiniteDimAlgebra:
    """Functions on a finite set: product of |points| copies of the field."""
    mult = [[({i: Fraction(1)} if i == j else {}) for j in range(points)]
            for i in range(points)]
    unit = {i: Fraction(1) for i in range(points)}
    return FiniteDimAlgebra(mult, unit, labels=[f"p{i}" for i in range(points)])


def discrete_crossed_product(points: int, perms: list, table: list,
                             identity: int = 0) -> FiniteDimAlgebra:
    """C[S] x| Gamma for Gamma acting on a finite set S by the listed
    permutations (perms[g][s] is the image of point s), with group
    multiplication table ``table``.  Basis index: s * |Gamma| + g."""
    ng = len(perms)
    dim = points * ng
    mult = [[{} for _ in range(dim)] for _ in range(dim)]
    for s in range(points):
        for g in range(ng):
            for t in range(points):
                for h in range(ng):
                    # (e_s d_g)(e_t d_h) = e_s (g.e_t) d_{gh}; the action
                    # moves the point: g.e_t = e_{g(t)}
                    if s == perms[g][t]:
                        mult[s * ng + g][t * ng + h] = {
                            s * ng + table[g][h]: Fraction(1)}
    unit = {s * ng + identity: Fraction(1) for s in range(points)}
    return FiniteDimAlgebra(mult, unit)


def matrix_over(A: FiniteDimAlgebra, n: int) -> FiniteDimAlgebra:
    """M_n(A); basis index (i, p, q) flattened as (i*n + p)*n + q."""
    dim = A.dim * n * n
    mult = [[{} for _ in range(dim)] for _ in range(dim)]

    def idx(i, p, q):
        return (i * n + p) * n + q

    for i in range(A.dim):
        for p in range(n):
            for q in range(n):
                for j in range(A.dim):
                    for s in range(n):
                        out = {}
                        for k, c in A.mult[i][j].items():
                            out[idx(k, p, s)] = c
                        mult[idx(i, p, q)][idx(j, q, s)] = out
    unit = {}
    for k, c in A.unit.items():
        for p in range(n):
            unit[idx(k, p, p)] = c
    return FiniteDimAlgebra(mult, unit, check=False)


# -- chains and the basic operators ---------------------------------------


@dataclass
class Chain:
    """Element of A^{(x)(k+1)}: sparse dict from basis index tuples."""
    algebra: FiniteDimAlgebra
    degree: int
    coeffs: dict

    def __post_init__(self):
        self.coeffs = {t: c for t, c in self.coeffs.items() if c}
        for t in self.coeffs:
            if len(t) != self.degree + 1:
                raise ValueError("tensor rank does not match the degree")

    def __add__(self, other):
        out = dict(self.coeffs)
        for t, c in other.coeffs.items():
            cur = out.get(t)
            new = c if cur is None else cur + c
            if new:
                out[t] = new
            else:
                out.pop(t, None)
        return Chain(self.algebra, self.degree, out)

    def __neg__(self):
        return Chain(self.algebra, self.degree,
                     {t: -c for t, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return Chain(self.algebra, self.degree,
                     {t: factor * c for t, c in self.coeffs.items()})

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, Chain) and self.degree == other.degree
                and self.coeffs == other.coeffs)


def _replace_slot(t: tuple, pos: int, vec: dict, width: int, out: dict, factor):
    """Accumulate tensors with slots [pos, pos+width) replaced by vec keys."""
    for b, c in vec.items():
        nt = t[:pos] + (b,) + t[pos + width:]
        cur = out.get(nt)
        new = factor * c if cur is None else cur + factor * c
        if new:
            out[nt] = new
        else:
            out.pop(nt, None)


def hochschild_b(c: Chain) -> Chain:
    return twisted_b(c, alpha=None)


def twisted_b(c: Chain, alpha=None) -> Chain:
    """b(a_0 (x) ... (x) a_k) = sum (-1)^i faces, the last face wrapping
    alpha(a_k) a_0."""
    A = c.algebra
    k = c.degree
    if k == 0:
        return Chain(A, 0, {})
    out: dict = {}
    for t, coeff in c.coeffs.items():
        for i in range(k):
            prod = A.basis_product(t[i], t[i + 1])
            sign = coeff if i % 2 == 0 else -coeff
            _replace_slot(t, i, prod, 2, out, sign)
        last = {t[k]: Fraction(1)}
        if alpha is not None:
            last = A.apply_auto(last)
        wrap: dict = {}
        for b, cb in last.items():
            _vec_add(wrap, A.basis_product(b, t[0]), cb)
        sign = coeff if k % 2 == 0 else -coeff
        for b, cb in wrap.items():
            nt = (b,) + t[1:k]
            cur = out.get(nt)
            new = sign * cb if cur is None else cur + sign * cb
            if new:
                out[nt] = new
            else:
                out.pop(nt, None)
    return Chain(A, k - 1, out)


def face_map(c: Chain, i: int, alpha=None) -> Chain:
    """The i-th simplicial face d_i on degree k; d_k wraps through alpha."""
    A = c.algebra
    k = c.degree
    out: dict = {}
    for t, coeff in c.coeffs.items():
        if i < k:
            prod = A.basis_product(t[i], t[i + 1])
            _replace_slot(t, i, prod, 2, out, coeff)
        else:
            last = {t[k]: Fraction(1)}
            if alpha is not None:
                last = A.apply_auto(last)
            for b, cb in last.items():
                for m, cm in A.basis_product(b, t[0]).items():
                    nt = (m,) + t[1:k]
                    cur = out.get(nt)
                    new = coeff * cb * cm if cur is None else cur + coeff * cb * cm
                    if new:
                        out[nt] = new
                    else:
                        out.pop(nt, None)
    return Chain(A, k - 1, out)


def cyclic_t(c: Chain, alpha=None) -> Chain:
    """t_k(a_0 (x) ... (x) a_k) = alpha(a_k) (x) a_0 (x) ... (x) a_{k-1}."""
    A = c.algebra
    k = c.degree
    out: dict = {}
    for t, coeff in c.coeffs.items():
        last = {t[k]: Fraction(1)}
        if alpha is not None:
            last = A.apply_auto(last)
        for b, cb in last.items():
            nt = (b,) + t[:k]
            cur = out.get(nt)
            new = coeff * cb if cur is None else cur + coeff * cb
            if new:
                out[nt] = new
            else:
                out.pop(nt, None)
    return Chain(A, k, out)


def cyclic_norm(c: Chain, alpha=None, r: int = 1) -> Chain:
    """N = sum_{i=0}^{(k+1)r - 1} (-1)^{ik} t_k^i."""
    k = c.degree
    total = Chain(c.algebra, k, {})
    current = c
    for i in range((k + 1) * r):
        total = total + (current if (i * k) % 2 == 0 else -current)
        current = cyclic_t(current, alpha)
    return total


def extra_degeneracy(c: Chain) -> Chain:
    """s(a_0 (x) ... (x) a_k) = 1 (x) a_0 (x) ... (x) a_k."""
    A = c.algebra
    out: dict = {}
    for t, coeff in c.coeffs.items():
        for b, cb in A.unit.items():
            nt = (b,) + t
            cur = out.get(nt)
            new = coeff * cb if cur is None else cur + coeff * cb
            if new:
                out[nt] = new
    return Chain(A, c.degree + 1, out)


def connes_B(c: Chain, alpha=None, r: int = 1) -> Chain:
    """B = (1 + (-1)^k t_{k+1}) s N on degree k."""
    k = c.degree
    v = extra_degeneracy(cyclic_norm(c, alpha, r))
    tv = cyclic_t(v, alpha)
    return v + (tv if k % 2 == 0 else -tv)


def verify_cyclic_identities(A: FiniteDimAlgebra, k_max: int, rng,
                             trials: int = 5) -> dict:
    """Simplicial/cyclic compatibilities and the mixed-complex relations,
    on random chains."""
    alpha = A.automorphism
    r = A.auto_order or 1
    failures = []

    def rand_chain(k):
        coeffs = {}
        for _ in range(3):
            t = tuple(rng.randrange(A.dim) for _ in range(k + 1))
            coeffs[t] = Fraction(rng.randrange(-4, 5))
        return Chain(A, k, coeffs)

    for k in range(1, k_max + 1):
        for _ in range(trials):
            c = rand_chain(k)
            # t_k^{r(k+1)} = 1
            it = c
            for _ in range(r * (k + 1)):
                it = cyclic_t(it, alpha)
            if it != c:
                failures.append(("t-order", k))
            # d_i t_{k} = t_{k-1} d_{i-1} for 1 <= i <= k; d_0 t_k = d_k
            for i in range(1, k + 1):
                lhs = face_map(cyclic_t(c, alpha), i, alpha)
                rhs = cyclic_t(face_map(c, i - 1, alpha), alpha)
                if lhs != rhs:
                    failures.append(("face-cyclic", k, i))
            if face_map(cyclic_t(c, alpha), 0, alpha) != face_map(c, k, alpha):
                failures.append(("face-cyclic", k, 0))
            # mixed complex relations
            if twisted_b(twisted_b(c, alpha), alpha):
                failures.append(("b-squared", k))
            Bc = connes_B(c, alpha, r)
            if connes_B(Bc, alpha, r):
                failures.append(("B-squared", k))
            if k >= 1:
                anti = twisted_b(connes_B(c, alpha, r), alpha) + \
                    connes_B(twisted_b(c, alpha), alpha, r)
                if anti:
                    failures.append(("bB-anticommute", k))
    return {"failures": failures, "ok": not failures}


# -- homology dimensions ---------------------------------------------------


def _all_tensors(n: int, k: int):
    return iproduct(range(n), repeat=k + 1)


def _unit_complement(A: FiniteDimAlgebra):
    """A basis index j0 with unit[j0] != 0; the remaining indices span a
    complement of the span of 1, with projection v -> v - (v_{j0}/c) 1."""
    j0, c = next(iter(sorted(A.unit.items())))
    return j0, c


def _normalized_b_rows(A: FiniteDimAlgebra, k: int, alpha=None):
    """Rows of b on the unit-normalized complex A (x) (A/1)^{(x)k}.

    Interior slots carry classes mod the unit; tensors with an interior
    unit are degenerate and vanish, so interior face products are projected
    to the chosen complement.  Slot 0 stays in the full algebra.
    """
    n = A.dim
    j0, c0 = _unit_complement(A)
    comp = [i for i in range(n) if i != j0]

    def project(vec: dict) -> dict:
        lam = vec.get(j0)
        if lam is None:
            return vec
        out = dict(vec)
        for i, ci in A.unit.items():
            cur = out.get(i)
            new = -lam * ci / c0 if cur is None else cur - lam * ci / c0
            if new:
                out[i] = new
            else:
                out.pop(i, None)
        return out

    rows = {}
    for t in iproduct(range(n), *([comp] * k)):
        row: dict = {}
        # d_0: slot-0 product stays in the full algebra
        _replace_slot(t, 0, A.basis_product(t[0], t[1]), 2, row, Fraction(1))
        for i in range(1, k):
            prod = project(A.basis_product(t[i], t[i + 1]))
            sign = Fraction(1) if i % 2 == 0 else Fraction(-1)
            _replace_slot(t, i, prod, 2, row, sign)
        last = {t[k]: Fraction(1)}
        if alpha is not None:
            last = A.apply_auto(last)
        wrap: dict = {}
        for b, cb in last.items():
            _vec_add(wrap, A.basis_product(b, t[0]), cb)
        sign = Fraction(1) if k % 2 == 0 else Fraction(-1)
        for b, cb in wrap.items():
            nt = (b,) + t[1:k]
            cur = row.get(nt)
            new = sign * cb if cur is None else cur + sign * cb
            if new:
                row[nt] = new
            else:
                row.pop(nt, None)
        if row:
            rows[t] = row
    return rows


def hh_dimensions(A: FiniteDimAlgebra, k_max: int, alpha=None) -> list:
    """Hochschild homology dimensions HH_0 .. HH_{k_max}, by exact ranks of
    the unit-normalized complex (dimension n * (n-1)^k in degree k)."""
    n = A.dim
    ranks = {0: 0}
    for k in range(1, k_max + 2):
        ranks[k] = _rank(_normalized_b_rows(A, k, alpha).values())
    dims = []
    for k in range(k_max + 1):
        chain_dim = n * (n - 1) ** k
        dims.append(chain_dim - ranks[k] - ranks[k + 1])
    return dims


def hc_dimensions(A: FiniteDimAlgebra, k_max: int, alpha=None,
                  r: int = 1) -> list:
    """Cyclic homology of the (b, B) total complex, degrees 0..k_max.

    Tot_n = (+)_{i>=0} C_{n-2i}; the differential is b + B.  Ranks are
    computed one total degree at a time; the top degree needs the incoming
    differential from Tot_{k_max+1}, so chains up to degree k_max+1 are used.
    """
    n = A.dim

    def total_rank(m):
        # rank of D: Tot_m -> Tot_{m-1}
        if m <= 0:
            return 0
        ech = Echelon()
        for i in range(m // 2 + 1):
            k = m - 2 * i
            for t in _all_tensors(n, k):
                c = Chain(A, k, {t: Fraction(1)})
                row = {}
                img_b = twisted_b(c, alpha)
                for tt, cc in img_b.coeffs.items():
                    row[(i, tt)] = cc
                if k + 1 <= m - 1:
                    img_B = connes_B(c, alpha, r)
                    for tt, cc in img_B.coeffs.items():
                        row[(i - 1, tt)] = cc
                if row:
                    ech.insert(row)
        return ech.rank

    dims = []
    for m in range(k_max + 1):
        tot_dim = sum(n ** (m - 2 * i + 1) for i in range(m // 2 + 1))
        dims.append(tot_dim - total_rank(m) - total_rank(m + 1))
    return dims


# -- cochains, d_phi and the Gerstenhaber bracket ---------------------------


@dataclass
class Cochain:
    """A multilinear map A^{(x)k} -> A, stored on basis tuples."""
    algebra: FiniteDimAlgebra
    arity: int
    values: dict  # input tuple -> sparse output vector

    def __post_init__(self):
        self.values = {t: v for t, v in self.values.items() if v}

    def apply(self, args: tuple) -> dict:
        return self.values.get(args, {})

    def __add__(self, other):
        out = {t: dict(v) for t, v in self.values.items()}
        for t, v in other.values.items():
            cur = out.setdefault(t, {})
            _vec_add(cur, v, Fraction(1))
        return Cochain(self.algebra, self.arity,
                       {t: v for t, v in out.items() if v})

    def __neg__(self):
        return Cochain(self.algebra, self.arity,
                       {t: {k: -c for k, c in v.items()}
                        for t, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.arity == other.arity
                and self.values == other.values)

    def __bool__(self):
        return bool(self.values)


def multiplication_cochain(A: FiniteDimAlgebra) -> Cochain:
    values = {}
    for i in range(A.dim):
        for j in range(A.dim):
            v = A.basis_product(i, j)
            if v:
                values[(i, j)] = dict(v)
    return Cochain(A, 2, values)


def cochain_action(phi: Cochain, c: Chain) -> Chain:
    """d_phi : C_n -> C_{n-k+1}:

      sum_{i=0}^{n-k+1} (-1)^{i(k-1)}
          a_0 (x) ... (x) phi(a_i ... a_{i+k-1}) (x) ... (x) a_n
    + sum_{i=2}^{k} (-1)^{(n-k+i)(k-i+1)}
          phi(a_{n-k+i} ... a_n (x) a_0 ... a_{i-2}) (x) a_{i-1} (x) ... (x) a_{n-k+i-1}
    """
    A = c.algebra
    k = phi.arity
    n = c.degree
    if n < k - 1:
        raise ValueError(f"chain degree {n} below cochain arity {k} - 1")
    out: dict = {}
    for t, coeff in c.coeffs.items():
        for i in range(n - k + 2):
            img = phi.apply(t[i:i + k])
            if not img:
                continue
            sign = coeff if (i * (k - 1)) % 2 == 0 else -coeff
            _replace_slot(t, i, img, k, out, sign)
        for i in range(2, k + 1):
            args = t[n - k + i:n + 1] + t[0:i - 1]
            img = phi.apply(args)
            if not img:
                continue
            sign = coeff if ((n - k + i) * (k - i + 1)) % 2 == 0 else -coeff
            tail = t[i - 1:n - k + i]
            for b, cb in img.items():
                nt = (b,) + tail
                cur = out.get(nt)
                new = sign * cb if cur is None else cur + sign * cb
                if new:
                    out[nt] = new
                else:
                    out.pop(nt, None)
    return Chain(A, n - k + 1, out)


def circle_product(phi: Cochain, psi: Cochain) -> Cochain:
    """phi o psi = sum of single insertions with Gerstenhaber signs."""
    A = phi.algebra
    k, l = phi.arity, psi.arity
    arity = k + l - 1
    values: dict = {}
    for args in iproduct(range(A.dim), repeat=arity):
        out: dict = {}
        for i in range(k):
            inner = psi.apply(args[i:i + l])
            if not inner:
                continue
            sign = Fraction(1) if (i * (l - 1)) % 2 == 0 else Fraction(-1)
            for b, cb in inner.items():
                outer = phi.apply(args[:i] + (b,) + args[i + l:])
                if outer:
                    _vec_add(out, outer, sign * cb)
        if out:
            values[args] = out
    return Cochain(A, arity, values)


def gerstenhaber_bracket(phi: Cochain, psi: Cochain) -> Cochain:
    k, l = phi.arity, psi.arity
    first = circle_product(phi, psi)
    second = circle_product(psi, phi)
    if ((k - 1) * (l - 1)) % 2 == 0:
        return first - second
    return first + second


def random_cochain(A: FiniteDimAlgebra, arity: int, rng,
                   density: int = 4) -> Cochain:
    values = {}
    for _ in range(density):
        args = tuple(rng.randrange(A.dim) for _ in range(arity))
        out = {rng.randrange(A.dim): Fraction(rng.randrange(-3, 4))}
        out = {k: v for k, v in out.items() if v}
        if out:
            values[args] = out
    return Cochain(A, arity, values)


def verify_operation_identity(A: FiniteDimAlgebra, trials: int, rng,
                              arities=None) -> dict:
    """d_phi d_psi - (-1)^{(k-1)(l-1)} d_psi d_phi = d_{[phi,psi]},
    on random cochains and chains."""
    if arities is None:
        arities = [(k, l) for k in (1, 2, 3) for l in (1, 2, 3)]
    failures = []
    checked = 0
    while checked < trials:
        for k, l in arities:
            phi = random_cochain(A, k, rng)
            psi = random_cochain(A, l, rng)
            n = k + l - 2 + rng.randrange(2)
            t = tuple(rng.randrange(A.dim) for _ in range(n + 1))
            c = Chain(A, n, {t: Fraction(1)})
            lhs = cochain_action(phi, cochain_action(psi, c))
            cross = cochain_action(psi, cochain_action(phi, c))
            if ((k - 1) * (l - 1)) % 2 == 0:
                lhs = lhs - cross
            else:
                lhs = lhs + cross
            rhs = cochain_action(gerstenhaber_bracket(phi, psi), c)
            if lhs != rhs:
                failures.append((k, l, t))
            checked += 1
    return {"checked": checked, "failures": failures, "ok": not failures}


# -- Hochschild cohomology with coefficients and the invariant comparison ---


def _cochain_columns(A_dim: int, M_dim: int, k: int):
    for args in iproduct(range(A_dim), repeat=k):
        for out in range(M_dim):
            yield (args, out)


def _coboundary_rows(A: FiniteDimAlgebra, module_mult_left, module_mult_right,
                     mod_dim: int, k: int):
    """Rows of the Hochschild coboundary C^k(A, M) -> C^{k+1}(A, M), indexed
    by source basis cochains (args, out); entries keyed by (input tuple, m).

    delta(phi)(b_0..b_k) = b_0 phi(b_1..b_k)
                         + sum_i (-1)^{i+1} phi(.., b_i b_{i+1}, ..)
                         + (-1)^{k+1} phi(b_0..b_{k-1}) b_k
    """
    # preimages[m] = all (i, j, c) with (e_i e_j)_m = c != 0
    preimages = [[] for _ in range(A.dim)]
    for i in range(A.dim):
        for j in range(A.dim):
            for m, c in A.mult[i][j].items():
                preimages[m].append((i, j, c))

    def add(row, key, val):
        cur = row.get(key)
        new = val if cur is None else cur + val
        if new:
            row[key] = new
        else:
            row.pop(key, None)

    rows = {}
    for args, out_idx in _cochain_columns(A.dim, mod_dim, k):
        row: dict = {}
        for b0 in range(A.dim):
            for m, c in module_mult_left(b0, out_idx).items():
                add(row, ((b0,) + args, m), c)
        for i in range(k):
            sign = Fraction(-1) if i % 2 == 0 else Fraction(1)
            for x, y, c in preimages[args[i]]:
                ext = args[:i] + (x, y) + args[i + 1:]
                add(row, (ext, out_idx), sign * c)
        sign = Fraction(1) if (k + 1) % 2 == 0 else Fraction(-1)
        for bk in range(A.dim):
            for m, c in module_mult_right(out_idx, bk).items():
                add(row, (args + (bk,), m), sign * c)
        if row:
            rows[(args, out_idx)] = row
    return rows


def hochschild_cohomology_dims(A: FiniteDimAlgebra, module_mult_left,
                               module_mult_right, mod_dim: int,
                               k_max: int) -> list:
    dims = []
    rk = {k: _rank(_coboundary_rows(A, module_mult_left, module_mult_right,
                                    mod_dim, k).values())
          for k in range(k_max + 1)}
    for k in range(k_max + 1):
        space = (A.dim ** k) * mod_dim
        kernel = space - rk[k]
        dims.append(kernel - (rk[k - 1] if k >= 1 else 0))
    return dims


def invariant_cohomology_compare(points: int, perms: list, table: list,
                                 k_max: int = 2, identity: int = 0) -> dict:
    """Compare dim HH^k(C[S] x| Gamma) with dim HH^k(C[S], C[S] x| Gamma)^Gamma.

    The group acts on a cochain phi by conjugating the output with delta_g
    and precomposing the inputs with g^{-1}."""
    ng = len(perms)
    B = discrete_crossed_product(points, perms, table, identity)
    # side 1: HH^k(B, B)
    lhs = hochschild_cohomology_dims(
        B, lambda i, m: B.basis_product(i, m),
        lambda m, i: B.basis_product(m, i), B.dim, k_max)

    # side 2: HH^k(A, B) with A = C[S] sitting inside B as s -> e_s d_e
    A = function_algebra(points)

    def embed(s):
        return s * ng + identity

    def left(a_idx, m_idx):
        return B.basis_product(embed(a_idx), m_idx)

    def right(m_idx, a_idx):
        return B.basis_product(m_idx, embed(a_idx))

    inverse = [next(h for h in range(ng) if table[g][h] == identity)
               for g in range(ng)]

    def act_on_cochain(g: int, phi_key, k: int):
        """Image of the elementary cochain phi_key under g, as a sparse
        vector over cochain columns."""
        args, out_idx = phi_key
        ginv = inverse[g]
        # inputs: (g phi)(a_1..a_k) = g.(phi(g^{-1}.a_1, ...)); on the
        # function algebra g^{-1}.e_s = e_{g^{-1}(s)}, so the elementary
        # cochain supported on `args` moves to support g(args)
        new_args = tuple(perms[g][s] for s in args)
        # output: conjugate by delta_g inside B
        out_vec = {out_idx: Fraction(1)}
        # delta_g = sum_s e_s d_g
        delta_g = {s * ng + g: Fraction(1) for s in range(points)}
        delta_ginv = {s * ng + ginv: Fraction(1) for s in range(points)}
        conj = B.product(delta_g, B.product(out_vec, delta_ginv))
        return {(new_args, m): c for m, c in conj.items()}

    dims = []
    for k in range(k_max + 1):
        rows_k = _coboundary_rows(A, left, right, B.dim, k)
        cols = list(_cochain_columns(A.dim, B.dim, k))
        # cocycles: kernel of delta_k, via the transposed matrix (rows of
        # _coboundary_rows are images of source basis cochains)
        transposed: dict = {}
        for src, row in rows_k.items():
            for tgt, c in row.items():
                transposed.setdefault(tgt, {})[src] = c
        cocycles = kernel_basis(list(transposed.values()), cols, Fraction(1))
        # average each cocycle over the group, then count mod coboundaries
        ech = Echelon()
        if k >= 1:
            for row in _coboundary_rows(A, left, right, B.dim, k - 1).values():
                ech.insert(row)
        inv_dim = 0
        for z in cocycles:
            avg: dict = {}
            for g in range(ng):
                for key, c in z.items():
                    _vec_add(avg, act_on_cochain(g, key, k), c)
            if avg and ech.insert(avg):
                inv_dim += 1
        dims.append(inv_dim)
    return {"crossed_product": lhs, "invariant": dims,
            "ok": lhs[:k_max + 1] == dims}


# -- matrix stability (Morita) maps ----------------------------------------


def matrix_stability_maps(A: FiniteDimAlgebra, n: int):
    """Returns (M_n(A), sigma, tr): sigma places chain entries in the (0,0)
    matrix slot, tr contracts cyclically adjacent matrix indices."""
    MA = matrix_over(A, n)

    def idx(i, p, q):
        return (i * n + p) * n + q

    def sigma(c: Chain) -> Chain:
        out = {tuple(idx(i, 0, 0) for i in t): coeff
               for t, coeff in c.coeffs.items()}
        return Chain(MA, c.degree, out)

    def gen_trace(c: Chain) -> Chain:
        out: dict = {}
        for t, coeff in c.coeffs.items():
            parts = [divmod(b, n) for b in t]           # (i*n + p, q)
            base = tuple(pn // n for pn, _ in parts)    # algebra index i
            ps = [(pn % n, q) for pn, q in parts]       # matrix indices
            ok = all(ps[j][1] == ps[(j + 1) % len(ps)][0]
                     for j in range(len(ps)))
            if ok:
                cur = out.get(base)
                new = coeff if cur is None else cur + coeff
                if new:
                    out[base] = new
                else:
                    out.pop(base, None)
        return Chain(A, c.degree, out)

    return MA, sigma, gen_trace
