"""Finite discrete groupoids: validated structure tables, Burghelea's
cyclic nerve, loops and sectors, the inertia groupoid with its central
family theta, the convolution algebra, and the reduction-to-loops
projection with its sector-decomposition cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .homology import Chain, FiniteDimAlgebra, hh_dimensions
from .linalg import Echelon


class GroupoidError(ValueError):
    """A category axiom failed; the message names the offending cell."""


class FiniteGroupoid:
    """Objects 0..n_objects-1 and arrows 0..n_arrows-1 with total source,
    target, unit, inverse tables and a partial composition table.

    Composition g1 * g2 means "apply g2 first": it is defined exactly when
    s(g1) = t(g2), and the result runs s(g2) -> t(g1).  Built through
    validate_groupoid, which checks every axiom cell by cell.
    """

    def __init__(self, n_objects, source, target, unit, inverse, compose):
        self.n_objects = n_objects
        self.n_arrows = len(source)
        self.source = list(source)
        self.target = list(target)
        self.unit = list(unit)
        self.inverse = list(inverse)
        self.compose = dict(compose)

    def composable(self, g1: int, g2: int) -> bool:
        return self.source[g1] == self.target[g2]


def validate_groupoid(n_objects, source, target, unit, inverse,
                      compose) -> FiniteGroupoid:
    G = FiniteGroupoid(n_objects, source, target, unit, inverse, compose)
    n = G.n_arrows
    for x in range(n_objects):
        u = G.unit[x]
        if G.source[u] != x or G.target[u] != x:
            raise GroupoidError(f"unit arrow of object {x} is not a loop at {x}")
    for (g1, g2), g in G.compose.items():
        if not G.composable(g1, g2):
            raise GroupoidError(f"composition defined on non-composable ({g1},{g2})")
        if G.source[g] != G.source[g2] or G.target[g] != G.target[g1]:
            raise GroupoidError(f"composition ({g1},{g2}) has wrong endpoints")
    for g1 in range(n):
        for g2 in range(n):
            if G.composable(g1, g2) and (g1, g2) not in G.compose:
                raise GroupoidError(f"missing composition for composable ({g1},{g2})")
    for g in range(n):
        if G.compose[(G.unit[G.target[g]], g)] != g:
            raise GroupoidError(f"left unit law fails at arrow {g}")
        if G.compose[(g, G.unit[G.source[g]])] != g:
            raise GroupoidError(f"right unit law fails at arrow {g}")
        inv = G.inverse[g]
        if G.compose.get((g, inv)) != G.unit[G.target[g]]:
            raise GroupoidError(f"g g^-1 != unit at arrow {g}")
        if G.compose.get((inv, g)) != G.unit[G.source[g]]:
            raise GroupoidError(f"g^-1 g != unit at arrow {g}")
    for g1 in range(n):
        for g2 in range(n):
            if not G.composable(g1, g2):
                continue
            for g3 in range(n):
                if not G.composable(g2, g3):
                    continue
                if G.compose[(G.compose[(g1, g2)], g3)] != \
                        G.compose[(g1, G.compose[(g2, g3)])]:
                    raise GroupoidError(
                        f"associativity fails on triple ({g1},{g2},{g3})")
    return G


def transformation_groupoid(points: int, perms: list, table: list,
                            identity: int = 0) -> FiniteGroupoid:
    """Gamma |x S for a permutation action: arrow (g, x) runs x -> g(x)."""
    ng = len(perms)
    inv = [next(h for h in range(ng) if table[g][h] == identity)
           for g in range(ng)]

    def aid(g, x):
        return g * points + x

    source = [x for g in range(ng) for x in range(points)]
    target = [perms[g][x] for g in range(ng) for x in range(points)]
    unit = [aid(identity, x) for x in range(points)]
    inverse = [aid(inv[g], perms[g][x])
               for g in range(ng) for x in range(points)]
    compose = {}
    for g1 in range(ng):
        for g2 in range(ng):
            for x in range(points):
                # (g1, g2(x)) after (g2, x)
                compose[(aid(g1, perms[g2][x]), aid(g2, x))] = \
                    (aid(table[g1][g2], x))
    return validate_groupoid(points, source, target, unit, inverse, compose)


def one_object_groupoid(table: list, identity: int = 0) -> FiniteGroupoid:
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == identity)
           for g in range(n)]
    compose = {(g1, g2): table[g1][g2] for g1 in range(n) for g2 in range(n)}
    return validate_groupoid(1, [0] * n, [0] * n, [identity], inv, compose)


def disjoint_union(a: FiniteGroupoid, b: FiniteGroupoid) -> FiniteGroupoid:
    no, na = a.n_objects, a.n_arrows
    source = a.source + [s + no for s in b.source]
    target = a.target + [t + no for t in b.target]
    unit = a.unit + [u + na for u in b.unit]
    inverse = a.inverse + [i + na for i in b.inverse]
    compose = dict(a.compose)
    for (g1, g2), g in b.compose.items():
        compose[(g1 + na, g2 + na)] = g + na
    return validate_groupoid(no + b.n_objects, source, target, unit,
                             inverse, compose)


def loops(G: FiniteGroupoid) -> list:
    return [g for g in range(G.n_arrows) if G.source[g] == G.target[g]]


def burghelea_space(G: FiniteGroupoid, k: int) -> list:
    """Cyclically composable strings (g_0, ..., g_k)."""
    def extend(prefix):
        if len(prefix) == k + 1:
            if G.source[prefix[-1]] == G.target[prefix[0]]:
                yield tuple(prefix)
            return
        for g in range(G.n_arrows):
            if G.source[prefix[-1]] == G.target[g]:
                yield from extend(prefix + [g])
    out = []
    for g0 in range(G.n_arrows):
        out.extend(extend([g0]))
    return out


@dataclass
class Sector:
    members: tuple
    representative: int


def sectors(G: FiniteGroupoid) -> list:
    """Conjugation orbits of loops (the minimal saturated subsets in the
    discrete model)."""
    loop_set = loops(G)
    unseen = set(loop_set)
    out = []
    for rep in loop_set:
        if rep not in unseen:
            continue
        orbit = {rep}
        frontier = [rep]
        while frontier:
            l = frontier.pop()
            for h in range(G.n_arrows):
                if G.source[h] != G.source[l]:
                    continue
                conj = G.compose[(G.compose[(h, l)], G.inverse[h])]
                if conj not in orbit:
                    orbit.add(conj)
                    frontier.append(conj)
        unseen -= orbit
        out.append(Sector(tuple(sorted(orbit)), rep))
    return out


@dataclass
class InertiaGroupoid:
    groupoid: FiniteGroupoid   # objects are loops, arrows are (h, loop) pairs
    base_loops: list           # object index -> loop arrow in the base
    arrow_labels: list         # arrow index -> (h, loop) in the base
    theta: list                # object index -> central loop arrow

    def theta_central(self) -> bool:
        L = self.groupoid
        for a in range(L.n_arrows):
            left = L.compose[(a, self.theta[L.source[a]])]
            right = L.compose[(self.theta[L.target[a]], a)]
            if left != right:
                return False
        return True

    def theta_orders(self) -> list:
        L = self.groupoid
        orders = []
        for x in range(L.n_objects):
            t = self.theta[x]
            power = t
            order = 1
            while power != L.unit[x]:
                power = L.compose[(t, power)]
                order += 1
            orders.append(order)
        return orders


def inertia_groupoid(G: FiniteGroupoid) -> InertiaGroupoid:
    """Lambda G = B^(0) |x G: objects are loops, an arrow (h, l) runs from
    the loop l to its conjugate h l h^-1; theta(l) = (l, l)."""
    base_loops = loops(G)
    loop_index = {l: i for i, l in enumerate(base_loops)}
    labels = []
    for h in range(G.n_arrows):
        for l in base_loops:
            if G.source[h] == G.source[l]:
                labels.append((h, l))
    arrow_index = {lab: i for i, lab in enumerate(labels)}

    def conj(h, l):
        return G.compose[(G.compose[(h, l)], G.inverse[h])]

    source = [loop_index[l] for h, l in labels]
    target = [loop_index[conj(h, l)] for h, l in labels]
    unit = [arrow_index[(G.unit[G.source[l]], l)] for l in base_loops]
    inverse = [arrow_index[(G.inverse[h], conj(h, l))] for h, l in labels]
    compose = {}
    for i1, (h1, l1) in enumerate(labels):
        for i2, (h2, l2) in enumerate(labels):
            if l1 == conj(h2, l2):
                compose[(i1, i2)] = arrow_index[(G.compose[(h1, h2)], l2)]
    inner = validate_groupoid(len(base_loops), source, target, unit,
                              inverse, compose)
    theta = [arrow_index[(l, l)] for l in base_loops]
    return InertiaGroupoid(inner, base_loops, labels, theta)


def convolution_algebra(G: FiniteGroupoid) -> FiniteDimAlgebra:
    """Functions on arrows with (a1 * a2)(g) = sum over g1 g2 = g."""
    n = G.n_arrows
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for (g1, g2), g in G.compose.items():
        mult[g1][g2] = {g: Fraction(1)}
    unit = {G.unit[x]: Fraction(1) for x in range(G.n_objects)}
    return FiniteDimAlgebra(mult, unit)


def reduction_to_loops(c: Chain, G: FiniteGroupoid) -> Chain:
    """Restrict a convolution-algebra chain to Burghelea's space B^(k):
    drop every basis tensor that is not cyclically composable."""
    def cyclic(t):
        return all(G.source[t[i]] == G.target[t[(i + 1) % len(t)]]
                   for i in range(len(t)))
    return Chain(c.algebra, c.degree,
                 {t: v for t, v in c.coeffs.items() if cyclic(t)})


def verify_reduction_chain_map(G: FiniteGroupoid, k_max: int = 2) -> dict:
    """p b = b p exhaustively on basis chains in degrees <= k_max."""
    from .homology import hochschild_b
    A = convolution_algebra(G)
    failures = []
    for k in range(1, k_max + 1):
        def tensors(prefix):
            if len(prefix) == k + 1:
                yield tuple(prefix)
                return
            for g in range(G.n_arrows):
                yield from tensors(prefix + [g])
        for t in tensors([]):
            c = Chain(A, k, {t: Fraction(1)})
            lhs = reduction_to_loops(hochschild_b(c), G)
            rhs = hochschild_b(reduction_to_loops(c, G))
            if lhs != rhs:
                failures.append((k, t))
    return {"failures": failures, "ok": not failures}


def _loop_hh0(G: FiniteGroupoid, sector_members=None) -> int:
    """HH_0 of the loop-restricted complex: loops modulo boundaries of
    B^(1), optionally cut to a single sector."""
    from .homology import hochschild_b
    A = convolution_algebra(G)
    keep = None if sector_members is None else set(sector_members)
    ech = Echelon()
    for (g0, g1) in burghelea_space(G, 1):
        img = reduction_to_loops(
            hochschild_b(Chain(A, 1, {(g0, g1): Fraction(1)})), G)
        row = {t[0]: v for t, v in img.coeffs.items()
               if keep is None or t[0] in keep}
        if row:
            ech.insert(row)
    count = len(loops(G)) if keep is None else len(keep)
    return count - ech.rank


def object_orbits(G: FiniteGroupoid) -> list:
    unseen = set(range(G.n_objects))
    orbits = []
    while unseen:
        x = min(unseen)
        orbit = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for g in range(G.n_arrows):
                if G.source[g] == y and G.target[g] not in orbit:
                    orbit.add(G.target[g])
                    frontier.append(G.target[g])
        unseen -= orbit
        orbits.append(tuple(sorted(orbit)))
    return orbits


def isotropy_conjugacy_count(G: FiniteGroupoid, x: int) -> int:
    """Number of conjugacy classes of the isotropy group at object x."""
    iso = [g for g in range(G.n_arrows)
           if G.source[g] == x and G.target[g] == x]
    unseen = set(iso)
    count = 0
    for rep in iso:
        if rep not in unseen:
            continue
        members = {G.compose[(G.compose[(h, rep)], G.inverse[h])]
                   for h in iso}
        unseen -= members
        count += 1
    return count


def verify_sector_decomposition(G: FiniteGroupoid) -> dict:
    """HH_0 of the convolution algebra = #sectors = sum over object orbits
    of the number of isotropy conjugacy classes; the per-sector cuts of the
    loop complex each contribute their share of the total."""
    A = convolution_algebra(G)
    hh0 = hh_dimensions(A, 0)[0]
    secs = sectors(G)
    orbit_sum = sum(isotropy_conjugacy_count(G, orbit[0])
                    for orbit in object_orbits(G))
    loop_hh0 = _loop_hh0(G)
    per_sector = [_loop_hh0(G, s.members) for s in secs]
    ok = (hh0 == len(secs) == orbit_sum
          and loop_hh0 == hh0 and sum(per_sector) == loop_hh0)
    return {"hh0": hh0, "sectors": len(secs), "orbit_conjugacy_sum": orbit_sum,
            "loop_hh0": loop_hh0, "per_sector": per_sector, "ok": ok}
