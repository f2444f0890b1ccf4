"""End-to-end acceptance suite: one test (and one printed pass/fail line)
per headline criterion.  Everything is exact — tolerance zero."""

import random
from fractions import Fraction

from orbistar.groups import generate_group
from orbistar.groupoids import (transformation_groupoid,
                                verify_reduction_chain_map,
                                verify_sector_decomposition)
from orbistar.homology import (Chain, cyclic_group_table, function_algebra,
                               group_algebra, hc_dimensions, hochschild_b,
                               invariant_cohomology_compare, matrix_algebra,
                               multiplication_cochain, cochain_action,
                               truncated_polynomial_algebra,
                               verify_cyclic_identities,
                               verify_operation_identity, FiniteDimAlgebra)
from orbistar.koszul import compare
from orbistar.poisson import verify_brylinski_compat, brylinski_delta
from orbistar.poly import Polynomial, de_rham_d
from orbistar.sampling import random_form, random_polynomial
from orbistar.scalars import Cyclotomic, HbarSeries
from orbistar.star import (ConstantBivector, moyal_product, star_commutator,
                           star_inv_sqrt, verify_associativity)
from orbistar.traces import (build_trace_spec, trace_space_dimension,
                             verify_twisted_trace_axioms)

ORDER = 4
PI2 = ConstantBivector.standard_symplectic(1, ORDER)
PI4 = ConstantBivector.standard_symplectic(2, ORDER)


def cyc(rows):
    return [[Cyclotomic.from_rational(v, ORDER) for v in row] for row in rows]


def record(number: int, name: str, ok: bool, detail=""):
    status = "PASS" if ok else "FAIL"
    tail = f"  ({detail})" if detail else ""
    print(f"[{status}] criterion {number:2d}: {name}{tail}")
    assert ok, f"criterion {number}: {name}{tail}"


def test_criterion_01_moyal_associativity():
    rng = random.Random(101)
    failures = 0
    for nvars, pi in ((2, PI2), (4, PI4)):
        triples = [tuple(random_polynomial(rng, nvars, ORDER, 5)
                         for _ in range(3)) for _ in range(50)]
        report = verify_associativity(triples, pi)
        failures += len(report["failures"])
    record(1, "Moyal associativity on 100 random degree-5 triples",
           failures == 0, f"failures={failures}")


def test_criterion_02_commutator_and_semiclassical_term():
    rng = random.Random(102)
    x = Polynomial.variable(0, 2, ORDER)
    p = Polynomial.variable(1, 2, ORDER)
    i_hbar = Polynomial.constant(
        HbarSeries.from_cyclotomic(Cyclotomic.imaginary_unit(ORDER))
        * HbarSeries.hbar(ORDER), 2, ORDER)
    ok = star_commutator(x, p, PI2) == i_hbar
    half_i = HbarSeries.from_cyclotomic(
        Cyclotomic.imaginary_unit(ORDER) * Fraction(1, 2))
    bad = 0
    for _ in range(50):
        f = random_polynomial(rng, 2, ORDER, 4)
        g = random_polynomial(rng, 2, ORDER, 4)
        product = moyal_product(f, g, PI2)
        if product.hbar_coefficient(0) != f * g:
            bad += 1
        elif product.hbar_coefficient(1) != PI2.bracket(f, g) * half_i:
            bad += 1
    record(2, "[x,p] = i hbar and order-1 term = (i/2) hbar Pi(f,g)",
           ok and bad == 0, f"pairs_failed={bad}")


def test_criterion_03_twisted_trace_axiom():
    rng = random.Random(103)
    cases = [
        ("minus-one on C", generate_group([cyc([[-1, 0], [0, -1]])], ORDER),
         PI2, 2),
        ("i on C", generate_group([cyc([[0, -1], [1, 0]])], ORDER), PI2, 2),
        ("minus-identity on C^2",
         generate_group([cyc([[-1, 0, 0, 0], [0, -1, 0, 0],
                              [0, 0, -1, 0], [0, 0, 0, -1]])], ORDER),
         PI4, 4),
    ]
    all_ok = True
    for label, group, pi, nvars in cases:
        specs = {g: build_trace_spec(group, g, pi)
                 for g in range(len(group)) if g != group.identity}
        pairs = [(random_polynomial(rng, nvars, ORDER, 5),
                  random_polynomial(rng, nvars, ORDER, 5))
                 for _ in range(100)]
        result = verify_twisted_trace_axioms(group, pi, specs, pairs)
        all_ok = all_ok and result["ok"]
    record(3, "twisted trace axiom, 100 degree-5 pairs per rotation", all_ok)


def test_criterion_04_trace_classification():
    cases = [
        ("trivial", generate_group([cyc([[1, 0], [0, 1]])], ORDER), 0, 1),
        ("Z/2", generate_group([cyc([[-1, 0], [0, -1]])], ORDER), 1, 2),
        ("Z/4", generate_group([cyc([[0, -1], [1, 0]])], ORDER), 3, 4),
    ]
    all_ok = True
    details = []
    for label, group, expected, compact in cases:
        report = trace_space_dimension(group, PI2, 2, 1)
        good = (report["stable"] and report["dimension"] == expected
                and report["compact_support_prediction"] == compact)
        all_ok = all_ok and good
        details.append(f"{label}:{report['dimension']}")
    record(4, "trace space dimensions 0/1/3, compact predictions 1/2/4",
           all_ok, " ".join(details))


def test_criterion_05_operation_identity():
    rng = random.Random(105)
    all_ok = True
    checked = 0
    for algebra in (matrix_algebra(2), truncated_polynomial_algebra(3)):
        result = verify_operation_identity(algebra, 54, rng)
        all_ok = all_ok and result["ok"]
        checked += result["checked"]
    record(5, "d_phi d_psi -+ d_psi d_phi = d_[phi,psi] over both algebras",
           all_ok and checked >= 100, f"instances={checked}")


def test_criterion_06_multiplication_cochain_is_b():
    rng = random.Random(106)
    all_ok = True
    for A in (matrix_algebra(2), truncated_polynomial_algebra(3)):
        m = multiplication_cochain(A)
        for k in range(1, 4):
            for _ in range(10):
                t = tuple(rng.randrange(A.dim) for _ in range(k + 1))
                c = Chain(A, k, {t: Fraction(rng.randrange(-3, 4) or 1)})
                if cochain_action(m, c) != hochschild_b(c):
                    all_ok = False
    record(6, "d_m equals the Hochschild boundary b on random chains", all_ok)


def test_criterion_07_brylinski_suite():
    rng = random.Random(107)
    all_ok = True
    for nvars, pi in ((2, PI2), (4, PI4)):
        for _ in range(50):
            degree = rng.randrange(1, min(nvars, 3) + 1)
            omega = random_form(rng, nvars, ORDER, degree)
            if brylinski_delta(brylinski_delta(omega, pi), pi):
                all_ok = False
            if omega.degree < nvars:
                anti = de_rham_d(brylinski_delta(omega, pi)) \
                    + brylinski_delta(de_rham_d(omega), pi)
                if anti:
                    all_ok = False
    constants = []
    for pi, nvars in ((PI2, 2), (PI4, 4)):
        for k in (1, 2):
            samples = [random_form(rng, nvars, ORDER, k) for _ in range(10)]
            result = verify_brylinski_compat(pi, samples, k)
            good = result["ok"] and result["matches_expected"]
            all_ok = all_ok and good
            constants.append(str(result["expected"]))
    record(7, "delta^2 = 0, d delta + delta d = 0, constant = 2(k-1)!",
           all_ok, f"constants={','.join(constants)}")


def test_criterion_08_koszul_cohomology():
    slices = range(-2, 7)  # polynomial degree s + k reaches 8 at k = 2
    minus = compare(cyc([[-1, 0], [0, -1]]), ORDER, 2, slices)
    reflect = compare(cyc([[1, 0], [0, -1]]), ORDER, 2, slices)
    shape_minus = (minus["computed"][-2] == [0, 0, 1]
                   and all(minus["computed"][s] == [0, 0, 0]
                           for s in slices if s != -2))
    shape_reflect = (all(reflect["computed"][s][1] == 1
                         for s in slices if s >= -1)
                     and all(reflect["computed"][s][2] == 1 for s in slices)
                     and all(reflect["computed"][s][0] == 0 for s in slices))
    ok = minus["ok"] and reflect["ok"] and shape_minus and shape_reflect
    record(8, "Koszul slice cohomology matches the fixed-space prediction",
           ok)


def test_criterion_09_groupoid_suite():
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
    index = {p: i for i, p in enumerate(perms)}
    s3_table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms]
                for p in perms]
    z2 = cyclic_group_table(2)
    cases = [
        (transformation_groupoid(1, [[0], [0]], z2), 2),
        (transformation_groupoid(2, [[0, 1], [1, 0]], z2), 1),
        (transformation_groupoid(3, [list(p) for p in perms], s3_table), 2),
    ]
    all_ok = True
    values = []
    for G, expected in cases:
        decomposition = verify_sector_decomposition(G)
        chain_map = verify_reduction_chain_map(G, 2)
        good = (decomposition["ok"] and chain_map["ok"]
                and decomposition["hh0"] == expected)
        all_ok = all_ok and good
        values.append(str(decomposition["hh0"]))
    record(9, "HH_0 = #sectors = sum #Conj(isotropy); loop reduction is a "
           "chain map", all_ok, f"hh0={','.join(values)}")


def test_criterion_10_cyclic_object_identities():
    rng = random.Random(110)
    m2 = matrix_algebra(2)
    algebras = [
        group_algebra(cyclic_group_table(2)),
        group_algebra(cyclic_group_table(2),
                      automorphism=[{0: Fraction(1)}, {1: Fraction(-1)}]),
        m2,
        FiniteDimAlgebra(
            m2.mult, m2.unit,
            automorphism=[{i: Fraction(-1) if (i // 2 + i % 2) % 2
                           else Fraction(1)} for i in range(4)]),
    ]
    all_ok = all(verify_cyclic_identities(A, 3, rng, trials=3)["ok"]
                 for A in algebras)
    hc = hc_dimensions(function_algebra(1), 4)
    all_ok = all_ok and hc == [1, 0, 1, 0, 1]
    record(10, "cyclic identities for alpha of orders 1 and 2; HC of the "
           "ground field", all_ok, f"hc={hc}")


def test_criterion_11_invariant_cohomology_comparison():
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
    index = {p: i for i, p in enumerate(perms)}
    s3_table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms]
                for p in perms]
    z2 = cyclic_group_table(2)
    cases = [
        (1, [[0], [0]], z2),
        (2, [[0, 1], [1, 0]], z2),
        (2, [[0, 1], [0, 1]], z2),     # trivial action on two points
        (3, [list(p) for p in perms], s3_table),
    ]
    all_ok = True
    for points, perm_list, table in cases:
        result = invariant_cohomology_compare(points, perm_list, table, 2)
        all_ok = all_ok and result["ok"]
    record(11, "dim HH^k(C[S] x| Gamma) = dim HH^k(C[S], C[S] x| Gamma)^Gamma "
           "for k <= 2", all_ok)


def test_criterion_12_star_inverse_square_root():
    rng = random.Random(112)
    one = Polynomial.one(2, ORDER)
    hbar = HbarSeries.hbar(ORDER)
    bad = 0
    for _ in range(20):
        a = one + random_polynomial(rng, 2, ORDER, 2) * hbar
        b = star_inv_sqrt(a, PI2, 5)
        product = moyal_product(moyal_product(b, b, PI2), a, PI2)
        if not product.agrees_with(one, up_to=5):
            bad += 1
    record(12, "b * b * a = 1 through hbar^5 for 20 random a = 1 + hbar p",
           bad == 0, f"failed={bad}")
