"""Command-line driver: binds a scenario (config file plus flag overrides)
to a verification suite and emits a canonical JSON or text report.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 invalid input.
Set ORBISTAR_REPORT_DIR to also write the report to <dir>/<subcommand>.json.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from .config import ConfigError, Scenario, load_scenario
from .report import Report, emit_report

REPORT_DIR_ENV = "ORBISTAR_REPORT_DIR"

PRESET_GROUPS = {
    "trivial": [],
    "z2": [[[-1, 0], [0, -1]]],
    "z4": [[[0, -1], [1, 0]]],
    "reflection": [[[1, 0], [0, -1]]],
}

PRESET_GROUPOIDS = {
    "z2-pt": (1, [[0], [0]], [[0, 1], [1, 0]]),
    "z2-swap": (2, [[0, 1], [1, 0]], [[0, 1], [1, 0]]),
    "s3-3": None,  # built below
}


def _s3_preset():
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(3))] for q in perms]
             for p in perms]
    return 3, [list(p) for p in perms], table


def _scenario(args) -> Scenario:
    scenario = load_scenario(args.config) if args.config else Scenario()
    if getattr(args, "group", None):
        if args.group not in PRESET_GROUPS:
            raise ConfigError(f"unknown group preset {args.group!r}")
        scenario.generators = PRESET_GROUPS[args.group]
        scenario.name = args.group
    for flag, attr in (("seed", "seed"), ("degree_cap", "degree_cap"),
                       ("hbar_order", "hbar_order"), ("dim", "dimension"),
                       ("samples", "samples"), ("trials", "trials"),
                       ("k_max", "k_max")):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(scenario, attr, value)
    return scenario


def _rng(scenario: Scenario) -> random.Random:
    return random.Random(scenario.seed)


# -- suites ------------------------------------------------------------------


def run_trace_table(scenario: Scenario, report: Report):
    from .groups import conjugacy_classes
    from .poly import Polynomial
    from .traces import build_trace_spec, full_twisted_trace, \
        trace_space_dimension
    group = scenario.group()
    pi = scenario.bivector()
    classes = conjugacy_classes(group)
    table = []
    for cls in classes:
        gamma = cls.representative
        if gamma == group.identity:
            table.append({"class": gamma, "identity": True})
            continue
        spec = build_trace_spec(group, gamma, pi)
        entry = {"class": gamma, "fixed_dim": spec.fixed_dim,
                 "det_norm": spec.det_norm,
                 "eigenvalues": spec.eigenvalues}
        if spec.fixed_dim == 0:
            one = Polynomial.one(group.dimension, group.order)
            entry["trace_of_one"] = full_twisted_trace(one, spec)
        table.append(entry)
    report.add("trace-table", "per-class normalization and tau(1)",
               True, {"classes": table})
    dims = trace_space_dimension(group, pi, scenario.degree_cap,
                                 scenario.hbar_order)
    report.add("trace-dimension", "codimension of the commutator span",
               dims["stable"], dims)


def run_verify_traces(scenario: Scenario, report: Report):
    from .groups import conjugacy_classes
    from .sampling import random_polynomial
    from .traces import build_trace_spec, verify_twisted_trace_axioms
    group = scenario.group()
    pi = scenario.bivector()
    rng = _rng(scenario)
    specs = {cls.representative: build_trace_spec(group, cls.representative, pi)
             for cls in conjugacy_classes(group)
             if cls.representative != group.identity}
    if not specs:
        report.skip("trace-axioms", "twisted trace axioms",
                    "the trivial group has no twisted sectors")
        return
    pairs = [(random_polynomial(rng, group.dimension, group.order,
                                scenario.degree_cap),
              random_polynomial(rng, group.dimension, group.order,
                                scenario.degree_cap))
             for _ in range(scenario.samples)]
    result = verify_twisted_trace_axioms(group, pi, specs, pairs)
    report.add("trace-axioms", "tau(f * f') = tau(f' * gamma.f) and "
               "conjugation covariance", result["ok"], result)


def run_koszul(scenario: Scenario, report: Report):
    from .groups import conjugacy_classes
    from .koszul import compare, convolution_cohomology_report
    group = scenario.group()
    slices = range(scenario.slice_min, scenario.slice_max + 1)
    for cls in conjugacy_classes(group):
        gamma = group.element(cls.representative)
        result = compare(gamma, scenario.order, scenario.k_max, slices)
        report.add(f"koszul-class-{cls.representative}",
                   "computed slice cohomology = fixed-space multivectors",
                   result["ok"],
                   {"computed": result["computed"],
                    "predicted": result["predicted"],
                    "mismatches": result["mismatches"]})
    totals = convolution_cohomology_report(group, scenario.k_max, slices)
    report.add("koszul-invariant-total", "per-class invariant sum",
               True, totals["total"])


def _algebra_from_name(name: str):
    from .homology import (cyclic_group_table, group_algebra, matrix_algebra,
                           truncated_polynomial_algebra)
    kind, _, arg = name.partition(":")
    if kind == "matrix":
        return matrix_algebra(int(arg or 2))
    if kind == "group":
        return group_algebra(cyclic_group_table(int(arg or 2)))
    if kind == "truncpoly":
        return truncated_polynomial_algebra(int(arg or 3))
    raise ConfigError(f"unknown algebra {name!r}; use matrix:<n>, "
                      "group:<n> or truncpoly:<m>")


def _load_algebra_file(path: str):
    """A JSON algebra description: basis labels, structure constants as
    [i, j, k, coeff] quadruples, and the unit as [k, coeff] pairs; coeffs
    are integers or rational strings."""
    import json

    from .homology import FiniteDimAlgebra
    try:
        with open(path) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read algebra file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed algebra file {path}: {exc}") from exc
    try:
        labels = list(data["labels"])
        dim = len(labels)
        mult = [[{} for _ in range(dim)] for _ in range(dim)]
        for i, j, k, coeff in data["products"]:
            mult[i][j][k] = Fraction(coeff)
        unit = {k: Fraction(coeff) for k, coeff in data["unit"]}
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"bad algebra description in {path}: {exc}") from exc
    try:
        return FiniteDimAlgebra(mult, unit, labels=labels)
    except ValueError as exc:
        raise ConfigError(f"algebra axioms fail in {path}: {exc}") from exc


def _load_groupoid_file(path: str):
    """A JSON groupoid description: object count, source/target/unit/inverse
    tables and the composition as [g1, g2, g] triples."""
    import json

    from .groupoids import GroupoidError, validate_groupoid
    try:
        with open(path) as handle:
            data = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read groupoid file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed groupoid file {path}: {exc}") from exc
    try:
        compose = {(g1, g2): g for g1, g2, g in data["compose"]}
        return validate_groupoid(data["objects"], data["source"],
                                 data["target"], data["unit"],
                                 data["inverse"], compose)
    except GroupoidError as exc:
        raise ConfigError(f"groupoid axioms fail in {path}: {exc}") from exc
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ConfigError(f"bad groupoid description in {path}: {exc}") from exc


def run_hochschild(scenario: Scenario, report: Report, algebra_name: str,
                   algebra_file: str = None):
    from .homology import hc_dimensions, hh_dimensions
    if algebra_file:
        algebra = _load_algebra_file(algebra_file)
        algebra_name = algebra_file
    else:
        algebra = _algebra_from_name(algebra_name)
    k_max = scenario.k_max
    hh = hh_dimensions(algebra, k_max)
    hc = hc_dimensions(algebra, k_max)
    report.add("hochschild-dimensions", "ranks of the b-complex", True,
               {"algebra": algebra_name, "hh": hh, "hc": hc, "k_max": k_max})


def run_groupoid(scenario: Scenario, report: Report, action: str,
                 groupoid_file: str = None):
    from .groupoids import (inertia_groupoid, transformation_groupoid,
                            verify_reduction_chain_map,
                            verify_sector_decomposition)
    if groupoid_file:
        G = _load_groupoid_file(groupoid_file)
    else:
        preset = PRESET_GROUPOIDS.get(action)
        if action == "s3-3":
            preset = _s3_preset()
        if preset is None:
            raise ConfigError(f"unknown groupoid preset {action!r}; choose "
                              f"from {sorted(PRESET_GROUPOIDS)}")
        points, perms, table = preset
        G = transformation_groupoid(points, perms, table)
    decomposition = verify_sector_decomposition(G)
    report.add("sector-decomposition", "HH_0 = #sectors = sum #Conj(isotropy)",
               decomposition["ok"], decomposition)
    chain_map = verify_reduction_chain_map(G, min(scenario.k_max, 2))
    report.add("reduction-chain-map", "restriction to loops commutes with b",
               chain_map["ok"], chain_map)
    inertia = inertia_groupoid(G)
    report.add("inertia-theta", "theta is central with finite orders",
               inertia.theta_central(),
               {"objects": inertia.groupoid.n_objects,
                "arrows": inertia.groupoid.n_arrows,
                "theta_orders": inertia.theta_orders()})


def run_poisson(scenario: Scenario, report: Report, k: int):
    from .poisson import brylinski_delta, verify_brylinski_compat
    from .poly import de_rham_d
    from .sampling import random_form
    pi = scenario.bivector()
    rng = _rng(scenario)
    nvars = scenario.dimension
    samples = [random_form(rng, nvars, scenario.order, k)
               for _ in range(scenario.samples)]
    square_ok = all(not brylinski_delta(brylinski_delta(w, pi), pi)
                    for w in samples if w.degree >= 2)
    anti_ok = all(not (de_rham_d(brylinski_delta(w, pi))
                       + brylinski_delta(de_rham_d(w), pi))
                  for w in samples if w.degree < nvars)
    compat = verify_brylinski_compat(pi, samples, k)
    report.add("delta-squared", "delta^2 = 0", square_ok, {})
    report.add("delta-anticommutes", "d delta + delta d = 0", anti_ok, {})
    report.add("brylinski-compat", "fitted constant = 2 (k-1)!",
               compat["ok"] and compat["matches_expected"], compat)


def run_operation_identity(scenario: Scenario, report: Report,
                           algebra_name: str):
    from .homology import verify_operation_identity
    algebra = _algebra_from_name(algebra_name)
    rng = _rng(scenario)
    result = verify_operation_identity(algebra, scenario.trials, rng)
    report.add("operation-identity",
               "d_phi d_psi -+ d_psi d_phi = d_[phi,psi]",
               result["ok"], {"algebra": algebra_name,
                              "checked": result["checked"],
                              "failures": result["failures"]})


def run_star_check(scenario: Scenario, report: Report):
    from .poly import Polynomial
    from .sampling import random_polynomial
    from .scalars import HbarSeries
    from .star import moyal_product, star_inv_sqrt, verify_associativity
    pi = scenario.bivector()
    rng = _rng(scenario)
    nvars, order = scenario.dimension, scenario.order
    triples = [tuple(random_polynomial(rng, nvars, order, scenario.degree_cap)
                     for _ in range(3)) for _ in range(scenario.samples)]
    assoc = verify_associativity(triples, pi)
    report.add("moyal-associativity", "(f*g)*h = f*(g*h)", assoc["ok"], assoc)
    inv_ok = True
    cap = scenario.hbar_order
    one = Polynomial.one(nvars, order)
    hbar = HbarSeries.hbar(order)
    for _ in range(5):
        a = one + random_polynomial(rng, nvars, order,
                                    scenario.degree_cap) * hbar
        b = star_inv_sqrt(a, pi, cap)
        product = moyal_product(moyal_product(b, b, pi), a, pi)
        if not product.agrees_with(one, up_to=cap):
            inv_ok = False
    report.add("star-inverse-sqrt", "b*b*a = 1 through the retained orders",
               inv_ok, {"hbar_order": cap})


# -- driver ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orbistar",
        description="exact verification suites for star products, twisted "
                    "traces, Koszul cohomology and groupoid homology")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group_flag=True):
        p.add_argument("--config", help="scenario TOML file")
        p.add_argument("--seed", type=int)
        p.add_argument("--degree-cap", dest="degree_cap", type=int)
        p.add_argument("--hbar-order", dest="hbar_order", type=int)
        p.add_argument("--dim", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--k-max", dest="k_max", type=int)
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="fmt", action="store_const",
                         const="json")
        fmt.add_argument("--text", dest="fmt", action="store_const",
                         const="text")
        p.set_defaults(fmt="json")
        if group_flag:
            p.add_argument("--group", choices=sorted(PRESET_GROUPS))

    common(sub.add_parser("trace-table"))
    common(sub.add_parser("verify-traces"))
    common(sub.add_parser("koszul-cohomology"))
    p = sub.add_parser("hochschild")
    common(p, group_flag=False)
    p.add_argument("--algebra", default="matrix:2")
    p.add_argument("--algebra-file", dest="algebra_file",
                   help="JSON structure-constant description")
    p = sub.add_parser("groupoid-hh")
    common(p, group_flag=False)
    p.add_argument("--action", default="z2-swap")
    p.add_argument("--groupoid-file", dest="groupoid_file",
                   help="JSON structure-table description")
    p = sub.add_parser("poisson-check")
    common(p, group_flag=False)
    p.add_argument("--k", type=int, default=1)
    p = sub.add_parser("operation-identity")
    common(p, group_flag=False)
    p.add_argument("--algebra", default="matrix:2")
    common(sub.add_parser("star-check"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        scenario = _scenario(args)
        report = Report(scenario.echo())
        if args.command == "trace-table":
            run_trace_table(scenario, report)
        elif args.command == "verify-traces":
            run_verify_traces(scenario, report)
        elif args.command == "koszul-cohomology":
            run_koszul(scenario, report)
        elif args.command == "hochschild":
            run_hochschild(scenario, report, args.algebra, args.algebra_file)
        elif args.command == "groupoid-hh":
            run_groupoid(scenario, report, args.action, args.groupoid_file)
        elif args.command == "poisson-check":
            run_poisson(scenario, report, args.k)
        elif args.command == "operation-identity":
            run_operation_identity(scenario, report, args.algebra)
        elif args.command == "star-check":
            run_star_check(scenario, report)
    except (ConfigError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    payload = emit_report(report, args.fmt)
    sys.stdout.write(payload.decode())
    report_dir = os.environ.get(REPORT_DIR_ENV)
    if report_dir:
        os.makedirs(report_dir, exist_ok=True)
        path = os.path.join(report_dir, f"{args.command}.json")
        with open(path, "wb") as handle:
            handle.write(emit_report(report, "json"))
    return 0 if report.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
