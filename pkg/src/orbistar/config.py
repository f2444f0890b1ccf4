"""Scenario files: a TOML description of the group, bivector and caps
driving a verification run.  Command-line flags override file values.

Matrix entries may be integers, rational strings like "-3/2", or root-of-
unity literals like "z4^1" (the primitive N-th root to the k-th power,
with N dividing the scenario's cyclotomic order).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, fields

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from fractions import Fraction

from .groups import MatrixGroup, generate_group, identity_matrix
from .scalars import Cyclotomic
from .star import ConstantBivector


class ConfigError(ValueError):
    """A scenario file or flag value is malformed."""


_ROOT = re.compile(r"^(-?)z(\d+)(?:\^(-?\d+))?$")


def parse_scalar(value, order: int) -> Cyclotomic:
    """An integer, a rational string, or a root-of-unity literal zN^k."""
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, int):
        return Cyclotomic.from_rational(value, order)
    if not isinstance(value, str):
        raise ConfigError(f"unsupported scalar {value!r}")
    text = value.strip()
    m = _ROOT.match(text)
    if m:
        sign, sub, power = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        if sub <= 0 or order % sub:
            raise ConfigError(
                f"root order {sub} does not divide the scenario order {order}")
        out = Cyclotomic.root_of_unity((power * (order // sub)) % order, order)
        return -out if sign else out
    try:
        return Cyclotomic.from_rational(Fraction(text), order)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse scalar {value!r}: {exc}") from exc


def parse_matrix(rows, order: int) -> list:
    if not rows or any(len(r) != len(rows) for r in rows):
        raise ConfigError("matrix literals must be square")
    return [[parse_scalar(v, order) for v in row] for row in rows]


@dataclass
class Scenario:
    name: str = "scenario"
    order: int = 4
    dimension: int = 2
    generators: list = field(default_factory=list)
    bivector_matrix: list = None
    seed: int = 0
    degree_cap: int = 2
    hbar_order: int = 1
    k_max: int = 2
    slice_min: int = -2
    slice_max: int = 4
    samples: int = 25
    trials: int = 100

    def __post_init__(self):
        if self.order <= 0 or self.order % 2:
            raise ConfigError("cyclotomic order must be positive and even")
        for cap in (self.degree_cap, self.hbar_order, self.samples, self.trials):
            if cap < 1:
                raise ConfigError("caps and sample counts must be positive")
        if self.dimension < 1:
            raise ConfigError("dimension must be positive")

    def group(self) -> MatrixGroup:
        if not self.generators:
            return MatrixGroup(self.dimension, self.order,
                               [identity_matrix(self.dimension, self.order)])
        mats = [parse_matrix(g, self.order) for g in self.generators]
        for m in mats:
            if len(m) != self.dimension:
                raise ConfigError("generator size does not match dimension")
        return generate_group(mats, self.order)

    def bivector(self) -> ConstantBivector:
        if self.bivector_matrix is None:
            if self.dimension % 2:
                raise ConfigError(
                    "odd dimension needs an explicit bivector matrix")
            return ConstantBivector.standard_symplectic(
                self.dimension // 2, self.order)
        return ConstantBivector(parse_matrix(self.bivector_matrix, self.order),
                                self.order, symplectic=True)

    def echo(self) -> dict:
        return {
            "name": self.name, "order": self.order,
            "dimension": self.dimension, "seed": self.seed,
            "degree_cap": self.degree_cap, "hbar_order": self.hbar_order,
            "k_max": self.k_max, "slice_min": self.slice_min,
            "slice_max": self.slice_max, "samples": self.samples,
            "trials": self.trials,
        }


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "rb") as handle:
            data = tomllib.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    return scenario_from_dict(data)


def scenario_from_dict(data: dict) -> Scenario:
    known = {f.name for f in fields(Scenario)}
    flat = {}
    for key, value in data.items():
        if key == "group":
            flat["generators"] = value.get("generators", [])
        elif key == "bivector":
            if not value.get("standard", False):
                flat["bivector_matrix"] = value.get("matrix")
        elif key in known:
            flat[key] = value
        else:
            raise ConfigError(f"unknown scenario key {key!r}")
    try:
        return Scenario(**flat)
    except TypeError as exc:
        raise ConfigError(f"bad scenario fields: {exc}") from exc
