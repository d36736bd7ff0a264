"""Tooth-count geometry of the 2K-H input stage, the K-H-V cycloid output
stage, and the 3K-H-V train that chains them on one carrier.

Tooth counts are the canonical representation. Pitch radii are derived as
exact rationals at unit module (r = z/2), so every ratio built from them is
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import NamedTuple


class GeometryError(ValueError):
    """Raised when an operation receives geometry that violates a constraint."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class Violation(NamedTuple):
    name: str        # short constraint id, e.g. "coaxiality"
    constraint: str  # the equation that failed
    detail: str

    def __str__(self):
        return f"{self.name} ({self.constraint}): {self.detail}"


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def names(self) -> list[str]:
        return [v.name for v in self.violations]

    def __bool__(self):
        return self.ok


def _is_count(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class PlanetaryStageGeometry:
    """Involute 2K-H stage: sun S, planets P1, fixed ring R1, carrier H."""

    z_s: int
    z_p1: int
    z_r1: int
    n_planets: int = 3

    @property
    def radii(self) -> dict[str, Fraction]:
        r_s = Fraction(self.z_s, 2)
        r_p1 = Fraction(self.z_p1, 2)
        return {
            "s": r_s,
            "p1": r_p1,
            "r1": Fraction(self.z_r1, 2),
            "h1": r_s + r_p1,
        }


@dataclass(frozen=True)
class CycloidStageGeometry:
    """K-H-V stage: cycloid disc P2 meshing with a pin-wheel of z_r2 pins."""

    z_p2: int
    z_r2: int

    @property
    def radii(self) -> dict[str, Fraction]:
        r_r2 = Fraction(self.z_r2, 2)
        r_p2 = Fraction(self.z_p2, 2)
        # carrier radius is the eccentricity
        return {"p2": r_p2, "r2": r_r2, "h2": r_r2 - r_p2}


@dataclass(frozen=True)
class CompoundTrainGeometry:
    input_stage: PlanetaryStageGeometry
    output_stage: CycloidStageGeometry

    @classmethod
    def from_counts(cls, z_s, z_p1, z_r1, z_p2, z_r2, n_planets=3):
        return cls(
            PlanetaryStageGeometry(z_s, z_p1, z_r1, n_planets),
            CycloidStageGeometry(z_p2, z_r2),
        )

    @property
    def counts(self) -> tuple[int, int, int, int, int]:
        a, b = self.input_stage, self.output_stage
        return (a.z_s, a.z_p1, a.z_r1, b.z_p2, b.z_r2)


MESH_FIELDS = ("eta_sp1", "eta_p1r1", "eta_r1p1", "eta_p1s", "eta_r2p2", "eta_p2r2")


@dataclass(frozen=True)
class MeshEfficiencySet:
    """Directional per-mesh efficiencies, each in (0, 1].

    The forward 2K-H path uses eta_sp1 and eta_p1r1, the backward path
    eta_r1p1 and eta_p1s; the K-H-V stage uses eta_r2p2 forward and eta_p2r2
    backward. Values may be floats or Fractions; Fractions keep every
    downstream efficiency exact.
    """

    eta_sp1: Real = 1.0
    eta_p1r1: Real = 1.0
    eta_r1p1: Real = 1.0
    eta_p1s: Real = 1.0
    eta_r2p2: Real = 1.0
    eta_p2r2: Real = 1.0

    def __post_init__(self):
        for name in MESH_FIELDS:
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, Real):
                raise TypeError(f"{name} must be a real number, got {value!r}")
            if not (0 < value <= 1):
                raise ValueError(f"{name} must lie in (0, 1], got {value!r}")

    @classmethod
    def uniform(cls, eta: Real) -> "MeshEfficiencySet":
        return cls(*([eta] * len(MESH_FIELDS)))

    def as_dict(self) -> dict[str, Real]:
        return {name: getattr(self, name) for name in MESH_FIELDS}


def _count_violations(pairs) -> list[Violation]:
    out = []
    for name, value in pairs:
        if not _is_count(value) or value < 1:
            out.append(Violation("positive-count", f"{name} >= 1", f"{name}={value!r}"))
    return out


def validate_planetary(
    geom: PlanetaryStageGeometry, *, check_interference: bool = False
) -> ValidationResult:
    """Check coaxiality, equal-spacing assembly and (optionally) planet clearance.

    Violations are returned as data; nothing is raised.
    """
    violations = _count_violations(
        [("z_s", geom.z_s), ("z_p1", geom.z_p1), ("z_r1", geom.z_r1), ("n_planets", geom.n_planets)]
    )
    if violations:
        return ValidationResult(tuple(violations))

    if geom.z_r1 != geom.z_s + 2 * geom.z_p1:
        violations.append(Violation(
            "coaxiality",
            "z_r1 = z_s + 2*z_p1",
            f"{geom.z_s} + 2*{geom.z_p1} = {geom.z_s + 2 * geom.z_p1} != {geom.z_r1}",
        ))
    if (geom.z_s + geom.z_r1) % geom.n_planets:
        violations.append(Violation(
            "assembly",
            "(z_s + z_r1) mod n_planets = 0",
            f"({geom.z_s} + {geom.z_r1}) mod {geom.n_planets} = "
            f"{(geom.z_s + geom.z_r1) % geom.n_planets}",
        ))
    if check_interference and geom.n_planets > 1:
        # tip circles of neighbouring planets must not touch
        clearance = (geom.z_s + geom.z_p1) * math.sin(math.pi / geom.n_planets)
        if not geom.z_p1 + 2 < clearance:
            violations.append(Violation(
                "planet-interference",
                "z_p1 + 2 < (z_s + z_p1)*sin(pi/n_planets)",
                f"{geom.z_p1 + 2} >= {clearance:.6g}",
            ))
    return ValidationResult(tuple(violations))


def validate_cycloid(geom: CycloidStageGeometry) -> ValidationResult:
    violations = _count_violations([("z_p2", geom.z_p2), ("z_r2", geom.z_r2)])
    if violations:
        return ValidationResult(tuple(violations))
    if geom.z_r2 - geom.z_p2 != 1:
        violations.append(Violation(
            "one-tooth-difference",
            "z_r2 - z_p2 = 1",
            f"{geom.z_r2} - {geom.z_p2} = {geom.z_r2 - geom.z_p2}",
        ))
    return ValidationResult(tuple(violations))


def validate_train(
    train: CompoundTrainGeometry, *, check_interference: bool = False
) -> ValidationResult:
    return ValidationResult(
        validate_planetary(train.input_stage, check_interference=check_interference).violations
        + validate_cycloid(train.output_stage).violations
    )


def require_valid(geom) -> None:
    """Raise GeometryError unless ``geom`` passes its validator."""
    if isinstance(geom, PlanetaryStageGeometry):
        result = validate_planetary(geom)
    elif isinstance(geom, CycloidStageGeometry):
        result = validate_cycloid(geom)
    elif isinstance(geom, CompoundTrainGeometry):
        result = validate_train(geom)
    else:
        raise TypeError(f"not a stage or train geometry: {type(geom).__name__}")
    if not result.ok:
        raise GeometryError(result.violations)
