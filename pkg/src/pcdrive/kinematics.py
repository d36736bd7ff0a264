"""Component speeds (stationary and carrier frame) and reduction ratios.

Boundary conditions are fixed: the 2K-H ring R1 is grounded and the sun
drives; the K-H-V stage is driven by the carrier with the cycloid disc P2
held against spin by the output mechanism, so the pin-wheel R2 is the output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from .geometry import (
    CompoundTrainGeometry,
    CycloidStageGeometry,
    PlanetaryStageGeometry,
    require_valid,
)


@dataclass(frozen=True)
class SpeedState:
    """Angular velocities keyed by component: s, p1, r1, h, p2, r2.

    ``absolute`` is the stationary frame, ``carrier`` the frame rotating with
    H. Only the slots of the analysed stage(s) are present. Negative values
    mean rotation opposite to the input.
    """

    absolute: Mapping[str, object]
    carrier: Mapping[str, object]

    def __post_init__(self):
        object.__setattr__(self, "absolute", MappingProxyType(dict(self.absolute)))
        object.__setattr__(self, "carrier", MappingProxyType(dict(self.carrier)))

    def frame_shift_residuals(self) -> dict[str, object]:
        """omega_x^H - (omega_x - omega_h) for every component; all zero when consistent."""
        w_h = self.absolute["h"]
        return {k: self.carrier[k] - (self.absolute[k] - w_h) for k in self.absolute}


def planetary_speeds(geom: PlanetaryStageGeometry, omega_s) -> SpeedState:
    require_valid(geom)
    r = geom.radii
    r_s, r_p1, r_r1 = r["s"], r["p1"], r["r1"]

    w_h = r_s / (2 * r_p1 + 2 * r_s) * omega_s
    # planet spin follows from pitch-point rolling against the fixed ring
    w_p1 = -r_s / (2 * r_p1) * omega_s
    absolute = {"s": omega_s * 1, "p1": w_p1, "r1": 0 * omega_s, "h": w_h}
    carrier = {
        "s": r_r1 / (r_r1 + r_s) * omega_s,
        "p1": -r_s * (2 * r_p1 + r_s) / (2 * r_p1 * (r_p1 + r_s)) * omega_s,
        "r1": -r_s / (r_r1 + r_s) * omega_s,
        "h": 0 * omega_s,
    }
    return SpeedState(absolute, carrier)


def khv_speeds(geom: CycloidStageGeometry, omega_h) -> SpeedState:
    require_valid(geom)
    r = geom.radii
    r_p2, r_r2 = r["p2"], r["r2"]

    absolute = {"h": omega_h * 1, "p2": 0 * omega_h, "r2": (r_r2 - r_p2) / r_r2 * omega_h}
    carrier = {
        "h": 0 * omega_h,
        "p2": -omega_h,
        "r2": -r_p2 / r_r2 * omega_h,
    }
    return SpeedState(absolute, carrier)


def compound_speeds(train: CompoundTrainGeometry, omega_s) -> SpeedState:
    """Speeds of all six components with the sun as input; H is shared."""
    first = planetary_speeds(train.input_stage, omega_s)
    second = khv_speeds(train.output_stage, first.absolute["h"])
    return SpeedState(
        {**first.absolute, **second.absolute},
        {**first.carrier, **second.carrier},
    )


def planetary_ratio(geom: PlanetaryStageGeometry, *, validate: bool = True) -> Fraction:
    """omega_s / omega_h = (z_s + z_r1) / z_s."""
    if validate:
        require_valid(geom)
    return Fraction(geom.z_s + geom.z_r1, geom.z_s)


def khv_ratio(geom: CycloidStageGeometry, *, validate: bool = True) -> Fraction:
    """omega_h / omega_r2 = z_r2 / (z_r2 - z_p2), which is z_r2 for a valid stage."""
    if validate:
        require_valid(geom)
    return Fraction(geom.z_r2, geom.z_r2 - geom.z_p2)


def compound_ratio(train: CompoundTrainGeometry) -> Fraction:
    require_valid(train)
    return Fraction(train.output_stage.z_r2 * (train.input_stage.z_s + train.input_stage.z_r1),
                    train.input_stage.z_s)


def ratio_terms(train: CompoundTrainGeometry) -> dict[str, tuple[int, int]]:
    """Unreduced (numerator, denominator) of each ratio as written in tooth counts.

    Fraction normalises 7560/39 to 2520/13; reports quote the tooth-count form.
    """
    a, b = train.input_stage, train.output_stage
    return {
        "i_2kh": (a.z_s + a.z_r1, a.z_s),
        "i_khv": (b.z_r2, b.z_r2 - b.z_p2),
        "i_3khv": (b.z_r2 * (a.z_s + a.z_r1), a.z_s * (b.z_r2 - b.z_p2)),
    }
