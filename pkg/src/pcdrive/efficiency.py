"""Closed-form mesh-loss efficiencies of each stage and of the compound train.

Only tooth-mesh losses are modelled. Backward efficiencies are returned raw:
a non-positive K-H-V backward value means the stage self-locks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    CompoundTrainGeometry,
    CycloidStageGeometry,
    MeshEfficiencySet,
    PlanetaryStageGeometry,
    require_valid,
)


def _check_mesh(mesh):
    if not isinstance(mesh, MeshEfficiencySet):
        raise TypeError(f"expected MeshEfficiencySet, got {type(mesh).__name__}")


def planetary_forward(geom: PlanetaryStageGeometry, mesh: MeshEfficiencySet):
    """Sun-to-carrier efficiency eta_sh."""
    require_valid(geom)
    _check_mesh(mesh)
    k = mesh.eta_sp1 * mesh.eta_p1r1
    return (k * geom.z_r1 + geom.z_s) / Fraction(geom.z_r1 + geom.z_s)


def planetary_backward(geom: PlanetaryStageGeometry, mesh: MeshEfficiencySet):
    """Carrier-to-sun efficiency eta_hs."""
    require_valid(geom)
    _check_mesh(mesh)
    k = mesh.eta_r1p1 * mesh.eta_p1s
    return k * (geom.z_r1 + geom.z_s) / (geom.z_r1 + k * geom.z_s)


def khv_forward(geom: CycloidStageGeometry, mesh: MeshEfficiencySet):
    """Carrier-to-pin-wheel efficiency eta_hr2."""
    require_valid(geom)
    _check_mesh(mesh)
    return (geom.z_r2 - geom.z_p2) / (geom.z_r2 - mesh.eta_r2p2 * geom.z_p2)


def khv_backward(geom: CycloidStageGeometry, mesh: MeshEfficiencySet):
    """Pin-wheel-to-carrier efficiency eta_r2h; <= 0 when self-locking."""
    require_valid(geom)
    _check_mesh(mesh)
    eta = mesh.eta_p2r2
    return (eta * geom.z_r2 - geom.z_p2) / (eta * (geom.z_r2 - geom.z_p2))


def self_lock_threshold(geom: CycloidStageGeometry) -> Fraction:
    """Backward K-H-V efficiency is non-positive iff eta_p2r2 <= z_p2/z_r2."""
    require_valid(geom)
    return Fraction(geom.z_p2, geom.z_r2)


@dataclass(frozen=True)
class EfficiencyReport:
    eta_sh: object
    eta_hs: object
    eta_hr2: object
    eta_r2h: object
    eta_sr2: object
    eta_r2s: object
    self_locking: bool

    def as_dict(self) -> dict:
        return {
            "eta_sh": self.eta_sh,
            "eta_hs": self.eta_hs,
            "eta_hr2": self.eta_hr2,
            "eta_r2h": self.eta_r2h,
            "eta_sr2": self.eta_sr2,
            "eta_r2s": self.eta_r2s,
            "self_locking": self.self_locking,
        }


def compound_efficiencies(train: CompoundTrainGeometry, mesh: MeshEfficiencySet) -> EfficiencyReport:
    eta_sh = planetary_forward(train.input_stage, mesh)
    eta_hs = planetary_backward(train.input_stage, mesh)
    eta_hr2 = khv_forward(train.output_stage, mesh)
    eta_r2h = khv_backward(train.output_stage, mesh)
    eta_r2s = eta_r2h * eta_hs
    return EfficiencyReport(
        eta_sh=eta_sh,
        eta_hs=eta_hs,
        eta_hr2=eta_hr2,
        eta_r2h=eta_r2h,
        eta_sr2=eta_sh * eta_hr2,
        eta_r2s=eta_r2s,
        self_locking=bool(eta_r2s <= 0),
    )
