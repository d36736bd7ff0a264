"""Quasi-static torque and power-flow solver for single stages.

Follows the derivation route rather than the simplified formulas: mesh
tangential forces from the torque balance (planet torque zero), torques on
each member, carrier-frame powers and the mesh power loss, then absolute
input/output power. The carrier torque comes from the overall moment balance
of the stage, which gives the power on the carrier side independently, so
P_in = P_out + P_loss is a genuine check and not an identity.

Forces carry the unit of torque per unit-module radius; only ratios matter.
Sign convention: the input torque always drives (it has the sign of the input
speed), so P_in > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

from .efficiency import khv_backward, khv_forward, planetary_backward, planetary_forward
from .geometry import (
    CompoundTrainGeometry,
    CycloidStageGeometry,
    MeshEfficiencySet,
    PlanetaryStageGeometry,
    require_valid,
)
from .kinematics import SpeedState, khv_ratio, khv_speeds, planetary_ratio, planetary_speeds

PLANETARY = "2K-H"
CYCLOID = "K-H-V"
FORWARD = "forward"
BACKWARD = "backward"

Stage = Literal["2K-H", "K-H-V"]
Direction = Literal["forward", "backward"]

CROSS_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class DriveCase:
    """One operating point.

    Input member: sun (2K-H forward), carrier (2K-H backward, K-H-V forward)
    or pin-wheel R2 (K-H-V backward). ``input_torque`` is a magnitude in N*m,
    ``input_speed`` is signed, in rad/s.
    """

    stage: Stage
    direction: Direction
    input_torque: float
    input_speed: float
    mesh: MeshEfficiencySet = field(default_factory=MeshEfficiencySet)

    def __post_init__(self):
        if self.stage not in (PLANETARY, CYCLOID):
            raise ValueError(f"unknown stage {self.stage!r}")
        if self.direction not in (FORWARD, BACKWARD):
            raise ValueError(f"unknown direction {self.direction!r}")
        if not isinstance(self.mesh, MeshEfficiencySet):
            raise TypeError("mesh must be a MeshEfficiencySet")
        if not self.input_torque > 0:
            raise ValueError(f"input_torque must be > 0, got {self.input_torque!r}")
        if self.input_speed == 0:
            raise ValueError("input_speed must be non-zero")


@dataclass(frozen=True)
class PowerFlowReport:
    stage: str
    direction: str
    torques: dict
    forces: dict
    speeds: SpeedState
    carrier_powers: dict
    p_in: object
    p_out: object
    p_loss: object
    efficiency: object
    self_locking: bool = False

    @property
    def balance_residual(self):
        """P_in - (P_out + P_loss); zero up to rounding."""
        return self.p_in - (self.p_out + self.p_loss)


def _sign(x) -> int:
    return 1 if x > 0 else -1


def _solve_planetary_forward(geom, case):
    r = geom.radii
    r_s, r_p1, r_r1 = r["s"], r["p1"], r["r1"]
    m = case.mesh
    speeds = planetary_speeds(geom, case.input_speed)
    w, wh = speeds.absolute, speeds.carrier

    t_s = _sign(case.input_speed) * case.input_torque
    f_p1s = t_s / r_s
    f_r1p1 = m.eta_sp1 * f_p1s  # planet row with T_p1 = 0
    t_p1 = r_p1 * (f_r1p1 - m.eta_sp1 * f_p1s)
    t_r1 = m.eta_p1r1 * r_r1 * f_r1p1
    t_h = -(t_s + t_r1)

    p_s_h = t_s * wh["s"]
    p_r1_h = -t_r1 * wh["r1"]
    p_loss = p_s_h - p_r1_h
    p_s = t_s * w["s"]
    return PowerFlowReport(
        stage=PLANETARY,
        direction=FORWARD,
        torques={"T_s": t_s, "T_p1": t_p1, "T_r1": t_r1, "T_h": t_h},
        forces={"F_r1p1": f_r1p1, "F_p1s": f_p1s},
        speeds=speeds,
        carrier_powers={"P_s^H": p_s_h, "P_r1^H": p_r1_h},
        p_in=p_s,
        p_out=-t_h * w["h"],
        p_loss=p_loss,
        efficiency=(p_s - p_loss) / p_s,
    )


def _solve_planetary_backward(geom, case):
    r = geom.radii
    r_s, r_p1, r_r1 = r["s"], r["p1"], r["r1"]
    m = case.mesh
    omega_s = planetary_ratio(geom) * case.input_speed
    speeds = planetary_speeds(geom, omega_s)
    w, wh = speeds.absolute, speeds.carrier

    t_h = _sign(case.input_speed) * case.input_torque
    k = m.eta_r1p1 * m.eta_p1s
    # carrier balance T_h = -(T_s + T_r1) with T_s, T_r1 linear in F_p1r1
    f_p1r1 = -t_h / (k * r_s + r_r1)
    f_sp1 = m.eta_r1p1 * f_p1r1  # planet row with T_p1 = 0
    t_s = m.eta_p1s * r_s * f_sp1
    t_p1 = r_p1 * (m.eta_r1p1 * f_p1r1 - f_sp1)
    t_r1 = r_r1 * f_p1r1

    p_r1_h = t_r1 * wh["r1"]
    p_s_h = -t_s * wh["s"]
    p_loss = p_r1_h - p_s_h
    p_s = -t_s * w["s"]
    return PowerFlowReport(
        stage=PLANETARY,
        direction=BACKWARD,
        torques={"T_s": t_s, "T_p1": t_p1, "T_r1": t_r1, "T_h": t_h},
        forces={"F_p1r1": f_p1r1, "F_sp1": f_sp1},
        speeds=speeds,
        carrier_powers={"P_r1^H": p_r1_h, "P_s^H": p_s_h},
        p_in=t_h * w["h"],
        p_out=p_s,
        p_loss=p_loss,
        efficiency=p_s / (p_s + p_loss),
    )


def _solve_khv_forward(geom, case):
    r = geom.radii
    r_p2, r_r2 = r["p2"], r["r2"]
    m = case.mesh
    speeds = khv_speeds(geom, case.input_speed)
    w, wh = speeds.absolute, speeds.carrier

    t_h = _sign(case.input_speed) * case.input_torque
    # P2 torque is reacted to ground through the output mechanism
    f_p2r2 = -t_h / (r_r2 - m.eta_r2p2 * r_p2)
    t_r2 = r_r2 * f_p2r2
    t_p2 = -m.eta_r2p2 * r_p2 * f_p2r2

    p_r2_h = t_r2 * wh["r2"]
    p_p2_h = -t_p2 * wh["p2"]
    p_loss = p_r2_h - p_p2_h
    p_r2 = -t_r2 * w["r2"]
    return PowerFlowReport(
        stage=CYCLOID,
        direction=FORWARD,
        torques={"T_r2": t_r2, "T_p2": t_p2, "T_h": t_h},
        forces={"F_p2r2": f_p2r2},
        speeds=speeds,
        carrier_powers={"P_r2^H": p_r2_h, "P_p2^H": p_p2_h},
        p_in=t_h * w["h"],
        p_out=p_r2,
        p_loss=p_loss,
        efficiency=p_r2 / (p_r2 + p_loss),
    )


def _solve_khv_backward(geom, case):
    r = geom.radii
    r_p2, r_r2 = r["p2"], r["r2"]
    m = case.mesh
    omega_h = khv_ratio(geom) * case.input_speed
    speeds = khv_speeds(geom, omega_h)
    w, wh = speeds.absolute, speeds.carrier

    t_r2 = _sign(case.input_speed) * case.input_torque
    f_r2p2 = -t_r2 / (m.eta_p2r2 * r_r2)
    t_p2 = r_p2 * f_r2p2
    t_h = -(t_r2 + t_p2)

    p_p2_h = t_p2 * wh["p2"]
    p_r2_h = -t_r2 * wh["r2"]
    p_loss = p_p2_h - p_r2_h
    p_r2 = t_r2 * w["r2"]
    efficiency = (p_r2 - p_loss) / p_r2
    return PowerFlowReport(
        stage=CYCLOID,
        direction=BACKWARD,
        torques={"T_r2": t_r2, "T_p2": t_p2, "T_h": t_h},
        forces={"F_r2p2": f_r2p2},
        speeds=speeds,
        carrier_powers={"P_p2^H": p_p2_h, "P_r2^H": p_r2_h},
        p_in=p_r2,
        p_out=-t_h * w["h"],
        p_loss=p_loss,
        efficiency=efficiency,
        self_locking=bool(efficiency <= 0),
    )


_SOLVERS = {
    (PLANETARY, FORWARD): _solve_planetary_forward,
    (PLANETARY, BACKWARD): _solve_planetary_backward,
    (CYCLOID, FORWARD): _solve_khv_forward,
    (CYCLOID, BACKWARD): _solve_khv_backward,
}


def stage_of(geom) -> str:
    if isinstance(geom, PlanetaryStageGeometry):
        return PLANETARY
    if isinstance(geom, CycloidStageGeometry):
        return CYCLOID
    raise TypeError(f"not a stage geometry: {type(geom).__name__}")


def solve_case(geom, case: DriveCase) -> PowerFlowReport:
    """Solve one stage at one operating point.

    A self-locking K-H-V backward case is not an error: the report carries a
    non-positive efficiency and ``self_locking=True``.
    """
    if stage_of(geom) != case.stage:
        raise TypeError(f"{type(geom).__name__} cannot run a {case.stage} case")
    require_valid(geom)
    return _SOLVERS[case.stage, case.direction](geom, case)


@dataclass(frozen=True)
class CrossCheck:
    stage: str
    direction: str
    closed_form: object
    power_flow: object
    rel_diff: float
    flagged: bool


_CLOSED_FORMS = {
    (PLANETARY, FORWARD): planetary_forward,
    (PLANETARY, BACKWARD): planetary_backward,
    (CYCLOID, FORWARD): khv_forward,
    (CYCLOID, BACKWARD): khv_backward,
}


def cross_check(geom, mesh: MeshEfficiencySet, direction: Direction,
                input_torque=1.0, input_speed=1.0) -> CrossCheck:
    """Compare the closed-form efficiency with the power-flow solution."""
    stage = stage_of(geom)
    closed = _CLOSED_FORMS[stage, direction](geom, mesh)
    solved = solve_case(geom, DriveCase(stage, direction, input_torque, input_speed, mesh)).efficiency
    diff = abs(closed - solved)
    rel = float(diff / abs(closed)) if closed != 0 else float(diff)
    return CrossCheck(stage, direction, closed, solved, rel, rel > CROSS_CHECK_TOL or math.isnan(rel))


def solve_compound_forward(train: CompoundTrainGeometry, mesh: MeshEfficiencySet,
                           input_torque, input_speed):
    """Chain the two forward stages: the 2K-H carrier output drives the K-H-V stage.

    Returns ``(planetary_report, khv_report, overall_efficiency)``.
    """
    require_valid(train)
    first = solve_case(train.input_stage,
                       DriveCase(PLANETARY, FORWARD, input_torque, input_speed, mesh))
    omega_h = first.speeds.absolute["h"]
    carrier_torque = abs(first.p_out / omega_h)
    second = solve_case(train.output_stage,
                        DriveCase(CYCLOID, FORWARD, carrier_torque, omega_h, mesh))
    return first, second, second.p_out / first.p_in
