"""Reduction ratio, mesh-loss efficiency and tooth-count design search for
3K-H-V planetary-cycloidal drives (involute 2K-H input stage, cycloid K-H-V
output stage on a shared carrier)."""

from .design_search import DesignCandidate, DesignQuery, enumerate_designs, pareto_front
from .efficiency import (
    EfficiencyReport,
    compound_efficiencies,
    khv_backward,
    khv_forward,
    planetary_backward,
    planetary_forward,
    self_lock_threshold,
)
from .geometry import (
    CompoundTrainGeometry,
    CycloidStageGeometry,
    GeometryError,
    MeshEfficiencySet,
    PlanetaryStageGeometry,
    ValidationResult,
    Violation,
    validate_cycloid,
    validate_planetary,
    validate_train,
)
from .kinematics import (
    SpeedState,
    compound_ratio,
    compound_speeds,
    khv_ratio,
    khv_speeds,
    planetary_ratio,
    planetary_speeds,
)
from .quasistatic import DriveCase, PowerFlowReport, cross_check, solve_case, solve_compound_forward
from .sweep import SweepSpec, run_sweep

TABLE3 = CompoundTrainGeometry.from_counts(39, 24, 87, 59, 60)

__version__ = "0.1.0"
