"""Exhaustive tooth-count search for 3K-H-V trains hitting a target ratio.

The free integers are z_s, z_p1 and z_p2; z_r1 = z_s + 2*z_p1 and
z_r2 = z_p2 + 1 follow from the meshing constraints. For each (z_s, z_p1)
the admissible z_r2 window is computed exactly from the ratio tolerance, so
only combinations inside the window are evaluated. The ordering ranks higher
efficiency first, which in practice favours putting more of the reduction in
the planetary stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

from .efficiency import EfficiencyReport, compound_efficiencies
from .geometry import (
    CompoundTrainGeometry,
    CycloidStageGeometry,
    MeshEfficiencySet,
    PlanetaryStageGeometry,
    validate_planetary,
)

MERITS = ("forward", "backward", "both")


def exact(value) -> Fraction:
    """Decimal-faithful Fraction: 193.8 -> 969/5, not the binary expansion."""
    if isinstance(value, bool):
        raise TypeError("boolean is not a number")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, Real):
        if not math.isfinite(value):
            raise ValueError(f"not finite: {value!r}")
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot convert {value!r} to an exact rational")


def _bounds(name, pair) -> tuple[int, int]:
    lo, hi = pair
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in (lo, hi)):
        raise TypeError(f"{name} bounds must be integers, got {pair!r}")
    if lo < 1 or hi < lo:
        raise ValueError(f"{name} bounds {pair!r} are empty or non-positive")
    return lo, hi


@dataclass(frozen=True)
class DesignQuery:
    """Search request. Bounds are inclusive ``(lo, hi)`` tooth-count ranges."""

    target_ratio: Real
    z_s_bounds: tuple[int, int]
    z_p1_bounds: tuple[int, int]
    z_p2_bounds: tuple[int, int]
    mesh: MeshEfficiencySet
    ratio_tolerance: Real = 0.01
    n_planets: int = 3
    merit: str = "forward"
    forbid_self_locking: bool = True
    check_interference: bool = False

    def __post_init__(self):
        object.__setattr__(self, "z_s_bounds", _bounds("z_s", self.z_s_bounds))
        object.__setattr__(self, "z_p1_bounds", _bounds("z_p1", self.z_p1_bounds))
        object.__setattr__(self, "z_p2_bounds", _bounds("z_p2", self.z_p2_bounds))
        if exact(self.target_ratio) <= 1:
            raise ValueError(f"target_ratio must be > 1, got {self.target_ratio!r}")
        if not 0 <= exact(self.ratio_tolerance) < Fraction(1, 2):
            raise ValueError(f"ratio_tolerance must lie in [0, 0.5), got {self.ratio_tolerance!r}")
        if not isinstance(self.n_planets, int) or self.n_planets < 1:
            raise ValueError(f"n_planets must be a positive integer, got {self.n_planets!r}")
        if self.merit not in MERITS:
            raise ValueError(f"merit must be one of {MERITS}, got {self.merit!r}")
        if not isinstance(self.mesh, MeshEfficiencySet):
            raise TypeError("mesh must be a MeshEfficiencySet")


@dataclass(frozen=True)
class DesignCandidate:
    train: CompoundTrainGeometry
    achieved_ratio: Fraction
    ratio_error: Fraction
    report: EfficiencyReport
    merit: object

    @property
    def planetary_share(self) -> float:
        """Fraction of log(total ratio) carried by the 2K-H stage."""
        a = self.train.input_stage
        i_2kh = (a.z_s + a.z_r1) / a.z_s
        return math.log(i_2kh) / math.log(self.achieved_ratio)


def merit_of(report: EfficiencyReport, merit: str):
    if merit == "forward":
        return report.eta_sr2
    if merit == "backward":
        return report.eta_r2s
    return min(report.eta_sr2, report.eta_r2s)


def sort_key(c: DesignCandidate):
    a, b = c.train.input_stage, c.train.output_stage
    # z_p1 closes the order so it is total
    return (-c.merit, c.ratio_error, b.z_r2, a.z_s, a.z_p1)


def enumerate_designs(query: DesignQuery) -> list[DesignCandidate]:
    """All admissible trains within bounds and tolerance, best first.

    An infeasible query returns an empty list.
    """
    target = exact(query.target_ratio)
    tol = exact(query.ratio_tolerance)
    lo_ratio, hi_ratio = target * (1 - tol), target * (1 + tol)
    zr2_min = query.z_p2_bounds[0] + 1
    zr2_max = query.z_p2_bounds[1] + 1
    # exact efficiencies so equal-ratio trains tie exactly and fall to the tie-breaks
    mesh = MeshEfficiencySet(**{k: exact(v) for k, v in query.mesh.as_dict().items()})

    out = []
    for z_s in range(query.z_s_bounds[0], query.z_s_bounds[1] + 1):
        for z_p1 in range(query.z_p1_bounds[0], query.z_p1_bounds[1] + 1):
            z_r1 = z_s + 2 * z_p1
            first = PlanetaryStageGeometry(z_s, z_p1, z_r1, query.n_planets)
            if not validate_planetary(first, check_interference=query.check_interference).ok:
                continue
            i_2kh = Fraction(z_s + z_r1, z_s)
            lo = max(zr2_min, math.ceil(lo_ratio / i_2kh))
            hi = min(zr2_max, math.floor(hi_ratio / i_2kh))
            for z_r2 in range(lo, hi + 1):
                ratio = i_2kh * z_r2
                error = abs(ratio / target - 1)
                if error > tol:
                    continue
                train = CompoundTrainGeometry(first, CycloidStageGeometry(z_r2 - 1, z_r2))
                report = compound_efficiencies(train, mesh)
                if query.forbid_self_locking and report.self_locking:
                    continue
                out.append(DesignCandidate(train, ratio, error, report,
                                           merit_of(report, query.merit)))
    out.sort(key=sort_key)
    return out


def pareto_front(candidates) -> list[DesignCandidate]:
    """Candidates not dominated in (lower ratio_error, higher merit), in input order."""
    cands = list(candidates)
    if not cands:
        return []
    by_error = sorted(range(len(cands)), key=lambda k: (cands[k].ratio_error, -cands[k].merit))
    keep = set()
    best_before = None  # best merit among strictly smaller errors
    pos = 0
    while pos < len(by_error):
        err = cands[by_error[pos]].ratio_error
        group = []
        while pos < len(by_error) and cands[by_error[pos]].ratio_error == err:
            group.append(by_error[pos])
            pos += 1
        top = cands[group[0]].merit
        if best_before is None or top > best_before:
            keep.update(k for k in group if cands[k].merit == top)
            best_before = top
    return [c for k, c in enumerate(cands) if k in keep]
