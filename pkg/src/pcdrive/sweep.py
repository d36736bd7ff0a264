"""Efficiency-versus-ratio curve families over a continuous ratio axis.

The stage efficiencies are written in terms of the stage reduction ratio i
and a lumped mesh efficiency eta, so no tooth-count realisation is needed:

    2K-H forward    (eta*(i - 1) + 1) / i
    2K-H backward   eta*i / (i - 1 + eta)
    K-H-V forward   1 / (eta + i*(1 - eta))
    K-H-V backward  (1 + i*(eta - 1)) / eta

For the compound train a split s in (0, 1) gives i_2kh = i**s and
i_khv = i**(1 - s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

STAGES = ("2K-H", "K-H-V", "compound")
DIRECTIONS = ("forward", "backward")


def planetary_forward_i(i, eta):
    return (eta * (i - 1) + 1) / i


def planetary_backward_i(i, eta):
    return eta * i / (i - 1 + eta)


def khv_forward_i(i, eta):
    return 1 / (eta + i * (1 - eta))


def khv_backward_i(i, eta):
    return (1 + i * (eta - 1)) / eta


def khv_backward_zero(eta: float) -> float:
    """Ratio at which K-H-V backward efficiency reaches zero (inf when lossless)."""
    return np.inf if eta == 1 else 1 / (1 - eta)


_FORMS = {
    ("2K-H", "forward"): planetary_forward_i,
    ("2K-H", "backward"): planetary_backward_i,
    ("K-H-V", "forward"): khv_forward_i,
    ("K-H-V", "backward"): khv_backward_i,
}


def stage_efficiency(stage: str, direction: str, i, eta, split: float = 0.5):
    """Efficiency of one stage (or the compound train) at ratio ``i``."""
    if stage == "compound":
        i_2kh = i ** split
        i_khv = i ** (1 - split)
        return (_FORMS["2K-H", direction](i_2kh, eta)
                * _FORMS["K-H-V", direction](i_khv, eta))
    return _FORMS[stage, direction](i, eta)


def default_ratio_grid(num: int = 400, stop: float = 1000.0) -> np.ndarray:
    return np.logspace(0.0, np.log10(stop), num)


@dataclass(frozen=True)
class SweepSpec:
    stage: str
    direction: str
    ratio_grid: Sequence[float] = field(default_factory=default_ratio_grid)
    mesh_grid: Sequence[float] = (0.96, 0.98, 0.99)
    split: float = 0.5

    def __post_init__(self):
        if self.stage not in STAGES:
            raise ValueError(f"stage must be one of {STAGES}, got {self.stage!r}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}")
        ratios = np.asarray(self.ratio_grid, dtype=float)
        etas = np.asarray(self.mesh_grid, dtype=float)
        if ratios.ndim != 1 or ratios.size == 0:
            raise ValueError("ratio_grid must be a non-empty 1-D sequence")
        if etas.ndim != 1 or etas.size == 0:
            raise ValueError("mesh_grid must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(ratios)) or np.any(ratios < 1):
            raise ValueError("reduction ratios must be finite and >= 1")
        if np.any(np.diff(ratios) <= 0):
            raise ValueError("ratio_grid must be strictly increasing")
        if np.any(etas <= 0) or np.any(etas > 1):
            raise ValueError("mesh efficiencies must lie in (0, 1]")
        if not 0 < self.split < 1:
            raise ValueError("split must lie in (0, 1)")
        object.__setattr__(self, "ratio_grid", ratios)
        object.__setattr__(self, "mesh_grid", etas)


def run_sweep(spec: SweepSpec) -> np.ndarray:
    """Efficiency matrix with shape (len(mesh_grid), len(ratio_grid))."""
    i = spec.ratio_grid[np.newaxis, :]
    eta = spec.mesh_grid[:, np.newaxis]
    return stage_efficiency(spec.stage, spec.direction, i, eta, spec.split)


def zero_crossings(ratios, values) -> list[tuple[float, float]]:
    """Grid intervals [i_k, i_k+1] across which ``values`` changes sign from > 0 to <= 0."""
    ratios = np.asarray(ratios)
    values = np.asarray(values)
    idx = np.nonzero((values[:-1] > 0) & (values[1:] <= 0))[0]
    return [(float(ratios[k]), float(ratios[k + 1])) for k in idx]
