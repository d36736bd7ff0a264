import numpy as np
import pytest

from pcdrive.efficiency import khv_backward, khv_forward, planetary_backward, planetary_forward
from pcdrive.geometry import CycloidStageGeometry, MeshEfficiencySet, PlanetaryStageGeometry
from pcdrive.sweep import (
    SweepSpec,
    default_ratio_grid,
    khv_backward_zero,
    run_sweep,
    stage_efficiency,
    zero_crossings,
)

STAGE_DIRS = [(s, d) for s in ("2K-H", "K-H-V", "compound") for d in ("forward", "backward")]


def test_khv_forward_at_table3_ratio():
    out = run_sweep(SweepSpec("K-H-V", "forward", [60.0], [0.99]))
    assert out.shape == (1, 1)
    assert out[0, 0] == pytest.approx(1 / 1.59, rel=1e-14)
    geom = CycloidStageGeometry(59, 60)
    assert out[0, 0] == pytest.approx(khv_forward(geom, MeshEfficiencySet.uniform(0.99)), rel=1e-14)


@pytest.mark.parametrize("stage, direction", STAGE_DIRS)
def test_lossless_row_is_one(stage, direction):
    out = run_sweep(SweepSpec(stage, direction, default_ratio_grid(), [0.95, 1.0]))
    assert np.all(out[1] == 1.0)
    assert np.all(out[0] < 1.0 + 1e-15)


def test_khv_backward_sign_change():
    ratios = np.arange(2.0, 201.0)
    out = run_sweep(SweepSpec("K-H-V", "backward", ratios, [0.99]))[0]
    assert out[ratios == 100.0][0] == pytest.approx(0.0, abs=1e-12)
    assert np.all(out[ratios < 100] > 0)
    assert np.all(out[ratios > 100] < 0)
    assert khv_backward_zero(0.99) == pytest.approx(100.0)
    assert khv_backward_zero(1.0) == np.inf


@pytest.mark.parametrize("stage, direction", STAGE_DIRS)
@pytest.mark.parametrize("eta", [0.9, 0.96, 0.99])
def test_rows_strictly_decreasing(stage, direction, eta):
    out = run_sweep(SweepSpec(stage, direction, default_ratio_grid(800), [eta]))[0]
    assert np.all(np.diff(out) < 0)


@pytest.mark.parametrize("stage", ["2K-H", "K-H-V", "compound"])
def test_backward_below_forward(stage):
    grid = default_ratio_grid()
    etas = [0.9, 0.96, 0.98, 0.99, 1.0]
    fwd = run_sweep(SweepSpec(stage, "forward", grid, etas))
    bwd = run_sweep(SweepSpec(stage, "backward", grid, etas))
    assert np.all(bwd <= fwd + 1e-15)


@pytest.mark.parametrize("z_p2", [1, 10, 59, 99])
@pytest.mark.parametrize("eta", [0.9, 0.99])
def test_continuous_matches_discrete_khv(z_p2, eta):
    geom = CycloidStageGeometry(z_p2, z_p2 + 1)
    mesh = MeshEfficiencySet.uniform(eta)
    i = float(z_p2 + 1)
    assert stage_efficiency("K-H-V", "forward", i, eta) == pytest.approx(khv_forward(geom, mesh), rel=1e-14)
    assert stage_efficiency("K-H-V", "backward", i, eta) == pytest.approx(khv_backward(geom, mesh), rel=1e-12)


@pytest.mark.parametrize("counts", [(39, 24, 87), (12, 30, 72), (20, 20, 60)])
def test_continuous_matches_discrete_planetary(counts):
    geom = PlanetaryStageGeometry(*counts, 1)
    # the lumped form takes the product of the two meshes of one path
    mesh = MeshEfficiencySet.uniform(0.99)
    i = (counts[0] + counts[2]) / counts[0]
    assert stage_efficiency("2K-H", "forward", i, 0.99 ** 2) == pytest.approx(
        planetary_forward(geom, mesh), rel=1e-14)
    assert stage_efficiency("2K-H", "backward", i, 0.99 ** 2) == pytest.approx(
        planetary_backward(geom, mesh), rel=1e-14)


def test_compound_split():
    total = 200.0
    for split in (0.2, 0.5, 0.8):
        expected = (stage_efficiency("2K-H", "forward", total ** split, 0.99)
                    * stage_efficiency("K-H-V", "forward", total ** (1 - split), 0.99))
        assert stage_efficiency("compound", "forward", total, 0.99, split) == pytest.approx(expected)
    # more reduction in the planetary stage is better
    effs = [stage_efficiency("compound", "forward", total, 0.99, s) for s in (0.2, 0.5, 0.8)]
    assert effs == sorted(effs)


def test_zero_crossings_helper():
    assert zero_crossings([1, 2, 3, 4], [1.0, 0.5, -0.5, -1.0]) == [(2.0, 3.0)]
    assert zero_crossings([1, 2], [1.0, 0.5]) == []


@pytest.mark.parametrize("kwargs", [
    dict(ratio_grid=[0.5, 2.0]),
    dict(ratio_grid=[2.0, 2.0]),
    dict(ratio_grid=[3.0, 2.0]),
    dict(ratio_grid=[]),
    dict(mesh_grid=[]),
    dict(mesh_grid=[1.1]),
    dict(mesh_grid=[0.0]),
    dict(split=1.0),
])
def test_invalid_specs(kwargs):
    base = dict(stage="K-H-V", direction="forward", ratio_grid=[2.0, 3.0], mesh_grid=[0.99])
    base.update(kwargs)
    with pytest.raises(ValueError):
        SweepSpec(**base)


def test_unknown_stage():
    with pytest.raises(ValueError):
        SweepSpec("3K", "forward")


def test_default_grid_spans_one_to_thousand():
    g = default_ratio_grid()
    assert g[0] == 1.0 and g[-1] == pytest.approx(1000.0)
    assert np.all(np.diff(g) > 0)
