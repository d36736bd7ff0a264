"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from pcdrive import (
    CompoundTrainGeometry,
    CycloidStageGeometry,
    MeshEfficiencySet,
    PlanetaryStageGeometry,
    cli,
)
from pcdrive.design_search import DesignQuery, enumerate_designs
from pcdrive.efficiency import compound_efficiencies, khv_backward
from pcdrive.kinematics import ratio_terms
from pcdrive.quasistatic import BACKWARD, FORWARD, DriveCase, cross_check, solve_case, stage_of
from pcdrive.sweep import SweepSpec, default_ratio_grid, khv_backward_zero, run_sweep, zero_crossings

from test_design_search import naive_oracle

N_SAMPLES = 1000


def test_criterion_1_ratio_reproduction(acceptance):
    terms = ratio_terms(CompoundTrainGeometry.from_counts(39, 24, 87, 59, 60))
    n, d = terms["i_3khv"]
    total = Fraction(n, d)
    i_2kh = Fraction(*terms["i_2kh"])
    i_khv = Fraction(*terms["i_khv"])
    printed = (f"{float(total):.1f}", f"{float(i_2kh):.2f}", f"{float(i_khv):.0f}")
    ok = (n, d) == (7560, 39) and total == i_2kh * i_khv and printed == ("193.8", "3.23", "60")
    acceptance(1, "ratio reproduction", ok, f"i_3khv={n}/{d} printed={printed}")


def random_geometries(rng, count):
    out = []
    while len(out) < count:
        z_s = int(rng.integers(10, 101))
        z_p1 = int(rng.integers(10, 61))
        z_p2 = int(rng.integers(10, 121))
        first = PlanetaryStageGeometry(z_s, z_p1, z_s + 2 * z_p1, 3)
        if (2 * first.z_s + 2 * first.z_p1) % 3:
            continue  # assembly rule for three planets
        mesh = MeshEfficiencySet(*rng.uniform(0.90, 1.0, size=6))
        out.append((first, CycloidStageGeometry(z_p2, z_p2 + 1), mesh))
    return out


@pytest.fixture(scope="module")
def sampled_solutions():
    rng = np.random.default_rng(20240601)
    start = time.perf_counter()
    checks, reports = [], []
    for first, second, mesh in random_geometries(rng, N_SAMPLES):
        for geom in (first, second):
            for direction in (FORWARD, BACKWARD):
                torque = float(rng.uniform(0.1, 100.0))
                speed = float(rng.choice([-1, 1]) * rng.uniform(0.1, 500.0))
                checks.append(cross_check(geom, mesh, direction, torque, speed))
                reports.append(solve_case(geom, DriveCase(stage_of(geom), direction,
                                                          torque, speed, mesh)))
    return checks, reports, time.perf_counter() - start


def test_criterion_2_oracle_equivalence(acceptance, sampled_solutions):
    checks, _, elapsed = sampled_solutions
    worst = max(c.rel_diff for c in checks)
    cases = {(c.stage, c.direction) for c in checks}
    ok = (len(checks) == 4 * N_SAMPLES and len(cases) == 4
          and not any(c.flagged for c in checks) and worst <= 1e-9 and elapsed < 5.0)
    acceptance(2, "oracle equivalence", ok,
               f"{N_SAMPLES} geometries x 4 cases, worst rel diff {worst:.2e}, {elapsed:.2f}s")


def test_criterion_3_power_balance(acceptance, sampled_solutions):
    _, reports, _ = sampled_solutions
    worst = max(abs(r.balance_residual) / abs(r.p_in) for r in reports)
    min_loss = min(r.p_loss / r.p_in for r in reports)
    ok = worst <= 1e-12 and min_loss >= 0
    acceptance(3, "power balance", ok,
               f"{len(reports)} cases, worst rel residual {worst:.2e}, min P_loss/P_in {min_loss:.2e}")


def test_criterion_4_curve_shapes(acceptance):
    start = time.perf_counter()
    grid = default_ratio_grid(num=400, stop=1000.0)
    etas = (0.96, 0.98, 0.99)
    curves = {(stage, direction): run_sweep(SweepSpec(stage, direction, grid, etas))
              for stage in ("2K-H", "K-H-V") for direction in ("forward", "backward")}
    failures = []
    for key, values in curves.items():
        if not np.all(np.diff(values, axis=1) < 0):
            failures.append(f"{key} not strictly decreasing")
    for stage in ("2K-H", "K-H-V"):
        fwd, bwd = curves[stage, "forward"], curves[stage, "backward"]
        if np.any(bwd > fwd):
            failures.append(f"{stage} backward above forward")
    for row, eta in zip(curves["K-H-V", "backward"], etas):
        target = khv_backward_zero(eta)
        crossings = zero_crossings(grid, row)
        if len(crossings) != 1 or not crossings[0][0] <= target <= crossings[0][1]:
            failures.append(f"eta={eta}: zero crossing {crossings} does not bracket {target:g}")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1.0
    acceptance(4, "efficiency curve shapes", ok,
               f"{len(grid)}-point log grid on [1, 1000], {elapsed * 1e3:.1f}ms {'; '.join(failures)}")


def test_criterion_5_self_locking_boundary(acceptance):
    geom = CycloidStageGeometry(59, 60)
    at = khv_backward(geom, MeshEfficiencySet.uniform(Fraction(59, 60)))
    below = compound_efficiencies(CompoundTrainGeometry.from_counts(39, 24, 87, 59, 60),
                                  MeshEfficiencySet.uniform(0.98))
    above = khv_backward(geom, MeshEfficiencySet.uniform(0.99))
    ok = (at == 0 and isinstance(at, Fraction)
          and below.eta_r2h < 0 and below.self_locking
          and abs(above - 0.40404) <= 1e-6)
    acceptance(5, "self-locking boundary", ok,
               f"eta=59/60 -> {at}, eta=0.98 -> {below.eta_r2h:.6f} (locking={below.self_locking}), "
               f"eta=0.99 -> {above:.6f}")


def test_criterion_6_design_search(acceptance):
    bounds = dict(z_s_bounds=(10, 60), z_p1_bounds=(10, 40), z_p2_bounds=(20, 80))
    combos = np.prod([hi - lo + 1 for lo, hi in bounds.values()])
    start = time.perf_counter()
    found = enumerate_designs(DesignQuery(193.8, mesh=MeshEfficiencySet.uniform(0.99),
                                          ratio_tolerance=0.01, **bounds))
    elapsed = time.perf_counter() - start
    got = {c.train.counts for c in found}
    expected = naive_oracle(193.8, 0.01, (10, 60), (10, 40), (20, 80), 3, 0.99)
    ok = (got == expected and len(got) == len(found)
          and (39, 24, 87, 59, 60) in got and elapsed < 10.0)
    acceptance(6, "design search matches naive oracle", ok,
               f"{combos} combinations, {len(found)} candidates, {elapsed:.2f}s")


def test_criterion_7_plausibility_anchor(acceptance):
    report = compound_efficiencies(CompoundTrainGeometry.from_counts(39, 24, 87, 59, 60),
                                   MeshEfficiencySet.uniform(0.99))
    # documented sanity anchor against the measured 65%, deliberately not asserted
    acceptance(7, "plausibility anchor (non-gating)", abs(report.eta_sr2 - 0.62) < 0.05,
               f"predicted forward efficiency {report.eta_sr2:.4f} vs measured 0.65",
               gating=False)


def test_criterion_8_cli_determinism(acceptance, tmp_path):
    outputs = {}
    for cmd, cfg in (("sweep", "sweep_khv_forward.json"), ("search", "search_table3.json")):
        for fmt in ("csv", "json"):
            blobs = []
            for run in range(2):
                path = tmp_path / f"{cmd}-{fmt}-{run}"
                assert cli.main([cmd, "--config", cfg, "--format", fmt, "--out", str(path)]) == 0
                blobs.append(path.read_bytes())
            outputs[cmd, fmt] = blobs[0] == blobs[1]
    path = tmp_path / "analyze.json"
    code = cli.main(["analyze", "--config", "table3.json", "--out", str(path)])
    exact = code == 0 and '"exact": "7560/39"' in path.read_text()
    ok = all(outputs.values()) and exact
    acceptance(8, "CLI determinism", ok,
               f"identical reruns {sum(outputs.values())}/{len(outputs)}, analyze emits 7560/39: {exact}")
