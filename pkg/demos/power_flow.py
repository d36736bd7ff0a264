"""
Power flow through each stage
=============================

Solve the torque balance of each stage, compute the mesh loss in the carrier
frame and confirm that input power equals output power plus loss. The
resulting efficiency agrees with the closed-form expressions.
"""

from pcdrive import CompoundTrainGeometry, MeshEfficiencySet
from pcdrive.quasistatic import cross_check, solve_compound_forward

train = CompoundTrainGeometry.from_counts(39, 24, 87, 59, 60)
mesh = MeshEfficiencySet.uniform(0.99)

# 1 N*m at 126 rad/s into the sun
first, second, overall = solve_compound_forward(train, mesh, 1.0, 126.0)
for rep in (first, second):
    print(f"\n{rep.stage} {rep.direction}")
    for k, v in {**rep.torques, **rep.carrier_powers}.items():
        print(f"  {k:7s} {v: .6f}")
    print(f"  P_in={rep.p_in:.6f} P_out={rep.p_out:.6f} P_loss={rep.p_loss:.6f} "
          f"residual={rep.balance_residual:.1e}")
print(f"\noverall forward efficiency {overall:.6f}")

for geom in (train.input_stage, train.output_stage):
    for direction in ("forward", "backward"):
        c = cross_check(geom, mesh, direction)
        print(f"{c.stage:6s} {direction:8s} closed={float(c.closed_form):.9f} "
              f"solved={float(c.power_flow):.9f} rel diff={c.rel_diff:.1e}")
