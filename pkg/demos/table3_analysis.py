"""
Analysing a reference 3K-H-V train
==================================

A planetary stage (39-tooth sun, 24-tooth planets, 87-tooth ring) drives the
carrier of a cycloid stage (59-lobe disc, 60-pin wheel).
"""

from fractions import Fraction

from pcdrive import CompoundTrainGeometry, MeshEfficiencySet
from pcdrive.efficiency import compound_efficiencies, self_lock_threshold
from pcdrive.kinematics import compound_speeds, ratio_terms

train = CompoundTrainGeometry.from_counts(39, 24, 87, 59, 60)

# ratios stay exact; only printing rounds them
for name, (n, d) in ratio_terms(train).items():
    print(f"{name:7s} {n}/{d} = {float(Fraction(n, d)):.4f}")

# speeds for a motor at 126 rad/s, absolute and seen from the carrier
speeds = compound_speeds(train, 126)
for member in ("s", "p1", "h", "p2", "r2"):
    print(f"omega_{member:3s} {float(speeds.absolute[member]):10.4f}  "
          f"carrier frame {float(speeds.carrier[member]):10.4f}")

# every mesh at 99%
report = compound_efficiencies(train, MeshEfficiencySet.uniform(0.99))
for key, value in report.as_dict().items():
    print(f"{key:13s} {value}")

# the cycloid stage back-drives only while its mesh efficiency beats z_p2/z_r2
print("self-lock threshold:", self_lock_threshold(train.output_stage))
