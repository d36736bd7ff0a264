"""
Efficiency against reduction ratio
==================================

Each stage type loses efficiency differently as its ratio grows. A planetary
stage flattens towards the mesh efficiency, while a one-tooth-difference
cycloid stage keeps falling, and when back-driven it reaches zero at
i = 1/(1 - eta).
"""

import numpy as np

from pcdrive.sweep import SweepSpec, khv_backward_zero, run_sweep, zero_crossings

ratios = np.array([1, 2, 5, 10, 20, 50, 100, 200, 500, 1000], dtype=float)
etas = (0.96, 0.98, 0.99)

for stage in ("2K-H", "K-H-V", "compound"):
    for direction in ("forward", "backward"):
        table = run_sweep(SweepSpec(stage, direction, ratios, etas))
        print(f"\n{stage} {direction}")
        print("   i   " + "".join(f"eta={e:<8}" for e in etas))
        for i, row in zip(ratios, table.T):
            print(f"{i:6g} " + "".join(f"{v:12.4f}" for v in row))

# zero crossings on a fine log grid
grid = np.logspace(0, 3, 2000)
backward = run_sweep(SweepSpec("K-H-V", "backward", grid, etas))
for eta, row in zip(etas, backward):
    print(f"eta={eta}: crosses zero in {zero_crossings(grid, row)}, "
          f"predicted {khv_backward_zero(eta):g}")
