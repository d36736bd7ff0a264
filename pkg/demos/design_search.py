"""
Searching tooth counts for a target ratio
=========================================

Enumerate every 3K-H-V train within bounds whose ratio lies within 1% of
193.8, rank by forward efficiency, then keep the Pareto front of ratio
error against efficiency.
"""

import time

from pcdrive import MeshEfficiencySet
from pcdrive.design_search import DesignQuery, enumerate_designs, pareto_front

query = DesignQuery(
    target_ratio=193.8,
    ratio_tolerance=0.01,
    z_s_bounds=(10, 60),
    z_p1_bounds=(10, 40),
    z_p2_bounds=(20, 80),
    mesh=MeshEfficiencySet.uniform(0.99),
)

start = time.perf_counter()
found = enumerate_designs(query)
print(f"{len(found)} candidates in {time.perf_counter() - start:.2f} s")

print("\nbest ten (z_s, z_p1, z_r1, z_p2, z_r2)")
for c in found[:10]:
    print(f"{c.train.counts}  i={float(c.achieved_ratio):8.3f}  "
          f"eta_fwd={float(c.report.eta_sr2):.4f}  eta_bwd={float(c.report.eta_r2s):.4f}  "
          f"planetary share={c.planetary_share:.2f}")

ref = next(c for c in found if c.train.counts == (39, 24, 87, 59, 60))
print(f"\nreference train ranks {found.index(ref) + 1} of {len(found)}")

print("\nPareto front (ratio error vs forward efficiency)")
for c in pareto_front(found):
    print(f"{c.train.counts}  err={float(c.ratio_error):.2e}  eta={float(c.merit):.4f}")
