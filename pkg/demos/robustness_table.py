"""
Rotation errors and the Zeno shield
===================================

Every step now rotates by theta + eps with eps drawn uniformly from
[-eps_max * theta, eps_max * theta]. The figure of merit averages the two
target overlaps of the unnormalized evolution. Fewer trials than the
default keep this script quick.
"""

from qzeno.robustness import ps_exact, table1_report
from qzeno.sampling import RngSeed

for k in (50, 100, 1000):
    print(f"k={k:5d}  error-free P_s = {ps_exact(k):.4f}")

cells = table1_report(ks=(50, 100), trials=5_000, seed=RngSeed(2))
print(f"{'k':>5} {'eps':>5} {'mean':>8} {'stderr':>8}")
for c in cells:
    print(f"{c.config.k:5d} {c.config.eps_max:5.2f} {c.mean:8.4f} {c.stderr:8.5f}")
