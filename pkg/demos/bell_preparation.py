"""
Preparing a Bell pair by watching it
====================================

Two qubits start in |00>. Each step rotates both of them by a small angle
and asks a detector whether both are in |1>. Conditioned on silence, the
pair drifts into (|01> + |10>)/sqrt2.
"""

import numpy as np

from qzeno import core, qstate
from qzeno.sampling import RngSeed
from qzeno.trajectory import estimate_success, w_schedule

# the step angle is tied to the number of steps
k = 100
theta = core.auto_theta(k)
print(f"k = {k}, theta = {theta:.6f} rad")

# the no-click operator on span{|00>, |10>, |01>}
m = core.matrix_power(core.build_w(theta), k)
np.set_printoptions(precision=4, suppress=True)
print(m)

# read off success probability and fidelity
report = core.bell_preparation(k)
print(f"success {report.success_prob:.4f}, fidelity {report.fidelity_to_target:.6f}")

# the same number from actual simulated detector clicks
mean, stderr = estimate_success(w_schedule(k, theta), qstate.ket("00"), 20_000, RngSeed(1))
print(f"Monte Carlo: {mean:.4f} +- {stderr:.4f}")

# more, smaller steps push the success rate towards one
for k in (10, 100, 1000, 10_000):
    print(k, round(core.bell_preparation(k).success_prob, 5))
