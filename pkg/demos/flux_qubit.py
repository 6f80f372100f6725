"""
Flux qubits at the degeneracy point
===================================

With the bias at half a flux quantum each qubit evolves under Delta*sigma_x.
Measuring every tau gives a rotation of Delta*tau per step, and after
pi / (2 sqrt2 Delta) the pair is entangled.
"""

import numpy as np

from qzeno import qstate
from qzeno.core import build_w
from qzeno.physmodel import (
    FEASIBILITY_NOTE,
    FluxParams,
    bell_time,
    continuous_run,
    gauge_transform,
    sigma_x_subspace_operator,
)
from qzeno.sampling import RngSeed

delta = 1.0
tau = np.pi / (200 * np.sqrt(2)) / delta
params = FluxParams(delta, tau, bell_time(delta))
print(f"bell time {bell_time(delta):.4f}, steps {params.n_steps}")

out = continuous_run(params, qstate.ket("00"), RngSeed(3))
print(out.status, out.cumulative_prob)
if out.survived:
    print("fidelity to psi+:", qstate.fidelity(out.final_state, qstate.psi_plus()))

# sigma_x evolution is the real rotation in disguise
angle = delta * tau
m_x = sigma_x_subspace_operator(angle)
print("gauge mismatch:", np.max(np.abs(gauge_transform(m_x) - build_w(angle))))

print(FEASIBILITY_NOTE)
