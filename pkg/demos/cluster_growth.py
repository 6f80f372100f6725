"""
Growing a linear cluster state
==============================

Each expansion applies a Hadamard to the end of the chain, attaches a fresh
|0> qubit and runs the phase-flip protocol on the last pair. A couple of
single-qubit corrections then land exactly on the C-Phase construction.
"""

from qzeno.cluster import grow_chain

for r in grow_chain(6, 1000):
    n = r.state.size.bit_length() - 1
    fixes = ", ".join(f"q{q}:{g}" for q, g in r.corrections.items())
    print(f"n={n}  success {r.success_prob:.5f}  fidelity {r.oracle_fidelity:.8f}  corrections {fixes}")
