"""
Flux-qubit picture of the protocol.

At the degeneracy point the qubit Hamiltonian reduces to ``Delta * sigma_x``
(hbar = 1). Between two J-measurements separated by ``tau`` each qubit picks
up ``exp(-i Delta tau sigma_x)``. Conjugating by ``S = diag(1, i)`` turns that
gate into the real rotation ``R(Delta tau)``, and S commutes with the J0
projector, so every measurement statistic of the real-rotation protocol
carries over unchanged.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sampling import RngSeed
from .trajectory import Schedule, ScheduleStep, TrajectoryOutcome, restrict_to_j0, run_trajectory, schedule_operator

# largest Delta*tau accepted as a "small" rotation per measurement interval
MAX_STEP_ANGLE = 0.1

FEASIBILITY_NOTE = (
    "Threshold detection takes about 1 ns and flux-qubit coherence times reach "
    "several microseconds, leaving room for thousands of J-measurements; "
    "decoherence is not simulated."
)

GAUGE = np.diag([1.0, 1.0j])


@dataclass(frozen=True)
class FluxParams:
    delta: float
    tau: float
    total_time: float

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"tunneling amplitude must be >= 0, got {self.delta}")
        if self.tau <= 0 or self.total_time <= 0:
            raise ValueError("tau and total_time must be positive")
        if self.delta * self.tau > MAX_STEP_ANGLE:
            raise ValueError(
                f"delta*tau = {self.delta * self.tau:.4g} exceeds the small-angle limit {MAX_STEP_ANGLE}; "
                "measure more often (smaller tau)"
            )
        if self.total_time < self.tau:
            raise ValueError("total_time must be at least one measurement interval")

    @property
    def n_steps(self) -> int:
        # tolerate float round-off in total_time / tau landing just under an integer
        return int(math.floor(self.total_time / self.tau + 1e-9))


def theta_from_physics(p: FluxParams) -> float:
    """Rotation angle accumulated between consecutive measurements."""
    return p.delta * p.tau


def bell_time(delta: float) -> float:
    """Evolution time ``pi / (2 sqrt(2) Delta)`` needed to reach psi+ from |00>."""
    if delta <= 0:
        raise ValueError(f"delta must be positive, got {delta}")
    return math.pi / (2 * math.sqrt(2) * delta)


def physical_schedule(p: FluxParams) -> Schedule:
    theta = theta_from_physics(p)
    return Schedule(tuple(ScheduleStep(theta, generator="sigma_x") for _ in range(p.n_steps)))


def continuous_run(p: FluxParams, initial: np.ndarray, seed: RngSeed) -> TrajectoryOutcome:
    """Measured sigma_x evolution of a qubit pair for ``total_time``."""
    return run_trajectory(physical_schedule(p), initial, seed)


def sigma_x_subspace_operator(angle: float) -> np.ndarray:
    """J0 block of ``J0 . (U x U)`` with ``U = exp(-i angle sigma_x)``."""
    step = Schedule((ScheduleStep(angle, generator="sigma_x"),))
    return restrict_to_j0(schedule_operator(step))


def gauge_transform(m_x: np.ndarray) -> np.ndarray:
    """``S m_x S^-1`` with ``S = diag(1, i) x diag(1, i)`` restricted to J0."""
    s = np.kron(np.diag(GAUGE), np.diag(GAUGE))[[0, 2, 1]]
    return (s[:, None] * np.asarray(m_x)) / s[None, :]
