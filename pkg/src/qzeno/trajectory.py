"""
Stochastic runs of a W-step schedule with sampled J-measurement outcomes.

A trajectory rotates the target pair step by step and, at measured steps,
draws whether the threshold detector clicks. A click collapses the pair to
``|11>`` and ends the run. Without a click the state is projected onto J0 and
renormalized, so the surviving branch is the same for every seed: only the
click times are random. :func:`estimate_success` relies on that and samples
the click chain directly, consuming each trial's stream exactly the way
:func:`run_trajectory` would.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from . import qstate
from .core import rotation
from .errors import ContractError
from .sampling import RngSeed, iter_streams, map_trials

GENERATORS = ("rotation", "sigma_x")


def sigma_x_gate(angle: float) -> np.ndarray:
    """``exp(-i angle sigma_x) = cos(angle) I - i sin(angle) sigma_x``."""
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -1j * s], [-1j * s, c]])


@dataclass(frozen=True)
class ScheduleStep:
    theta: float
    pre_phase_flip: bool = False
    measure: bool = True
    # "rotation": real R(theta); "sigma_x": exp(-i theta sigma_x)
    generator: str = "rotation"

    def __post_init__(self):
        if not np.isfinite(self.theta):
            raise ValueError(f"step angle must be finite, got {self.theta}")
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}")

    def gate(self) -> np.ndarray:
        if self.generator == "sigma_x":
            return sigma_x_gate(self.theta)
        return rotation(self.theta).astype(complex)


@dataclass(frozen=True)
class Schedule:
    steps: tuple[ScheduleStep, ...]
    target_pair: tuple[int, int] = (0, 1)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "target_pair", tuple(self.target_pair))
        if not self.steps:
            raise ValueError("schedule must contain at least one step")
        q1, q2 = self.target_pair
        if q1 == q2 or min(q1, q2) < 0:
            raise ValueError(f"invalid target pair {self.target_pair}")

    def __len__(self) -> int:
        return len(self.steps)

    def check_register(self, n: int) -> None:
        if max(self.target_pair) >= n:
            raise ValueError(f"target pair {self.target_pair} out of range for {n} qubits")


def w_schedule(k: int, theta: float, target_pair=(0, 1), generator: str = "rotation") -> Schedule:
    """``k`` plain measured W steps."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return Schedule(tuple(ScheduleStep(theta, generator=generator) for _ in range(k)), target_pair)


def theorem_schedule(k: int, theta: float, target_pair=(0, 1)) -> Schedule:
    """
    ``W^(k/2) P W^k`` as a step list: k steps, then k/2 steps of which the
    first flips the phase of the pair's first qubit before rotating.
    """
    if k <= 0 or k % 2:
        raise ValueError(f"k must be a positive even integer, got {k}")
    steps = [ScheduleStep(theta) for _ in range(k)]
    steps.append(ScheduleStep(theta, pre_phase_flip=True))
    steps.extend(ScheduleStep(theta) for _ in range(k // 2 - 1))
    return Schedule(tuple(steps), target_pair)


def schedule_operator(sch: Schedule) -> np.ndarray:
    """
    Two-qubit (4x4, big-endian in the target pair) no-click operator of a schedule.
    """
    op = np.eye(4, dtype=complex)
    j0 = np.diag([1, 1, 1, 0]).astype(complex)
    flip = np.kron(qstate.P, qstate.I2)
    for step in sch.steps:
        if step.pre_phase_flip:
            op = flip @ op
        g = step.gate()
        op = np.kron(g, g) @ op
        if step.measure:
            op = j0 @ op
    return op


def restrict_to_j0(op4: np.ndarray) -> np.ndarray:
    """3x3 block of a two-qubit operator in the ``[|00>, |10>, |01>]`` order."""
    order = [0, 2, 1]
    return np.asarray(op4)[np.ix_(order, order)]


@dataclass(frozen=True)
class TrajectoryOutcome:
    status: str  # "survived" | "clicked"
    click_step: int | None
    final_state: np.ndarray | None
    survival_log: tuple[float, ...] = field(default=())
    cumulative_prob: float = 1.0

    @property
    def survived(self) -> bool:
        return self.status == "survived"


def _advance(step: ScheduleStep, state: np.ndarray, q1: int, q2: int) -> np.ndarray:
    if step.pre_phase_flip:
        state = qstate.apply_single(qstate.P, q1, state)
    g = step.gate()
    return qstate.apply_single(g, q2, qstate.apply_single(g, q1, state))


def _walk(sch: Schedule, initial: np.ndarray) -> Iterator[tuple[int, float, np.ndarray]]:
    """
    Follow the no-click branch. Yields ``(step_index, click_prob, state)`` at
    every measured step, where ``state`` is the renormalized post-measurement
    state (``None`` when the click is certain, which also ends the walk).
    """
    q1, q2 = sch.target_pair
    state = initial
    for i, step in enumerate(sch.steps):
        state = _advance(step, state, q1, q2)
        if not step.measure:
            continue
        projected, click = qstate.j_project(q1, q2, state)
        if qstate.norm2(projected) == 0.0:
            yield i, 1.0, None
            return
        state, _ = qstate.normalize(projected)
        yield i, click, state
    if not sch.steps[-1].measure:
        yield len(sch.steps), 0.0, state


def _check_inputs(sch: Schedule, initial: np.ndarray) -> np.ndarray:
    initial = np.asarray(initial, dtype=complex)
    sch.check_register(qstate.n_qubits(initial))
    if not qstate.is_normalized(initial):
        raise ContractError("initial state must be normalized")
    return initial


def run_trajectory(sch: Schedule, initial: np.ndarray, seed: RngSeed) -> TrajectoryOutcome:
    """
    Run one trajectory. At each measured step a uniform ``u`` in [0, 1) is
    drawn from ``seed``'s stream and the detector clicks iff ``u < click_prob``.

    ``survival_log`` holds the no-click probability of every measured step that
    was passed; ``cumulative_prob`` is their product.
    """
    initial = _check_inputs(sch, initial)
    rng = seed.generator()
    log: list[float] = []
    cum = 1.0
    state = initial
    for i, click, after in _walk(sch, initial):
        if i == len(sch.steps):
            state = after
            break
        if rng.random() < click:
            return TrajectoryOutcome("clicked", i, None, tuple(log), cum)
        survival = 1.0 - click
        log.append(survival)
        cum *= survival
        state = after
    return TrajectoryOutcome("survived", None, state, tuple(log), cum)


def click_chain(sch: Schedule, initial: np.ndarray) -> np.ndarray:
    """Conditional click probabilities along the no-click branch."""
    initial = _check_inputs(sch, initial)
    return np.array([c for i, c, _ in _walk(sch, initial) if i < len(sch.steps)])


def no_click_branch(sch: Schedule, initial: np.ndarray) -> tuple[np.ndarray, float]:
    """Deterministic surviving state and the probability of reaching it."""
    initial = _check_inputs(sch, initial)
    state, cum = initial, 1.0
    for i, click, after in _walk(sch, initial):
        if after is None:
            raise ContractError(f"no-click branch has zero weight at step {i}")
        if i < len(sch.steps):
            cum *= 1.0 - click
        state = after
    return state, cum


def sample_survival(sch: Schedule, initial: np.ndarray, trials: int, seed: RngSeed) -> np.ndarray:
    """
    Boolean survival flag per trial; trial ``t`` uses stream ``t`` of ``seed``.

    Equivalent draw for draw to calling :func:`run_trajectory` once per trial.
    """
    clicks = click_chain(sch, initial)

    def chunk(lo: int, hi: int) -> np.ndarray:
        out = np.empty(hi - lo, dtype=bool)
        for t, rng in enumerate(iter_streams(seed, lo, hi), start=lo):
            out[t - lo] = bool(np.all(rng.random(clicks.size) >= clicks))
        return out

    return map_trials(chunk, trials)


def estimate_success(sch: Schedule, initial: np.ndarray, trials: int, seed: RngSeed) -> tuple[float, float]:
    """Fraction of surviving trajectories and its binomial standard error."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    survived = sample_survival(sch, initial, trials, seed)
    mean = float(survived.mean())
    return mean, float(np.sqrt(mean * (1.0 - mean) / trials))
