"""
Exact dynamics of the W operation restricted to the no-click subspace.

One W step rotates both qubits by the same angle and then applies the
threshold measurement. Conditioned on no click, the two-qubit state stays in
``J0 = span{|00>, |10>, |01>}`` and evolves by a real 3x3 contraction. All
matrices in this module use the basis order ``[|00>, |10>, |01>]``, with the
first label belonging to the qubit that receives the phase flip.

Subspace states are real length-3 numpy arrays ``(c00, c10, c01)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError

SQRT2 = np.sqrt(2.0)

# subspace images of the Bell states (|01> +- |10>)/sqrt(2)
PSI_PLUS = np.array([0.0, 1.0, 1.0]) / SQRT2
PSI_MINUS = np.array([0.0, -1.0, 1.0]) / SQRT2
KET_00 = np.array([1.0, 0.0, 0.0])
KET_10 = np.array([0.0, 1.0, 0.0])
KET_01 = np.array([0.0, 0.0, 1.0])

# phase flip on the first qubit: |10> -> -|10>
PHASE_FLIP = np.diag([1.0, -1.0, 1.0])


def auto_theta(k: int) -> float:
    """Step angle that puts ``k`` W steps exactly at ``k * theta = pi / (2 sqrt 2)``."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    return np.pi / (2 * SQRT2 * k)


def rotation(theta: float) -> np.ndarray:
    """Real single-qubit rotation ``[[cos, -sin], [sin, cos]]``."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def build_w(theta: float) -> np.ndarray:
    """No-click operator of one W step, as a 3x3 matrix on J0."""
    c, s = np.cos(theta), np.sin(theta)
    cc, ss, sc = c * c, s * s, s * c
    return np.array([
        [cc, -sc, -sc],
        [sc, cc, -ss],
        [sc, -ss, cc],
    ])


def matrix_power(m: np.ndarray, k: int) -> np.ndarray:
    """``m**k`` by binary exponentiation."""
    if k < 0:
        raise ValueError(f"power must be nonnegative, got {k}")
    m = np.asarray(m, dtype=float)
    result = np.eye(m.shape[0])
    base = m
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def intelligent_evolution(k: int, theta: float) -> np.ndarray:
    """
    ``M^(k/2) . P . M^k``: k steps, a phase flip of the first qubit, then k/2 steps.

    With ``k * theta = pi / (2 sqrt 2)`` and small theta this sends
    ``|00> -> psi-`` and ``|10> -> -psi+``.
    """
    if k <= 0 or k % 2:
        raise ValueError(f"k must be a positive even integer, got {k}")
    w = build_w(theta)
    return matrix_power(w, k // 2) @ PHASE_FLIP @ matrix_power(w, k)


def recurrence_step(a: float, b: float, theta: float) -> tuple[float, float, float]:
    """
    One W step on ``a|00> + b(|01> + |10>)`` with Born-rule renormalization.

    Returns ``(a', b', survival)`` where survival is the no-click probability.
    """
    if abs(a * a + 2 * b * b - 1.0) > 1e-9:
        raise ContractError(f"(a, b) = ({a}, {b}) is not normalized: a^2 + 2b^2 = {a * a + 2 * b * b}")
    v = build_w(theta) @ np.array([a, b, b])
    survival = float(v @ v)
    root = np.sqrt(survival)
    return float(v[0] / root), float(v[1] / root), survival


def approx_survival(a: float, b: float, theta: float) -> float:
    """
    Survival estimate ``1 - a^2 sin^4 - 4 b^2 sin^2 cos^2`` that drops the
    ``4ab sin^3 cos`` cross term; exact only when ``a * b == 0``.
    """
    c, s = np.cos(theta), np.sin(theta)
    return 1.0 - a * a * s**4 - 4 * b * b * s * s * c * c


def analytic_m11(k: int, theta: float) -> float:
    """Small-angle estimate ``cos(sqrt(2) k sin(theta))`` of ``(M^k)[0, 0]``."""
    return float(np.cos(SQRT2 * k * np.sin(theta)))


def success_probability(operator: np.ndarray, initial: np.ndarray) -> float:
    """Squared norm of ``operator @ initial``; ``initial`` must be normalized."""
    initial = np.asarray(initial, dtype=float)
    if abs(initial @ initial - 1.0) > 1e-12:
        raise ContractError("initial subspace state must be normalized")
    v = np.asarray(operator) @ initial
    return float(v @ v)


def subspace_fidelity(u: np.ndarray, target: np.ndarray) -> float:
    """Overlap squared of the *normalized* ``u`` with the unit vector ``target``."""
    u = np.asarray(u)
    return float(abs(np.vdot(target, u)) ** 2 / np.vdot(u, u).real)


@dataclass(frozen=True)
class EvolutionReport:
    operator: np.ndarray
    success_prob: float
    final_state: np.ndarray
    fidelity_to_target: float


def evolve(operator: np.ndarray, initial: np.ndarray, target: np.ndarray) -> EvolutionReport:
    """Apply an operator to an initial J0 state and score it against a target."""
    p = success_probability(operator, initial)
    v = np.asarray(operator) @ np.asarray(initial, dtype=float)
    final = v / np.sqrt(p)
    return EvolutionReport(
        operator=np.asarray(operator),
        success_prob=p,
        final_state=final,
        fidelity_to_target=float(abs(final @ target) ** 2),
    )


def bell_preparation(k: int, theta: float | None = None) -> EvolutionReport:
    """``M^k |00>`` scored against psi+."""
    theta = auto_theta(k) if theta is None else theta
    return evolve(matrix_power(build_w(theta), k), KET_00, PSI_PLUS)
