"""
Growing linear cluster states with Zeno steps instead of C-Phase gates.

To extend an n-qubit chain, the last qubit is Hadamard-rotated, a fresh
``|0>`` ancilla is appended and the ``W^(k/2) P W^k`` schedule is run on the
(last, ancilla) pair. That schedule sends the pair's ``|00>`` and ``|10>``
components to psi- and -psi+, which after a few single-qubit corrections is
the (n+1)-qubit chain. The C-Phase construction in :func:`build_cluster_oracle`
is only used as an independent reference.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import qstate
from .errors import ContractError
from .trajectory import _walk, theorem_schedule

MAX_QUBITS = 12

# per-qubit corrections: words over {H, X, Z} of length <= 2, applied left to right
_LETTERS = {"H": qstate.H, "X": qstate.X, "Z": qstate.Z}


def _word_matrix(word: str) -> np.ndarray:
    m = qstate.I2
    for ch in word:
        m = _LETTERS[ch] @ m
    return m


def _default_corrections() -> dict[str, np.ndarray]:
    words = ["I", "H", "X", "Z"]
    words += ["".join(p) for p in itertools.permutations("HXZ", 2)]
    return {w: (qstate.I2 if w == "I" else _word_matrix(w)) for w in words}


DEFAULT_CORRECTIONS = _default_corrections()


@dataclass(frozen=True)
class ClusterSpec:
    n: int
    k: int
    theta: float | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"chain length must be >= 1, got {self.n}")
        if self.n + 1 > MAX_QUBITS:
            raise ValueError(f"expanded chain would exceed {MAX_QUBITS} qubits")
        if self.k <= 0 or self.k % 2:
            raise ValueError(f"k must be a positive even integer, got {self.k}")
        if self.theta is None:
            object.__setattr__(self, "theta", np.pi / (2 * np.sqrt(2) * self.k))
        elif abs(self.k * self.theta - np.pi / (2 * np.sqrt(2))) > 1e-9:
            raise ValueError(f"k*theta must equal pi/(2 sqrt 2); got {self.k * self.theta!r}")


@dataclass(frozen=True)
class ExpansionResult:
    state: np.ndarray
    success_prob: float
    oracle_fidelity: float
    corrections: dict = field(default_factory=dict)
    # pair state straight out of the Zeno schedule, before any correction
    raw_state: np.ndarray | None = None
    max_click_prob: float = 0.0


def cphase(q1: int, q2: int, s: np.ndarray) -> np.ndarray:
    """``|i>|j> -> (-1)^(ij) |i>|j>`` on qubits q1, q2."""
    n = qstate.n_qubits(s)
    t = np.array(s, dtype=complex).reshape([2] * n)
    idx = [slice(None)] * n
    idx[q1] = 1
    idx[q2] = 1
    t[tuple(idx)] *= -1
    return t.reshape(-1)


def build_cluster_oracle(n: int) -> np.ndarray:
    """Linear cluster state: ``|+>^n`` followed by nearest-neighbour C-Phase gates."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > MAX_QUBITS:
        raise ValueError(f"n must be <= {MAX_QUBITS}, got {n}")
    s = qstate.ket("+" * n)
    for i in range(n - 1):
        s = cphase(i, i + 1, s)
    return s


def fidelity_up_to_local_frame(
    s: np.ndarray,
    oracle: np.ndarray,
    qubits: Sequence[int],
    allowed: Mapping[str, np.ndarray] | None = None,
    tol: float = 1e-12,
) -> tuple[float, dict[int, str]]:
    """
    Best fidelity of ``s`` with ``oracle`` over single-qubit corrections on ``qubits``.

    ``allowed`` maps a label to a 2x2 matrix; its iteration order defines the
    tie-break, with earlier labels preferred (lexicographic over the qubit list).
    Returns the fidelity and the chosen label per qubit.
    """
    allowed = DEFAULT_CORRECTIONS if allowed is None else allowed
    labels = list(allowed)
    best, choice = -1.0, None
    for combo in itertools.product(labels, repeat=len(qubits)):
        t = s
        for q, label in zip(qubits, combo):
            t = qstate.apply_single(allowed[label], q, t)
        f = qstate.fidelity(t, oracle)
        if f > best + tol:
            best, choice = f, combo
    return best, dict(zip(qubits, choice))


def _apply_corrections(s: np.ndarray, corrections: Mapping[int, str], allowed) -> np.ndarray:
    for q, label in corrections.items():
        s = qstate.apply_single(allowed[label], q, s)
    return s


def zeno_expand(c: np.ndarray, spec: ClusterSpec, min_input_fidelity: float = 1 - 1e-6) -> ExpansionResult:
    """
    Extend an ``spec.n``-qubit linear cluster state by one qubit.

    Runs the no-click branch of the ``W^(k/2) P W^k`` schedule on the last
    qubit and a fresh ancilla; ``success_prob`` is the probability that no
    J-measurement along the way clicks.
    """
    n = spec.n
    if qstate.n_qubits(c) != n:
        raise ValueError(f"state has {qstate.n_qubits(c)} qubits, expected {n}")
    oracle_in = build_cluster_oracle(n)
    f_in = qstate.fidelity(c, oracle_in)
    if f_in < min_input_fidelity:
        raise ContractError(f"input is not a {n}-qubit cluster state (fidelity {f_in:.9f})")

    s = qstate.append_qubit(qstate.apply_single(qstate.H, n - 1, c), 0)
    sch = theorem_schedule(spec.k, spec.theta, target_pair=(n - 1, n))
    success, max_click = 1.0, 0.0
    for i, click, after in _walk(sch, s):
        if after is None:
            raise ContractError(f"no-click branch vanished at step {i}")
        success *= 1.0 - click
        max_click = max(max_click, click)
        s = after
    raw = s

    oracle = build_cluster_oracle(n + 1)
    best, chosen = fidelity_up_to_local_frame(raw, oracle, (n - 1, n))
    final = _apply_corrections(raw, chosen, DEFAULT_CORRECTIONS)
    return ExpansionResult(
        state=final,
        success_prob=success,
        oracle_fidelity=best,
        corrections=chosen,
        raw_state=raw,
        max_click_prob=max_click,
    )


def grow_chain(n: int, k: int, theta: float | None = None,
               min_input_fidelity: float = 1 - 1e-6) -> list[ExpansionResult]:
    """
    Build an ``n``-qubit chain from ``|+>`` by repeated expansion.

    The first expansion (1 -> 2 qubits) is the Bell bootstrap. One result per
    expansion step is returned.
    """
    if n < 2:
        raise ValueError(f"chain length must be >= 2, got {n}")
    if n > MAX_QUBITS:
        raise ValueError(f"chain length must be <= {MAX_QUBITS}, got {n}")
    state = qstate.ket("+")
    results = []
    for m in range(1, n):
        r = zeno_expand(state, ClusterSpec(m, k, theta), min_input_fidelity=min_input_fidelity)
        results.append(r)
        state = r.state
    return results
