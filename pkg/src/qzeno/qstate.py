"""
Pure-state vectors on an n-qubit register.

States are plain 1-D complex numpy arrays of length ``2**n``. The layout is
big-endian: qubit 0 is the leftmost symbol of a ket, so ``|10>`` on two qubits
sits at index 2. Every function here returns a new array and never mutates
its inputs.

The only two-qubit operation is the threshold projector ``J0 = I - |11><11|``
on a chosen pair of qubits; everything else is single-qubit.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import ContractError, DegenerateStateError, DimensionError

NORM_TOL = 1e-12

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
# phase flip used between the two W blocks
P = Z

GATES = {"I": I2, "X": X, "Z": Z, "H": H}


def n_qubits(s: np.ndarray) -> int:
    """Number of qubits encoded by a state vector of length 2**n."""
    size = np.shape(s)[0] if np.ndim(s) == 1 else -1
    n = size.bit_length() - 1
    if size < 2 or (1 << n) != size:
        raise DimensionError(f"state length must be a power of two >= 2, got {np.shape(s)}")
    return n


def basis_index(bits: Sequence[int], n: int | None = None) -> int:
    """
    Big-endian index of a computational basis state.

    >>> basis_index([1, 0])
    2
    >>> basis_index([0, 1, 1])
    3
    """
    bits = list(bits)
    if n is not None and len(bits) != n:
        raise DimensionError(f"expected {n} bits, got {len(bits)}")
    index = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"bits must be 0 or 1, got {b!r}")
        index = (index << 1) | int(b)
    return index


def ket(label: str) -> np.ndarray:
    """
    Product state from a label over ``0 1 + -``, e.g. ``ket("0+1")``.
    """
    single = {
        "0": np.array([1, 0], dtype=complex),
        "1": np.array([0, 1], dtype=complex),
        "+": np.array([1, 1], dtype=complex) / np.sqrt(2),
        "-": np.array([1, -1], dtype=complex) / np.sqrt(2),
    }
    if not label:
        raise ValueError("empty ket label")
    state = np.ones(1, dtype=complex)
    for ch in label:
        try:
            state = np.kron(state, single[ch])
        except KeyError:
            raise ValueError(f"unknown ket symbol {ch!r} in {label!r}") from None
    return state


def psi_plus() -> np.ndarray:
    """(|01> + |10>)/sqrt(2)."""
    return (ket("01") + ket("10")) / np.sqrt(2)


def psi_minus() -> np.ndarray:
    """(|01> - |10>)/sqrt(2)."""
    return (ket("01") - ket("10")) / np.sqrt(2)


def norm2(s: np.ndarray) -> float:
    return float(np.vdot(s, s).real)


def is_normalized(s: np.ndarray, tol: float = NORM_TOL) -> bool:
    return abs(norm2(s) - 1.0) <= tol


def is_unitary(g: np.ndarray, tol: float = NORM_TOL) -> bool:
    g = np.asarray(g)
    return g.shape == (2, 2) and np.allclose(g.conj().T @ g, I2, rtol=0, atol=tol)


def _check_qubit(q: int, n: int) -> None:
    if not 0 <= q < n:
        raise IndexError(f"qubit index {q} out of range for {n} qubits")


def _require_normalized(s: np.ndarray, what: str = "state") -> None:
    if not is_normalized(s):
        raise ContractError(f"{what} must be normalized, squared norm is {norm2(s)!r}")


def apply_single(g: np.ndarray, q: int, s: np.ndarray) -> np.ndarray:
    """Apply the 2x2 matrix ``g`` to qubit ``q`` of ``s``."""
    n = n_qubits(s)
    _check_qubit(q, n)
    t = np.asarray(s, dtype=complex).reshape([2] * n)
    t = np.tensordot(np.asarray(g, dtype=complex), t, axes=([1], [q]))
    return np.moveaxis(t, 0, q).reshape(-1)


def j_project(q1: int, q2: int, s: np.ndarray) -> tuple[np.ndarray, float]:
    """
    Apply the no-click projector ``I - |11><11|`` on qubits ``(q1, q2)``.

    Returns the *unnormalized* projected state and the click probability,
    i.e. the total weight of basis states with both qubits in ``|1>``.
    The survival probability is ``1 - click_prob == norm2(projected)``.
    """
    n = n_qubits(s)
    _check_qubit(q1, n)
    _check_qubit(q2, n)
    if q1 == q2:
        raise ValueError("J-measurement needs two distinct qubits")
    _require_normalized(s)
    t = np.array(s, dtype=complex).reshape([2] * n)
    idx = [slice(None)] * n
    idx[q1] = 1
    idx[q2] = 1
    block = t[tuple(idx)]
    click_prob = float(np.vdot(block, block).real)
    t[tuple(idx)] = 0
    return t.reshape(-1), click_prob


def inner(s1: np.ndarray, s2: np.ndarray) -> complex:
    """<s1|s2>, conjugate-linear in the first argument."""
    if np.shape(s1) != np.shape(s2):
        raise DimensionError(f"shape mismatch: {np.shape(s1)} vs {np.shape(s2)}")
    return complex(np.vdot(s1, s2))


def fidelity(s1: np.ndarray, s2: np.ndarray) -> float:
    """|<s1|s2>|^2 for normalized pure states; blind to global phase."""
    amp = inner(s1, s2)
    _require_normalized(s1, "first state")
    _require_normalized(s2, "second state")
    return min(1.0, abs(amp) ** 2)


def normalize(s: np.ndarray) -> tuple[np.ndarray, float]:
    """Return ``(s / |s|, |s|^2)``."""
    w = norm2(s)
    if w <= 0.0:
        raise DegenerateStateError("cannot normalize the zero vector")
    return np.asarray(s, dtype=complex) / np.sqrt(w), w


def append_qubit(s: np.ndarray, value: int = 0) -> np.ndarray:
    """Tensor a fresh qubit in ``|value>`` onto the right end of the register."""
    if value not in (0, 1):
        raise ValueError(f"qubit value must be 0 or 1, got {value!r}")
    fresh = np.zeros(2, dtype=complex)
    fresh[value] = 1
    return np.kron(np.asarray(s, dtype=complex), fresh)


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random normalized state, used by tests and demos."""
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


def subspace_amplitudes(s: np.ndarray, q1: int = 0, q2: int = 1) -> np.ndarray:
    """
    Amplitudes of a two-qubit state in the J0 basis order ``[|00>, |10>, |01>]``,
    where the first label belongs to ``q1``. Only defined for 2-qubit states.
    """
    if n_qubits(s) != 2:
        raise DimensionError("subspace restriction needs a two-qubit state")
    if (q1, q2) == (0, 1):
        return np.asarray(s)[[0, 2, 1]]
    if (q1, q2) == (1, 0):
        return np.asarray(s)[[0, 1, 2]]
    raise IndexError(f"invalid qubit pair {(q1, q2)} for two qubits")


def from_subspace(c: Sequence[complex]) -> np.ndarray:
    """Embed J0 amplitudes ``(c00, c10, c01)`` into a two-qubit vector."""
    c = np.asarray(c, dtype=complex)
    if c.shape != (3,):
        raise DimensionError(f"expected 3 subspace amplitudes, got shape {c.shape}")
    out = np.zeros(4, dtype=complex)
    out[[0, 2, 1]] = c
    return out
