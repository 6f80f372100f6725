"""
Monte Carlo of rotation-angle errors in the ``W^(k/2) P W^k`` protocol.

The figure of merit ``P_s`` averages two overlaps of the *unnormalized*
no-click output, so the click probability is folded in:

    P_s = (|<psi-| G |00>|^2 + |<psi+| G |10>|^2) / 2

With errors, every step uses its own angle ``theta + eps_i`` (the same on both
qubits) and ``G`` becomes the ordered product of the per-step W matrices.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import PSI_MINUS, PSI_PLUS, SQRT2, auto_theta, intelligent_evolution
from .sampling import RngSeed, iter_streams, map_trials, mean_stderr

DEFAULT_KS = (50, 100, 1000)
DEFAULT_EPS = (0.0, 0.05, 0.10, 0.20, 0.50)
DEFAULT_TRIALS = 100_000


def ps_from_operator(g: np.ndarray) -> float:
    g = np.asarray(g)
    return 0.5 * (float(PSI_MINUS @ g[:, 0]) ** 2 + float(PSI_PLUS @ g[:, 1]) ** 2)


def ps_exact(k: int, theta: float | None = None) -> float:
    """Error-free ``P_s``; ``theta`` defaults to ``pi / (2 sqrt(2) k)``."""
    theta = auto_theta(k) if theta is None else theta
    return ps_from_operator(intelligent_evolution(k, theta))


@dataclass(frozen=True)
class RobustnessConfig:
    k: int
    eps_max: float
    trials: int = DEFAULT_TRIALS
    seed: RngSeed = field(default_factory=RngSeed)
    theta: float | None = None
    # None: every step errs; otherwise each step errs with this probability
    sparse_prob: float | None = None

    def __post_init__(self):
        if self.k <= 0 or self.k % 2:
            raise ValueError(f"k must be a positive even integer, got {self.k}")
        if not self.eps_max >= 0:
            raise ValueError(f"eps_max must be >= 0, got {self.eps_max}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.theta is None:
            object.__setattr__(self, "theta", auto_theta(self.k))
        if self.sparse_prob is not None and not 0 <= self.sparse_prob <= 1:
            raise ValueError(f"sparse_prob must be in [0, 1], got {self.sparse_prob}")


@dataclass(frozen=True)
class PsEstimate:
    mean: float
    stderr: float
    trials: int
    config: RobustnessConfig

    def as_dict(self) -> dict:
        return {
            "k": self.config.k,
            "eps_max": self.config.eps_max,
            "theta": self.config.theta,
            "mean": self.mean,
            "stderr": self.stderr,
            "trials": self.trials,
        }


def draw_angles(cfg: RobustnessConfig, trial: int, rng: np.random.Generator | None = None) -> np.ndarray:
    """
    Per-step rotation angles of one trial, drawn from stream ``trial`` of
    ``cfg.seed`` (or from ``rng`` if that stream is supplied directly).
    """
    n_steps = 3 * cfg.k // 2
    half_width = cfg.eps_max * cfg.theta
    rng = cfg.seed.stream(trial).generator() if rng is None else rng
    eps = rng.uniform(-half_width, half_width, n_steps)
    if cfg.sparse_prob is not None:
        eps = np.where(rng.random(n_steps) < cfg.sparse_prob, eps, 0.0)
    return cfg.theta + eps


def _batch_ps(k: int, angles: np.ndarray) -> np.ndarray:
    """
    ``P_s`` for a batch of trials; ``angles`` has shape ``(n_steps, n_trials)``.

    Works in the basis ``(|00>, psi+, psi-)``, where W is the 2x2 block
    ``[[cos^2, -sqrt2 sin cos], [sqrt2 sin cos, cos 2theta]]`` on the first two
    vectors and leaves psi- alone; the phase flip swaps psi+ and psi-.
    Rows of ``x, y, z`` hold the |00>- and |10>-started columns.
    """
    n_trials = angles.shape[1]
    s = np.sin(angles)
    ss = s * s
    diag0 = 1.0 - ss
    if np.all(np.abs(angles) <= np.pi / 2):
        # cos >= 0 here, so it follows from sin without a second trig call
        off = SQRT2 * s * np.sqrt(diag0)
    else:
        off = SQRT2 * s * np.cos(angles)
    diag1 = diag0 - ss
    # |00> = (1, 0, 0); |10> = (0, 1/sqrt2, -1/sqrt2)
    x = np.zeros((2, n_trials))
    y = np.zeros((2, n_trials))
    z = np.zeros((2, n_trials))
    x[0] = 1.0
    y[1] = 1.0 / SQRT2
    z[1] = -1.0 / SQRT2
    for i in range(angles.shape[0]):
        if i == k:
            y, z = z, y
        x, y = diag0[i] * x - off[i] * y, off[i] * x + diag1[i] * y
    return 0.5 * (z[0] ** 2 + y[1] ** 2)


def ps_samples(cfg: RobustnessConfig) -> np.ndarray:
    """Per-trial ``P_s`` values in trial order."""
    n_steps = 3 * cfg.k // 2

    def chunk(lo: int, hi: int) -> np.ndarray:
        angles = np.empty((hi - lo, n_steps))
        for t, rng in enumerate(iter_streams(cfg.seed, lo, hi), start=lo):
            angles[t - lo] = draw_angles(cfg, t, rng)
        return _batch_ps(cfg.k, np.ascontiguousarray(angles.T))

    return map_trials(chunk, cfg.trials)


def ps_random(cfg: RobustnessConfig) -> PsEstimate:
    """Mean ``P_s`` over random angle errors, with its standard error."""
    if cfg.eps_max == 0 or cfg.sparse_prob == 0:
        return PsEstimate(ps_exact(cfg.k, cfg.theta), 0.0, cfg.trials, cfg)
    mean, stderr = mean_stderr(ps_samples(cfg))
    return PsEstimate(mean, stderr, cfg.trials, cfg)


def table1_report(ks=DEFAULT_KS, eps_list=DEFAULT_EPS, trials: int = DEFAULT_TRIALS,
                  seed: RngSeed | None = None) -> list[PsEstimate]:
    """Grid of ``P_s`` estimates, ordered by ``(k, eps_max)``."""
    seed = RngSeed() if seed is None else seed
    return [
        ps_random(RobustnessConfig(k=k, eps_max=eps, trials=trials, seed=seed))
        for k in sorted(ks)
        for eps in sorted(eps_list)
    ]
