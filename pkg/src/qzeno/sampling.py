"""
Counter-based random streams and order-independent trial fan-out.

Every trial owns a Philox stream keyed by ``(master_seed, stream_id)``, so a
trial's draws do not depend on which worker runs it or on how trials are
chunked. Results are always reassembled in trial order.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

_U64 = 1 << 64

# fixed chunking keeps work units identical for any worker count
CHUNK = 4096


@dataclass(frozen=True)
class RngSeed:
    master_seed: int = 0
    stream_id: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_id"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= v < _U64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    def stream(self, stream_id: int) -> "RngSeed":
        return RngSeed(self.master_seed, stream_id)

    def generator(self) -> np.random.Generator:
        key = np.array([self.master_seed, self.stream_id], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def iter_streams(seed: RngSeed, lo: int, hi: int) -> Iterator[np.random.Generator]:
    """
    Generators for streams ``lo .. hi-1`` of ``seed.master_seed``.

    One Philox instance is re-keyed per stream, which is several times cheaper
    than constructing a new one and yields identical draws. Each yielded
    generator is only valid until the next one is requested.
    """
    bitgen = np.random.Philox(key=np.array([seed.master_seed, 0], dtype=np.uint64))
    gen = np.random.Generator(bitgen)
    state = bitgen.state
    for stream_id in range(lo, hi):
        state["state"]["key"] = np.array([seed.master_seed, stream_id], dtype=np.uint64)
        state["state"]["counter"] = np.zeros(4, dtype=np.uint64)
        state["buffer_pos"] = 4
        state["has_uint32"] = 0
        state["uinteger"] = 0
        bitgen.state = state
        yield gen


def worker_count() -> int:
    """Worker threads from ``ZENO_THREADS``; unset or 0 means one per CPU."""
    raw = os.environ.get("ZENO_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"ZENO_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise ValueError(f"ZENO_THREADS must be >= 0, got {n}")
    return n or (os.cpu_count() or 1)


def map_trials(fn: Callable[[int, int], np.ndarray], trials: int, chunk: int = CHUNK) -> np.ndarray:
    """
    Evaluate ``fn(start, stop)`` over fixed trial chunks and concatenate in order.

    ``fn`` must return one value per trial in ``range(start, stop)``.
    """
    bounds = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
    workers = min(worker_count(), len(bounds))
    if workers <= 1:
        parts = [fn(lo, hi) for lo, hi in bounds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: fn(*b), bounds))
    return np.concatenate(parts) if parts else np.empty(0)


def mean_stderr(values: np.ndarray) -> tuple[float, float]:
    """Sample mean and standard error (``ddof=1``; zero for a single trial)."""
    values = np.asarray(values, dtype=float)
    n = values.size
    mean = float(values.mean())
    if n < 2:
        return mean, 0.0
    return mean, float(values.std(ddof=1) / np.sqrt(n))
