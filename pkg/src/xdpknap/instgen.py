"""Seeded random trial instances.

Profits and weights are independent uniform draws in (0, 1). Free-capacity
trials draw ``c`` uniformly from ``[min w, 0.9 * sum w]``. Fixed-k trials
keep one item draw and bisect ``c`` until the greedy fill selects ``k``
items to within 1% (never tighter than one item).

Randomness comes from numpy's PCG64. Per-trial seeds are derived from a
master seed and integer keys with the SplitMix64 finaliser, so any trial
can be regenerated on its own.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .core import Instance

MASK64 = (1 << 64) - 1
BISECT_ITERS = 200
MAX_ATTEMPTS = 50


class GenerationError(RuntimeError):
    """Fixed-k calibration failed for every attempted item draw."""


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, *keys: int) -> int:
    """Mix integer ``keys`` into ``master`` to get an independent 64-bit seed."""
    s = splitmix64(master & MASK64)
    for key in keys:
        s = splitmix64(s ^ (int(key) & MASK64))
    return s


@dataclass(frozen=True)
class TrialConfig:
    n: int
    seed: int
    fixed_k: Optional[int] = None
    k_tolerance: float = 0.01

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.fixed_k is not None and not 1 <= self.fixed_k <= self.n:
            raise ValueError(f"fixed k={self.fixed_k} must lie in 1..n={self.n}")

    @property
    def capacity_rule(self) -> str:
        return "random-fraction" if self.fixed_k is None else "fixed-k"


def _draw_items(rng: np.random.Generator, n: int):
    p = rng.random(n)
    w = rng.random(n)
    # Generator.random() is [0, 1); keep both open at zero.
    for arr in (p, w):
        while True:
            zero = arr == 0.0
            if not zero.any():
                break
            arr[zero] = rng.random(int(zero.sum()))
    return p, w


def gen_random_trial(cfg: TrialConfig) -> Instance:
    if cfg.fixed_k is not None:
        raise ValueError("gen_random_trial needs a free-capacity config")
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    p, w = _draw_items(rng, cfg.n)
    lo = float(w.min())
    hi = max(lo, 0.9 * float(w.sum()))
    return Instance(p, w, rng.uniform(lo, hi))


def k_tolerance(k: int, frac: float = 0.01) -> int:
    return max(1, int(round(frac * k)))


def calibrate_capacity(p_sorted: np.ndarray, w_sorted: np.ndarray, k: int, tol: int) -> Optional[float]:
    """Bisect ``c`` on ``[min w, sum w]`` until greedy picks ``k +- tol`` items."""
    count = kernels.active.greedy_count
    lo = float(w_sorted.min())
    hi = float(w_sorted.sum())
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        got = count(p_sorted, w_sorted, mid)
        if abs(got - k) <= tol:
            return mid
        if got < k:
            lo = mid
        else:
            hi = mid
    return None


def gen_fixed_k_trial(cfg: TrialConfig) -> Instance:
    if cfg.fixed_k is None:
        raise ValueError("gen_fixed_k_trial needs a fixed-k config")
    k = cfg.fixed_k
    tol = k_tolerance(k, cfg.k_tolerance)
    for attempt in range(MAX_ATTEMPTS):
        seed = cfg.seed if attempt == 0 else derive_seed(cfg.seed, attempt)
        rng = np.random.Generator(np.random.PCG64(seed))
        p, w = _draw_items(rng, cfg.n)
        order = np.argsort(-(p / w), kind="stable")
        c = calibrate_capacity(p[order], w[order], k, tol)
        if c is not None:
            return Instance(p, w, c)
    raise GenerationError(f"could not calibrate k={k} at n={cfg.n} in {MAX_ATTEMPTS} draws")


def generate(cfg: TrialConfig) -> Instance:
    if cfg.fixed_k is None:
        return gen_random_trial(cfg)
    return gen_fixed_k_trial(cfg)
