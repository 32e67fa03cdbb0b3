"""Seeded random streams and Lévy step sampling (Mantegna's method).

Streams wrap numpy's PCG64 bit generator. Child streams are derived through
``SeedSequence(seed, spawn_key=(index,))`` so replicate ``k`` of seed ``s``
is the same stream regardless of how many replicates are run or where.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma

from .errors import ParameterError

BETA_MAX = 2.0


class RngStream:
    """Deterministic, splittable random stream.

    A stream is single-owner. Parallel work must use :meth:`child` rather than
    sharing an instance.
    """

    def __init__(self, seed: int, spawn_key: tuple[int, ...] = ()):
        if seed < 0 or seed >= 2**64:
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.spawn_key = tuple(int(k) for k in spawn_key)
        seq = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.PCG64(seq))

    def child(self, index: int) -> "RngStream":
        """Independent stream for ``(seed, index)``; does not advance ``self``."""
        if index < 0:
            raise ParameterError(f"child index must be >= 0, got {index}")
        return RngStream(self.seed, self.spawn_key + (index,))

    def normal(self, scale: float = 1.0, size=None):
        return self.generator.normal(0.0, scale, size)

    def uniform(self, size=None):
        return self.generator.random(size)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, spawn_key={self.spawn_key})"


@dataclass(frozen=True)
class LevyParams:
    beta: float
    sigma_u: float


def mantegna_sigma(beta: float) -> float:
    num = gamma(1.0 + beta) * math.sin(math.pi * beta / 2.0)
    den = gamma((1.0 + beta) / 2.0) * beta * 2.0 ** ((beta - 1.0) / 2.0)
    return float((num / den) ** (1.0 / beta))


def make_levy_params(beta: float) -> LevyParams:
    if not (0.0 < beta <= BETA_MAX):
        raise ParameterError(f"beta must lie in (0, 2], got {beta}")
    return LevyParams(beta=float(beta), sigma_u=mantegna_sigma(beta))


def _levy_draws(rng: RngStream, params: LevyParams, size) -> np.ndarray:
    u = rng.normal(params.sigma_u, size)
    v = np.abs(rng.normal(1.0, size))
    denom = v ** (1.0 / params.beta)
    bad = denom == 0.0
    # |v|**(1/beta) can underflow for small beta; redraw those entries
    while np.any(bad):
        redraw = np.abs(rng.normal(1.0, int(bad.sum()))) ** (1.0 / params.beta)
        denom[bad] = redraw
        bad = denom == 0.0
    # huge ratios overflow to inf; callers clamp positions to the box
    with np.errstate(over="ignore"):
        return u / denom


def levy_step(rng: RngStream, params: LevyParams) -> float:
    """One symmetric heavy-tailed step ``u / |v|**(1/beta)``."""
    return float(_levy_draws(rng, params, 1)[0])


def levy_steps(rng: RngStream, params: LevyParams, size) -> np.ndarray:
    """Array of independent steps; equivalent to repeated :func:`levy_step` in layout order."""
    return _levy_draws(rng, params, size)


def levy_vector(rng: RngStream, params: LevyParams, n: int, scale) -> np.ndarray:
    """Per-dimension scaled Lévy vector of length ``n``.

    ``scale`` may be a scalar or a length-``n`` vector of non-negative lengths.
    """
    if n < 1:
        raise ParameterError(f"dimension must be >= 1, got {n}")
    scale = np.broadcast_to(np.asarray(scale, dtype=float), (n,))
    if np.any(scale < 0) or not np.all(np.isfinite(scale)):
        raise ParameterError("Lévy scale entries must be finite and non-negative")
    return scale * _levy_draws(rng, params, n)


def uniform_vector(rng: RngStream, n: int) -> np.ndarray:
    if n < 1:
        raise ParameterError(f"dimension must be >= 1, got {n}")
    return rng.uniform(n)


def hill_tail_index(sample, fraction: float = 0.01) -> float:
    """Hill estimate of the tail exponent of ``|sample|`` from its top ``fraction``."""
    x = np.sort(np.abs(np.asarray(sample, dtype=float)))
    k = max(int(len(x) * fraction), 2)
    top = x[-k:]
    threshold = x[-k - 1]
    return float(k / np.sum(np.log(top / threshold)))


def survival_curve(sample) -> tuple[np.ndarray, np.ndarray]:
    """Empirical survival function of ``|sample|``: sorted values and P(|S| >= x)."""
    x = np.sort(np.abs(np.asarray(sample, dtype=float)))
    n = len(x)
    surv = (n - np.arange(n)) / n
    return x, surv


def survival_slope(sample, upper: float = 1e-2, lower: float = 1e-3) -> float:
    """Least-squares log-log slope of the survival curve where ``lower <= S <= upper``."""
    x, surv = survival_curve(sample)
    mask = (surv <= upper) & (surv >= lower) & (x > 0)
    slope, _ = np.polyfit(np.log(x[mask]), np.log(surv[mask]), 1)
    return float(slope)
