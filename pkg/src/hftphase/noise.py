"""Reproducible Gaussian noise for magnitude measurements.

The noisy magnitude is  a' = max(0, a + a*rnoi*g1 + anoi*g2)  with g1, g2
independent standard-normal fields drawn from a generator seeded by the
params, so identical inputs give bit-identical outputs.  rnoi scales noise
with the signal, anoi is an absolute floor in measurement units; both at
zero return the input unchanged.  Negative noisy magnitudes are clamped to
zero (a detector magnitude cannot be negative).
"""

from dataclasses import dataclass

import numpy as np

from .field import as_magnitude


@dataclass(frozen=True)
class NoiseParams:
    rnoi: float = 0.0
    anoi: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.rnoi < 0 or self.anoi < 0:
            raise ValueError("noise scales must be nonnegative")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


def add_noise(a, params):
    """Apply relative and absolute Gaussian noise to a magnitude grid."""
    a = as_magnitude(a)
    if params.rnoi == 0.0 and params.anoi == 0.0:
        return a.copy()
    rng = np.random.default_rng(params.seed)
    g1 = rng.standard_normal(a.shape)
    g2 = rng.standard_normal(a.shape)
    noisy = a + a * (params.rnoi * g1) + params.anoi * g2
    return np.maximum(noisy, 0.0)
