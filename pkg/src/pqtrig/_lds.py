"""Deterministic seeded low-discrepancy sequences (additive Kronecker lattice).

The generator is the R_d sequence: u_i = frac(offset + (i+1) * alpha), where
alpha_j = phi_d^-(j+1) and phi_d is the unique real root of x^(d+1) = x + 1.
The seed only shifts the lattice (offsets drawn from a PCG64 stream), so two
runs with the same seed produce bit-identical samples.
"""

from __future__ import annotations

import numpy as np


def _phi(d: int) -> float:
    # root of x^(d+1) = x + 1 by fixed-point iteration
    x = 2.0
    for _ in range(64):
        x = (1.0 + x) ** (1.0 / (d + 1))
    return x


def sample_unit(n: int, d: int, seed: int) -> np.ndarray:
    """Return an (n, d) array of low-discrepancy points in [0, 1)."""
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    g = _phi(d)
    alpha = (1.0 / g) ** np.arange(1, d + 1)
    offset = np.random.default_rng(int(seed)).random(d)
    idx = np.arange(1, n + 1, dtype=np.float64)[:, None]
    return (offset[None, :] + idx * alpha[None, :]) % 1.0


def sample_log_uniform(n: int, lo: float, hi: float, d: int, seed: int) -> np.ndarray:
    """(n, d) points log-uniformly spread over [lo, hi], 0 < lo < hi."""
    if not (0.0 < lo < hi):
        raise ValueError("need 0 < lo < hi")
    u = sample_unit(n, d, seed)
    llo, lhi = np.log(lo), np.log(hi)
    return np.exp(llo + u * (lhi - llo))
