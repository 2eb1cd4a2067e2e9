"""NumPy implementations of the hot inner loops.

These are the fallback twins of the compiled kernels in ``_kernels.pyx``;
both backends implement the same contracts and are interchangeable.
Work is chunked over terms so the exp(i * outer(freqs, times)) temporary
stays bounded in memory.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 2048

ZERO_FREQ_TOL = 1e-12


def phase_sum(weights: np.ndarray, freqs: np.ndarray, times: np.ndarray) -> np.ndarray:
    """out[j] = sum_i weights[i] * exp(1j * freqs[i] * times[j])."""
    weights = np.ascontiguousarray(weights, dtype=np.complex128)
    freqs = np.ascontiguousarray(freqs, dtype=np.float64)
    times = np.ascontiguousarray(times, dtype=np.float64)
    out = np.zeros(times.shape[0], dtype=np.complex128)
    for start in range(0, weights.shape[0], _CHUNK):
        f = freqs[start:start + _CHUNK]
        w = weights[start:start + _CHUNK]
        out += w @ np.exp(1j * f[:, None] * times[None, :])
    return out


def gamma_sum(weights: np.ndarray, deltas: np.ndarray, offset: float,
              times: np.ndarray) -> np.ndarray:
    """Closed-form double time integral of the correlation function.

    out[j] = 2 * offset * t^2
             + sum_i 4 * weights[i] * (1 - cos(deltas[i] * t)) / deltas[i]^2

    Terms with |delta| < ZERO_FREQ_TOL take the removable-singularity
    limit 2 * w * t^2.
    """
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    deltas = np.ascontiguousarray(deltas, dtype=np.float64)
    times = np.ascontiguousarray(times, dtype=np.float64)
    t2 = times * times
    out = 2.0 * offset * t2
    small = np.abs(deltas) < ZERO_FREQ_TOL
    if np.any(small):
        out += 2.0 * weights[small].sum() * t2
    w = weights[~small]
    d = deltas[~small]
    coef = 4.0 * w / (d * d)
    for start in range(0, w.shape[0], _CHUNK):
        dk = d[start:start + _CHUNK]
        ck = coef[start:start + _CHUNK]
        out += ck @ (1.0 - np.cos(dk[:, None] * times[None, :]))
    return out
