"""Backend selection for the hot-loop kernels.

The compiled extension (``morsebath._kernels``, built from Cython) is
used when available; otherwise the NumPy implementation takes over.
Both expose the same two functions:

    phase_sum(weights, freqs, times)            -> complex128[n]
    gamma_sum(weights, deltas, offset, times)   -> float64[n]

``backend_name()`` reports which one is active.
"""

from __future__ import annotations

from . import _kernels_np

try:
    from . import _kernels as _impl  # type: ignore[attr-defined]

    _BACKEND = "compiled"
except ImportError:
    _impl = _kernels_np
    _BACKEND = "numpy"

phase_sum = _impl.phase_sum
gamma_sum = _impl.gamma_sum

ZERO_FREQ_TOL = _kernels_np.ZERO_FREQ_TOL


def backend_name() -> str:
    return _BACKEND
