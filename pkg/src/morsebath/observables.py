"""Analysis layer: dephasing time, information flows, Gaussian error."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import DephasingTrace

# Steps whose magnitude stays below this tolerance count as flat when
# splitting |chi| into monotone segments; double-precision products of
# ~40 mode factors carry roughly 1e-14 noise per point.
MONOTONE_TOL = 1e-12


@dataclass(frozen=True)
class FlowReport:
    """Summed rises (backflow) and falls (outflow) of |chi|.

    ratio is n_minus / n_plus, or None when nothing flowed out.
    """

    n_minus: float
    n_plus: float
    ratio: float | None


@dataclass(frozen=True)
class ErrorReport:
    """Pointwise |chi - chi_G| and the time-averaged trace distance."""

    pointwise: np.ndarray
    time_avg: float


def dephasing_time(trace: DephasingTrace, rho0: np.ndarray,
                   threshold: float = 0.1) -> float | None:
    """First time the relative coherence drops to ``threshold``.

    The coherence magnitude is |rho01(t)| = |chi(t)| |rho01(0)|, so the
    crossing of |rho01(t)| / |rho01(0)| through the threshold is located
    on |chi| and interpolated linearly between grid points.  Returns
    None when no crossing happens within the grid.
    """
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold must lie in (0, 1), got {threshold}")
    coherence0 = abs(complex(np.asarray(rho0)[1, 0]))
    if coherence0 == 0.0:
        raise ValueError("initial coherence is zero; dephasing time undefined")
    ratio = np.abs(trace.chi)
    below = np.nonzero(ratio <= threshold)[0]
    if below.size == 0:
        return None
    i = int(below[0])
    if i == 0:
        return float(trace.times[0])
    r_prev, r_next = ratio[i - 1], ratio[i]
    t_prev, t_next = trace.times[i - 1], trace.times[i]
    if r_prev == r_next:
        return float(t_next)
    return float(t_prev + (t_next - t_prev) * (r_prev - threshold) / (r_prev - r_next))


def blp_flows(abs_chi: np.ndarray, tol: float = MONOTONE_TOL) -> FlowReport:
    """Partition |chi| into monotone segments and sum rises and falls.

    Steps with |d|chi|| <= tol count as flat and contribute to neither
    direction, which keeps numerical plateaus from registering as
    spurious backflow.
    """
    x = np.asarray(abs_chi, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two samples to measure flows")
    dx = np.diff(x)
    n_minus = float(dx[dx > tol].sum())
    n_plus = float(-dx[dx < -tol].sum())
    ratio = (n_minus / n_plus) if n_plus > 0.0 else None
    return FlowReport(n_minus=n_minus, n_plus=n_plus, ratio=ratio)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Trace distance (1/2) Tr |a - b| of two 2x2 Hermitian matrices.

    Uses the closed-form 2x2 eigenvalues of the Hermitian difference.
    """
    m = np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex)
    tr = float(m[0, 0].real + m[1, 1].real)
    det = float(m[0, 0].real * m[1, 1].real - abs(m[0, 1]) ** 2)
    disc = np.sqrt(max(tr * tr - 4.0 * det, 0.0))
    e1 = 0.5 * (tr + disc)
    e2 = 0.5 * (tr - disc)
    return 0.5 * (abs(e1) + abs(e2))


def gaussian_error(exact: DephasingTrace, gauss: DephasingTrace,
                   rho0: np.ndarray) -> ErrorReport:
    """Pointwise and time-averaged error of the Gaussian surrogate.

    pointwise[i] = |chi(t_i) - chi_G(t_i)|; the time average is the
    trapezoidal mean over the grid of the trace distance between the two
    mapped states.  Both maps leave the populations untouched, so that
    distance is |chi - chi_G| |rho01(0)| at every point.
    """
    if exact.times.shape != gauss.times.shape or np.any(exact.times != gauss.times):
        raise ValueError("exact and gaussian traces must share one grid")
    pointwise = np.abs(exact.chi - gauss.chi)
    coherence0 = abs(complex(np.asarray(rho0)[1, 0]))
    distance = pointwise * coherence0
    horizon = exact.times[-1] - exact.times[0]
    time_avg = float(np.trapezoid(distance, exact.times) / horizon)
    return ErrorReport(pointwise=pointwise, time_avg=time_avg)
