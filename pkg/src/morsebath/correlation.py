"""Second-order bath correlation function and its double time integral.

The renormalized correlation function splits into a constant offset plus
a spectral decomposition of the time-dependent part,

    alpha(t) = C0 + sum_j w_j exp(i Delta_j t),

where the sum runs over all modes k and ordered level pairs n != p with
w = p_kn |b_tilde[n, p]|^2 and Delta = E_kn - E_kp.  The offset collects
the diagonal (asymmetry) contributions and vanishes only at zero
temperature.  The decay exponent of the Gaussian surrogate is the real
part of the double time integral,

    Gamma(t) = 4 Re int_0^t ds int_0^s du alpha(s - u)
             = 2 C0 t^2 + sum_j 4 w_j (1 - cos(Delta_j t)) / Delta_j^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bath import BathMode
from . import kernels

# Terms whose cumulative weight falls below this fraction of alpha(0) are
# dropped at model build; the bound on any evaluated quantity is well
# below every test tolerance used downstream.
NEGLIGIBLE_WEIGHT = 1e-13


@dataclass(frozen=True)
class CorrelationModel:
    """Offset plus spectral terms of the second-order correlation."""

    offset_c0: float
    weights: np.ndarray
    deltas: np.ndarray


def build_correlation(modes: list[BathMode], *,
                      weight_cutoff: float = NEGLIGIBLE_WEIGHT) -> CorrelationModel:
    """Aggregate offset and time-dependent terms over all modes.

    offset_c0 = sum_{k,n} p_kn b_tilde[n,n]^2; the term list enumerates
    every ordered pair n != p of every mode.  Terms carrying a
    negligible fraction of the total weight are discarded (see
    ``NEGLIGIBLE_WEIGHT``); pass ``weight_cutoff=0`` to keep all.
    """
    c0 = 0.0
    all_w = []
    all_d = []
    for mode in modes:
        bt2 = mode.b_tilde * mode.b_tilde
        c0 += float(mode.weights @ np.diag(bt2))
        d = mode.count
        if d < 2:
            continue
        w_mat = mode.weights[:, None] * bt2
        d_mat = mode.h_diag[:, None] - mode.h_diag[None, :]
        off = ~np.eye(d, dtype=bool)
        all_w.append(w_mat[off])
        all_d.append(d_mat[off])
    if all_w:
        w = np.concatenate(all_w)
        deltas = np.concatenate(all_d)
    else:
        w = np.empty(0)
        deltas = np.empty(0)
    total = float(w.sum())
    if total > 0.0 and weight_cutoff > 0.0:
        order = np.argsort(w, kind="stable")
        cum = np.cumsum(w[order])
        keep = np.sort(order[cum > weight_cutoff * total])
        w = w[keep]
        deltas = deltas[keep]
    return CorrelationModel(offset_c0=c0, weights=w, deltas=deltas)


def alpha(model: CorrelationModel, t):
    """Correlation function C0 + sum_j w_j exp(i Delta_j t) at time(s) t."""
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = model.offset_c0 + kernels.phase_sum(
        model.weights.astype(np.complex128), model.deltas, ts)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return complex(out[0])
    return out


def offset_ratio(model: CorrelationModel) -> float:
    """Relative offset C0 / C(0), with C(0) = sum of term weights."""
    c_at_0 = float(model.weights.sum())
    if c_at_0 <= 0.0:
        raise ZeroDivisionError("offset_ratio undefined: correlation has no time-dependent terms")
    return model.offset_c0 / c_at_0


def gamma_decay(model: CorrelationModel, t):
    """Decay exponent Gamma(t) = 4 Re of the double integral of alpha."""
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = kernels.gamma_sum(model.weights, model.deltas, model.offset_c0, ts)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return float(out[0])
    return out


def mean_field_shift(modes: list[BathMode]) -> float:
    """Phase velocity 2 <B> of the mean-field part of the coupling.

    The coherence picked out by the dynamical map rotates at
    omega_s + 2 <B>_beta once the coupling is split into mean plus
    fluctuation; the Gaussian surrogate carries that shift explicitly.
    """
    return 2.0 * sum(mode.mean_b for mode in modes)


def _second_order_phase(model: CorrelationModel, ts: np.ndarray) -> np.ndarray:
    """Im of the double integral: sum_j 4 w_j (t/Delta - sin(Delta t)/Delta^2)."""
    out = np.zeros_like(ts)
    big = np.abs(model.deltas) >= kernels.ZERO_FREQ_TOL
    w = model.weights[big]
    d = model.deltas[big]
    for start in range(0, w.shape[0], 2048):
        wk = w[start:start + 2048]
        dk = d[start:start + 2048]
        out += (4.0 * wk / dk) @ (ts[None, :] - np.sin(dk[:, None] * ts[None, :]) / dk[:, None])
    return out


def gaussian_chi(model: CorrelationModel, omega_s: float, mean_shift: float, t,
                 second_order_phase: bool = False):
    """Gaussian (second-order) surrogate decay factor.

    chi_G(t) = exp(i (omega_s + mean_shift) t - Gamma(t)).  With
    ``second_order_phase`` the imaginary part of the double integral is
    kept as an additional phase; the default follows the real-only
    convention of the surrogate's closed form.
    """
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    phase = (omega_s + mean_shift) * ts
    if second_order_phase:
        phase = phase - _second_order_phase(model, ts)
    out = np.exp(1j * phase - kernels.gamma_sum(
        model.weights, model.deltas, model.offset_c0, ts))
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return complex(out[0])
    return out
