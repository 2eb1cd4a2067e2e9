"""Exact factorized dephasing map of the impurity.

Pure dephasing block-diagonalizes the total Hamiltonian with respect to
the impurity projectors, so the decay factor multiplying the coherence
factorizes over modes:

    chi(t) = exp(i omega_s t) prod_k tr_k( exp(-i Hk_minus t) rho_k
                                           exp(+i Hk_plus t) ),

with Hk_pm = diag(E_kn) +- B_k.  Each mode contributes a finite Fourier
sum: with eigendecompositions Hk_pm = U_pm L_pm U_pm^T the trace equals

    sum_{a,b} W[a,b] exp(i (L_plus[b] - L_minus[a]) t),
    W = (U_minus^T rho_k U_plus) * (U_plus^T U_minus)^T,

so the per-time cost is O(d^2) after an O(d^3) setup per mode.

Basis convention: the impurity matrix is written in the (|+>, |->)
eigenbasis of sigma_z, and the coherence multiplied by chi(t) (which
carries the +i omega_s t phase) is the <-|rho|+> element, i.e. the
[1, 0] entry.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .bath import BathMode
from .correlation import CorrelationModel, build_correlation, gaussian_chi, mean_field_shift

# Per-mode factor terms whose cumulative magnitude is below this bound
# are dropped; the induced error in chi is below K * 1e-14.
NEGLIGIBLE_TERM_MASS = 1e-14

# Initial impurity state (1/2)(identity + sigma_x / 2): unit trace with
# coherence 1/4.
DEFAULT_RHO0 = np.array([[0.5, 0.25], [0.25, 0.5]], dtype=complex)


@dataclass(frozen=True)
class SystemConfig:
    """Impurity splitting and initial state."""

    omega_s: float
    rho0: np.ndarray

    def __post_init__(self) -> None:
        rho = np.asarray(self.rho0, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError(f"rho0 must be 2x2, got shape {rho.shape}")
        if np.abs(rho - rho.conj().T).max() > 1e-12:
            raise ValueError("rho0 must be Hermitian")
        if abs(rho.trace() - 1.0) > 1e-12:
            raise ValueError("rho0 must have unit trace")
        if np.linalg.eigvalsh(rho).min() < -1e-12:
            raise ValueError("rho0 must be positive semidefinite")
        object.__setattr__(self, "rho0", rho)


@dataclass(frozen=True)
class ModePropagators:
    """Eigendecompositions of Hk_plus and Hk_minus plus thermal weights."""

    evals_plus: np.ndarray
    evecs_plus: np.ndarray
    evals_minus: np.ndarray
    evecs_minus: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class DephasingTrace:
    """Decay factor chi on a uniform time grid."""

    times: np.ndarray
    chi: np.ndarray
    variant: str


def time_grid(t_max: float, dt: float) -> np.ndarray:
    """Uniform grid 0 .. t_max with step dt (t_max rounded to the grid)."""
    if not 0.0 < dt < t_max:
        raise ValueError(f"need 0 < dt < t_max, got dt={dt}, t_max={t_max}")
    n_steps = int(round(t_max / dt))
    return np.arange(n_steps + 1) * dt


def mode_propagators(mode: BathMode, renormalized: bool = False) -> ModePropagators:
    """Eigendecompose Hk_pm = diag(E) +- B (or +- B_tilde) once per mode."""
    b = mode.b_tilde if renormalized else mode.b_matrix
    h_plus = np.diag(mode.h_diag) + b
    h_minus = np.diag(mode.h_diag) - b
    evals_plus, evecs_plus = np.linalg.eigh(h_plus)
    evals_minus, evecs_minus = np.linalg.eigh(h_minus)
    return ModePropagators(evals_plus, evecs_plus, evals_minus, evecs_minus, mode.weights)


def _phase_terms(prop: ModePropagators,
                 drop_tol: float = NEGLIGIBLE_TERM_MASS) -> tuple[np.ndarray, np.ndarray]:
    """Flattened (weights, frequencies) of one mode's trace factor.

    Entries are pruned from the smallest magnitudes up while the dropped
    mass stays below drop_tol, which bounds the per-mode factor error by
    the same amount (|exp(i w t)| = 1).
    """
    a = prop.evecs_minus.T @ (prop.weights[:, None] * prop.evecs_plus)
    b = prop.evecs_plus.T @ prop.evecs_minus
    w = (a * b.T).ravel()
    freqs = (prop.evals_plus[None, :] - prop.evals_minus[:, None]).ravel()
    if drop_tol > 0.0 and w.size > 1:
        order = np.argsort(np.abs(w), kind="stable")
        cum = np.cumsum(np.abs(w)[order])
        keep = np.sort(order[cum > drop_tol])
        w = w[keep]
        freqs = freqs[keep]
    return w, freqs


def mode_factor(prop: ModePropagators, t):
    """Per-mode trace factor tr(exp(-i H- t) rho exp(+i H+ t)) at time(s) t."""
    w, freqs = _phase_terms(prop)
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    out = kernels.phase_sum(w.astype(np.complex128), freqs, ts)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return complex(out[0])
    return out


def chi_series(modes: list[BathMode], system: SystemConfig, times: np.ndarray,
               renormalized: bool = False) -> DephasingTrace:
    """Exact decay factor on the grid: system phase times all mode factors.

    With ``renormalized`` the mode factors use B_tilde in place of B;
    the result then differs from the bare one by the global phase
    exp(2i <B> t).
    """
    times = np.asarray(times, dtype=float)
    chi = np.exp(1j * system.omega_s * times)
    for mode in modes:
        w, freqs = _phase_terms(mode_propagators(mode, renormalized=renormalized))
        chi = chi * kernels.phase_sum(w.astype(np.complex128), freqs, times)
    return DephasingTrace(times=times, chi=chi, variant="exact")


def _pauli_vector(h: np.ndarray) -> tuple[float, float, float]:
    """Scalar part and (x, z) components of a real symmetric 2x2 matrix."""
    c0 = 0.5 * (h[0, 0] + h[1, 1])
    cx = h[0, 1]
    cz = 0.5 * (h[0, 0] - h[1, 1])
    return c0, cx, cz


def _spin_exponentials(mode: BathMode, times: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed cos/sin forms of exp(+i H+ t) and exp(-i H- t) for d = 2."""
    h_plus = np.diag(mode.h_diag) + mode.b_matrix
    h_minus = np.diag(mode.h_diag) - mode.b_matrix
    c0, cx, cz = _pauli_vector(h_plus)
    d0, dx, dz = _pauli_vector(h_minus)
    nt = times.shape[0]
    u_plus = np.empty((nt, 2, 2), dtype=complex)
    v_minus = np.empty((nt, 2, 2), dtype=complex)
    for (a0, ax, az, sgn, out) in ((c0, cx, cz, 1.0, u_plus), (d0, dx, dz, -1.0, v_minus)):
        norm = np.hypot(ax, az)
        if norm > 0.0:
            cos_t = np.cos(norm * times)
            sin_n = np.sin(norm * times) / norm
        else:
            cos_t = np.ones_like(times)
            sin_n = times.copy()
        phase = np.exp(1j * sgn * a0 * times)
        out[:, 0, 0] = phase * (cos_t + 1j * sgn * sin_n * az)
        out[:, 1, 1] = phase * (cos_t - 1j * sgn * sin_n * az)
        out[:, 0, 1] = phase * (1j * sgn * sin_n * ax)
        out[:, 1, 0] = out[:, 0, 1]
    return u_plus, v_minus


def spin_chi(modes: list[BathMode], system: SystemConfig, times: np.ndarray) -> DephasingTrace:
    """Fast path for a two-level (spin) environment, 1.5 < lam <= 2.5.

    Each mode factor is evaluated from the closed cos/sin forms of the
    2x2 exponentials; the result agrees with `chi_series` to rounding.
    """
    for mode in modes:
        if mode.count != 2:
            raise ValueError(
                f"spin_chi requires exactly 2 bound states per mode, "
                f"mode {mode.index} has {mode.count}")
    times = np.asarray(times, dtype=float)
    chi = np.exp(1j * system.omega_s * times)
    for mode in modes:
        u_plus, v_minus = _spin_exponentials(mode, times)
        rho = np.diag(mode.weights).astype(complex)
        chi = chi * np.einsum("tij,jk,tki->t", v_minus, rho, u_plus)
    return DephasingTrace(times=times, chi=chi, variant="spin-fast-path")


def gaussian_trace(modes: list[BathMode], system: SystemConfig, times: np.ndarray,
                   model: CorrelationModel | None = None,
                   second_order_phase: bool = False) -> DephasingTrace:
    """Gaussian surrogate trace on the same grid as the exact map."""
    if model is None:
        model = build_correlation(modes)
    shift = mean_field_shift(modes)
    times = np.asarray(times, dtype=float)
    chi = gaussian_chi(model, system.omega_s, shift, times,
                       second_order_phase=second_order_phase)
    return DephasingTrace(times=times, chi=chi, variant="gaussian")


def apply_map(rho0: np.ndarray, chi_value: complex) -> np.ndarray:
    """Apply the dephasing map: populations frozen, coherence times chi.

    The [1, 0] entry (<-|rho|+> in the sigma_z eigenbasis) is multiplied
    by chi_value and the [0, 1] entry is its conjugate, so Hermiticity
    and the trace are preserved exactly.
    """
    rho = np.asarray(rho0, dtype=complex)
    out = rho.copy()
    out[1, 0] = chi_value * rho[1, 0]
    out[0, 1] = np.conj(out[1, 0])
    return out
