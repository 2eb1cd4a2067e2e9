"""Ohmic spectral density, discretization into K Morse modes, thermal data.

The environment is a star of K independent Morse oscillators sharing one
anharmonicity lam.  Frequencies and couplings follow the standard linear
discretization

    omega_k = 2 omega_c k / K,        k = 1..K,
    g_k     = sqrt( (2 omega_c / K) J(omega_k) ),

with the ohmic density J(w) = Theta(2 omega_c - w) eta (w/omega_c)
exp(-w/omega_c).  The hard cut uses the boundary convention
Theta(0) = 0, so the k = K mode carries exactly zero coupling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

import math

from .morse import MorseParams, MorseSpectrum, bound_energies, bound_state_count, x_matrix


@dataclass(frozen=True)
class BathConfig:
    """Discretized-bath parameters (shared anharmonicity, one temperature)."""

    eta: float
    omega_c: float
    k_modes: int
    lam: float
    beta: float

    def __post_init__(self) -> None:
        if self.eta < 0.0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if not self.omega_c > 0.0:
            raise ValueError(f"omega_c must be positive, got {self.omega_c}")
        if self.k_modes < 1:
            raise ValueError(f"k_modes must be >= 1, got {self.k_modes}")
        if not self.lam > 0.5:
            raise ValueError(f"lam must exceed 1/2, got {self.lam}")
        if not self.beta > 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class BathMode:
    """One discretized environment mode with its thermal data.

    b_matrix is the coupling operator g_k (b + b^dag) in the bound-state
    basis; b_tilde subtracts the per-mode thermal mean so that the
    weighted trace of its diagonal vanishes.  weights are ground-shifted
    Boltzmann factors and partition is the correspondingly shifted
    partition sum Z_k = sum_n exp(-beta (E_n - E_0)).
    """

    index: int
    omega: float
    g: float
    spectrum: MorseSpectrum
    h_diag: np.ndarray
    b_matrix: np.ndarray
    weights: np.ndarray
    partition: float
    mean_b: float
    b_tilde: np.ndarray

    @property
    def count(self) -> int:
        return self.spectrum.count


def spectral_density(omega, eta: float, omega_c: float):
    """Ohmic spectral density with a hard cut at 2 omega_c.

    J(w) = Theta(2 omega_c - w) * eta * (w / omega_c) * exp(-w / omega_c),
    with Theta(0) = 0 so J vanishes at and beyond the cut.
    Accepts a scalar or an array of non-negative frequencies.
    """
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0.0):
        raise ValueError("spectral_density requires omega >= 0")
    j = np.where(w < 2.0 * omega_c, eta * (w / omega_c) * np.exp(-w / omega_c), 0.0)
    if np.isscalar(omega):
        return float(j)
    return j


def _thermal(h_diag: np.ndarray, b_matrix: np.ndarray, beta: float):
    """Ground-shifted Boltzmann weights and the renormalized coupling."""
    shifted = np.exp(-beta * (h_diag - h_diag[0]))
    partition = float(shifted.sum())
    weights = shifted / partition
    mean_b = float(weights @ np.diag(b_matrix))
    b_tilde = b_matrix - mean_b * np.eye(len(h_diag))
    return weights, partition, mean_b, b_tilde


def mode_thermal(mode: BathMode, beta: float):
    """Thermal data of one mode at inverse temperature beta.

    Returns (weights, partition, mean_b, b_tilde).  Weights use the
    ground-energy shift exp(-beta (E_n - E_0)) / Z so beta as large as
    1e4 cannot underflow the whole vector.
    """
    if not beta > 0.0:
        raise ValueError(f"beta must be positive, got {beta}")
    return _thermal(mode.h_diag, mode.b_matrix, beta)


def discretize(config: BathConfig) -> list[BathMode]:
    """Build the K discretized modes, each with spectrum and thermal data."""
    # position elements depend on lam only: compute once, share across modes
    count = bound_state_count(config.lam)
    x_elements = x_matrix(config.lam)
    ladder = math.sqrt(2.0 * config.lam) * x_elements
    modes = []
    for k in range(1, config.k_modes + 1):
        omega_k = 2.0 * config.omega_c * k / config.k_modes
        g_k = float(np.sqrt(2.0 * config.omega_c / config.k_modes
                            * spectral_density(omega_k, config.eta, config.omega_c)))
        spec = MorseSpectrum(
            count=count,
            energies=bound_energies(MorseParams(omega=omega_k, lam=config.lam)),
            x_elements=x_elements,
            big_n=config.lam - 0.5,
        )
        b_matrix = g_k * ladder
        weights, partition, mean_b, b_tilde = _thermal(spec.energies, b_matrix, config.beta)
        modes.append(BathMode(
            index=k,
            omega=omega_k,
            g=g_k,
            spectrum=spec,
            h_diag=spec.energies,
            b_matrix=b_matrix,
            weights=weights,
            partition=partition,
            mean_b=mean_b,
            b_tilde=b_tilde,
        ))
    return modes
