"""Shared builders for the test suite."""

from morsebath import BathConfig, discretize


def make_bath(lam, beta, eta=2.0, k_modes=40, omega_c=1.0):
    return discretize(BathConfig(eta=eta, omega_c=omega_c, k_modes=k_modes,
                                 lam=lam, beta=beta))
