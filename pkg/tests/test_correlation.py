import math

import numpy as np
import pytest
from scipy.integrate import dblquad

from morsebath import (
    CorrelationModel,
    alpha,
    build_correlation,
    gamma_decay,
    gaussian_chi,
    mean_field_shift,
    offset_ratio,
)
from morsebath.correlation import _second_order_phase
from helpers import make_bath


def single_term(w=1.0, delta=2.0, c0=0.0):
    return CorrelationModel(offset_c0=c0, weights=np.array([w]), deltas=np.array([delta]))


def test_build_single_two_level_mode():
    modes = make_bath(lam=2.5, beta=1.0, eta=2.0, k_modes=2)[:1]
    mode = modes[0]
    model = build_correlation(modes)
    p = mode.weights
    bt = mode.b_tilde
    expected_c0 = p[0] * bt[0, 0] ** 2 + p[1] * bt[1, 1] ** 2
    assert model.offset_c0 == pytest.approx(expected_c0, abs=1e-15)
    a0 = alpha(model, 0.0)
    assert a0.real == pytest.approx(expected_c0 + (p[0] + p[1]) * bt[0, 1] ** 2, abs=1e-14)
    assert abs(a0.imag) < 1e-14


def test_offset_vanishes_at_zero_temperature():
    modes = make_bath(lam=2.6, beta=1e4, eta=0.01, k_modes=40)
    model = build_correlation(modes)
    assert model.offset_c0 < 1e-10
    assert offset_ratio(model) < 1e-8


def test_alpha_hermiticity(rng):
    modes = make_bath(lam=2.6, beta=4.0, eta=0.5, k_modes=10)
    model = build_correlation(modes)
    for t in rng.uniform(0.0, 20.0, size=100):
        assert alpha(model, -t) == pytest.approx(np.conj(alpha(model, t)), abs=1e-13)


def test_alpha_single_term():
    model = single_term(w=1.0, delta=2.0)
    assert alpha(model, math.pi / 2.0) == pytest.approx(-1.0 + 0.0j, abs=1e-14)


def test_offset_ratio_requires_terms():
    empty = CorrelationModel(offset_c0=0.3, weights=np.empty(0), deltas=np.empty(0))
    with pytest.raises(ZeroDivisionError):
        offset_ratio(empty)
    modes = make_bath(lam=2.5, beta=1.0, eta=0.0, k_modes=4)
    with pytest.raises(ZeroDivisionError):
        offset_ratio(build_correlation(modes))


def test_offset_ratio_temperature_ordering():
    hot = build_correlation(make_bath(lam=2.6, beta=1.0, eta=0.01, k_modes=40))
    cold = build_correlation(make_bath(lam=2.6, beta=10.0, eta=0.01, k_modes=40))
    assert offset_ratio(hot) > offset_ratio(cold)
    assert hot.offset_c0 > cold.offset_c0


def test_gamma_closed_forms():
    ts = np.linspace(0.0, 10.0, 7)
    pure_offset = CorrelationModel(offset_c0=0.7, weights=np.empty(0), deltas=np.empty(0))
    np.testing.assert_allclose(gamma_decay(pure_offset, ts), 2.0 * 0.7 * ts**2, atol=1e-13)
    assert gamma_decay(pure_offset, 0.0) == 0.0

    model = single_term(w=0.3, delta=1.7)
    expected = 8.0 * 0.3 * np.sin(1.7 * ts / 2.0) ** 2 / 1.7**2
    np.testing.assert_allclose(gamma_decay(model, ts), expected, atol=1e-13)

    # removable singularity: |delta| below tolerance takes the t^2 branch
    degenerate = single_term(w=0.3, delta=1e-15)
    np.testing.assert_allclose(gamma_decay(degenerate, ts), 2.0 * 0.3 * ts**2, atol=1e-13)


def test_gamma_equals_double_quadrature(rng):
    modes = make_bath(lam=2.6, beta=4.0, eta=0.5, k_modes=5)
    model = build_correlation(modes)
    for t in rng.uniform(0.5, 20.0, size=5):
        direct, err = dblquad(lambda u, s: alpha(model, s - u).real,
                              0.0, t, 0.0, lambda s: s,
                              epsabs=1e-11, epsrel=1e-11)
        assert abs(gamma_decay(model, float(t)) - 4.0 * direct) < 1e-8


def test_gamma_nonnegative(rng):
    w = rng.uniform(0.0, 1.0, size=30)
    d = rng.uniform(-3.0, 3.0, size=30)
    model = CorrelationModel(offset_c0=0.1, weights=w, deltas=d)
    assert np.all(gamma_decay(model, np.linspace(0.0, 30.0, 500)) >= 0.0)


def harmonic_reference_model(k_modes=40, eta=0.01, omega_c=1.0, beta=4.0, levels=120):
    """Correlation terms of a strictly harmonic bath (ladder elements
    sqrt(n+1)), truncated far below the thermal tail."""
    ws, ds = [], []
    for k in range(1, k_modes + 1):
        omega = 2.0 * omega_c * k / k_modes
        j = 0.0 if omega >= 2.0 * omega_c else eta * (omega / omega_c) * math.exp(-omega / omega_c)
        g2 = 2.0 * omega_c / k_modes * j
        n = np.arange(levels)
        p = np.exp(-beta * omega * n)
        p /= p.sum()
        ws.extend(g2 * (n + 1.0) * p)
        ds.extend(np.full(levels, -omega))
        ws.extend(g2 * n * p)
        ds.extend(np.full(levels, omega))
    return CorrelationModel(offset_c0=0.0, weights=np.array(ws), deltas=np.array(ds))


def test_gamma_harmonic_limit_matches_coth_sum():
    beta, k_modes, eta, omega_c = 4.0, 40, 0.01, 1.0
    model = harmonic_reference_model(k_modes, eta, omega_c, beta)
    ts = np.linspace(0.0, 20.0, 201)[1:]
    expected = np.zeros_like(ts)
    for k in range(1, k_modes + 1):
        omega = 2.0 * omega_c * k / k_modes
        j = 0.0 if omega >= 2.0 * omega_c else eta * (omega / omega_c) * math.exp(-omega / omega_c)
        g2 = 2.0 * omega_c / k_modes * j
        expected += (8.0 * g2 / omega**2 * np.sin(omega * ts / 2.0) ** 2
                     / math.tanh(beta * omega / 2.0))
    got = gamma_decay(model, ts)
    assert np.max(np.abs(got - expected) / expected) < 0.02


def test_gaussian_chi_basics():
    modes = make_bath(lam=2.6, beta=4.0, eta=0.5, k_modes=10)
    model = build_correlation(modes)
    shift = mean_field_shift(modes)
    assert gaussian_chi(model, 2.0, shift, 0.0) == pytest.approx(1.0 + 0.0j, abs=1e-14)
    ts = np.linspace(0.0, 20.0, 101)
    chi = gaussian_chi(model, 2.0, shift, ts)
    assert np.all(np.abs(chi) <= 1.0 + 1e-12)
    np.testing.assert_allclose(np.abs(chi), np.exp(-gamma_decay(model, ts)), atol=1e-13)


def test_gaussian_chi_second_order_phase_flag():
    modes = make_bath(lam=2.6, beta=4.0, eta=0.5, k_modes=10)
    model = build_correlation(modes)
    shift = mean_field_shift(modes)
    ts = np.linspace(0.0, 10.0, 50)
    plain = gaussian_chi(model, 2.0, shift, ts)
    phased = gaussian_chi(model, 2.0, shift, ts, second_order_phase=True)
    np.testing.assert_allclose(np.abs(plain), np.abs(phased), atol=1e-13)
    assert np.max(np.abs(plain - phased)) > 1e-6
    # the added phase is the Im part of the double integral
    expected = plain * np.exp(-1j * _second_order_phase(model, ts))
    np.testing.assert_allclose(phased, expected, atol=1e-13)


def test_mean_field_shift():
    modes = make_bath(lam=2.6, beta=1.0, eta=2.0, k_modes=5)
    assert mean_field_shift(modes) == pytest.approx(2.0 * sum(m.mean_b for m in modes))
