import math

import numpy as np
import pytest

from morsebath import (
    DEFAULT_RHO0,
    DephasingTrace,
    apply_map,
    blp_flows,
    chi_series,
    dephasing_time,
    gaussian_error,
    gaussian_trace,
    time_grid,
    trace_distance,
)
from helpers import make_bath


def synthetic_trace(times, chi, variant="exact"):
    return DephasingTrace(times=np.asarray(times, float),
                          chi=np.asarray(chi, complex), variant=variant)


def test_dephasing_time_exponential():
    ts = time_grid(5.0, 0.01)
    trace = synthetic_trace(ts, np.exp(-ts))
    tau = dephasing_time(trace, DEFAULT_RHO0)
    assert tau == pytest.approx(math.log(10.0), abs=0.01)


def test_dephasing_time_no_crossing():
    ts = time_grid(5.0, 0.01)
    trace = synthetic_trace(ts, np.exp(1j * ts))
    assert dephasing_time(trace, DEFAULT_RHO0) is None


def test_dephasing_time_interpolation():
    trace = synthetic_trace([0.0, 1.0], [1.0, 0.05])
    tau = dephasing_time(trace, DEFAULT_RHO0)
    assert tau == pytest.approx(0.9 / 0.95, abs=1e-12)


def test_dephasing_time_threshold_monotone(system, full_grid):
    modes = make_bath(lam=2.6, beta=4.0, eta=2.0, k_modes=20)
    trace = chi_series(modes, system, full_grid)
    t_loose = dephasing_time(trace, DEFAULT_RHO0, threshold=0.2)
    t_tight = dephasing_time(trace, DEFAULT_RHO0, threshold=0.1)
    assert t_loose is not None and t_tight is not None
    assert t_loose <= t_tight


def test_dephasing_time_errors(full_grid):
    trace = synthetic_trace(full_grid, np.exp(-full_grid))
    with pytest.raises(ValueError):
        dephasing_time(trace, np.diag([0.5, 0.5]))
    with pytest.raises(ValueError):
        dephasing_time(trace, DEFAULT_RHO0, threshold=1.5)


def test_blp_flows_example():
    report = blp_flows(np.array([1.0, 0.5, 0.7, 0.3]))
    assert report.n_minus == pytest.approx(0.2, abs=1e-14)
    assert report.n_plus == pytest.approx(0.9, abs=1e-14)
    assert report.ratio == pytest.approx(0.2 / 0.9, abs=1e-12)


def test_blp_flows_monotone_series():
    report = blp_flows(np.linspace(1.0, 0.2, 50))
    assert report.n_minus == 0.0
    assert report.ratio == 0.0


def test_blp_flows_no_outflow():
    report = blp_flows(np.linspace(0.2, 1.0, 50))
    assert report.n_plus == 0.0
    assert report.ratio is None


def test_blp_flows_telescoping(rng):
    for _ in range(20):
        x = np.abs(rng.normal(size=200)).cumsum() / 50.0
        x = np.exp(-x) * (1.0 + 0.3 * np.sin(rng.uniform(0, 6) * np.arange(200)))
        report = blp_flows(x)
        assert x[-1] - x[0] == pytest.approx(report.n_minus - report.n_plus, abs=1e-10)


def test_blp_flows_plateau_tolerance():
    x = np.array([1.0, 1.0 + 5e-13, 1.0, 1.0 - 5e-13, 1.0])
    report = blp_flows(x)
    assert report.n_minus == 0.0 and report.n_plus == 0.0


def test_trace_distance_basics():
    a = np.array([[0.5, 0.25], [0.25, 0.5]], dtype=complex)
    assert trace_distance(a, a) == 0.0
    b = a.copy()
    b[0, 1] += 0.1
    b[1, 0] += 0.1
    assert trace_distance(a, b) == pytest.approx(0.1, abs=1e-14)
    assert trace_distance(np.diag([1.0, 0.0]), np.diag([0.0, 1.0])) == pytest.approx(1.0)


def test_trace_distance_metric_properties(rng):
    def random_state():
        amp = rng.uniform(0.0, 0.5)
        phase = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        p = rng.uniform(amp, 1.0 - amp)
        return np.array([[p, amp * np.conj(phase)], [amp * phase, 1.0 - p]])

    for _ in range(30):
        a, b, c = random_state(), random_state(), random_state()
        assert trace_distance(a, b) == pytest.approx(trace_distance(b, a), abs=1e-15)
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12
        assert trace_distance(a, b) >= 0.0


def test_gaussian_error_zero_for_identical(system, short_grid):
    modes = make_bath(lam=2.6, beta=4.0, eta=0.5, k_modes=10)
    trace = chi_series(modes, system, short_grid)
    report = gaussian_error(trace, trace, DEFAULT_RHO0)
    assert np.all(report.pointwise == 0.0)
    assert report.time_avg == 0.0


def test_gaussian_error_quarter_coherence():
    ts = np.array([0.0, 1.0, 2.0])
    exact = synthetic_trace(ts, [1.0, 0.9, 0.8])
    gauss = synthetic_trace(ts, [1.0, 0.7, 0.8], variant="gaussian")
    report = gaussian_error(exact, gauss, DEFAULT_RHO0)
    # |rho01(0)| = 1/4, so D = |chi - chi_G| / 4 pointwise
    assert report.pointwise[1] == pytest.approx(0.2, abs=1e-14)
    d_mid = trace_distance(apply_map(DEFAULT_RHO0, 0.9), apply_map(DEFAULT_RHO0, 0.7))
    assert d_mid == pytest.approx(0.05, abs=1e-14)
    assert report.time_avg == pytest.approx((0.0 / 4 + 0.2 / 4 + 0.0 / 4) / 2.0, abs=1e-14)


def test_gaussian_error_matches_explicit_route(system, short_grid):
    modes = make_bath(lam=2.6, beta=7.0, eta=0.5, k_modes=10)
    exact = chi_series(modes, system, short_grid)
    gauss = gaussian_trace(modes, system, short_grid)
    report = gaussian_error(exact, gauss, DEFAULT_RHO0)
    explicit = [trace_distance(apply_map(DEFAULT_RHO0, c), apply_map(DEFAULT_RHO0, g))
                for c, g in zip(exact.chi, gauss.chi)]
    np.testing.assert_allclose(report.pointwise * 0.25, explicit, atol=1e-13)


def test_gaussian_error_grid_mismatch(system):
    modes = make_bath(lam=2.6, beta=4.0, eta=0.5, k_modes=5)
    a = chi_series(modes, system, time_grid(5.0, 0.01))
    b = chi_series(modes, system, time_grid(5.0, 0.05))
    with pytest.raises(ValueError):
        gaussian_error(a, b, DEFAULT_RHO0)
