"""Command-line experiment runner emitting deterministic CSV.

Subcommands: spectrum, bath, correlation, dynamics, sweep-dephasing,
sweep-backflow, gaussian-error, oracle-check.  File outputs are byte
identical across runs of the same configuration; floats are written in
scientific notation with 12 significant digits.  Sweep rows are ordered
lexicographically by (lambda, beta) no matter how the points were
scheduled.  Quantities that can be undefined (no threshold crossing, no
outflow) are recorded with the sentinel value -1.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .bath import BathConfig, discretize
from .config import ConfigError, ExperimentConfig, parse_config
from .correlation import alpha, build_correlation, gamma_decay, offset_ratio
from .dynamics import SystemConfig, chi_series, gaussian_trace, time_grid
from .morse import MorseParams, bound_state_count, spectrum, x_matrix
from .observables import blp_flows, dephasing_time, gaussian_error
from .oracle import dense_chi, overlap_element, quadrature_element

NO_CROSSING = -1.0


def _fmt(x: float) -> str:
    return f"{x:.11e}"


def _write_lines(out_path: str | None, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _system(cfg: ExperimentConfig) -> SystemConfig:
    return SystemConfig(omega_s=cfg.omega_s, rho0=cfg.rho0)


def _bath_config(cfg: ExperimentConfig, lam: float, beta: float) -> BathConfig:
    return BathConfig(eta=cfg.eta, omega_c=cfg.omega_c, k_modes=cfg.k_modes,
                      lam=lam, beta=beta)


def cmd_spectrum(args: argparse.Namespace) -> int:
    spec = spectrum(MorseParams(omega=args.omega, lam=args.lam))
    lines = ["n,energy"]
    for n, energy in enumerate(spec.energies):
        lines.append(f"{n},{_fmt(energy)}")
    lines.append("n,m,x_element")
    for n in range(spec.count):
        for m in range(n, spec.count):
            lines.append(f"{n},{m},{_fmt(spec.x_elements[n, m])}")
    _write_lines(args.out, lines)
    return 0


def cmd_bath(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    lam, beta = cfg.single_point()
    modes = discretize(_bath_config(cfg, lam, beta))
    lines = ["k,omega_k,g_k,count,mean_b,z_k"]
    for mode in modes:
        lines.append(f"{mode.index},{_fmt(mode.omega)},{_fmt(mode.g)},"
                     f"{mode.count},{_fmt(mode.mean_b)},{_fmt(mode.partition)}")
    _write_lines(args.out, lines)
    return 0


def cmd_correlation(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    lam, beta = cfg.single_point()
    modes = discretize(_bath_config(cfg, lam, beta))
    model = build_correlation(modes)
    times = time_grid(cfg.t_max, cfg.dt)
    alpha_t = alpha(model, times)
    gamma_t = gamma_decay(model, times)
    lines = ["t,re_alpha,im_alpha,gamma"]
    for t, a, g in zip(times, alpha_t, gamma_t):
        lines.append(f"{_fmt(t)},{_fmt(a.real)},{_fmt(a.imag)},{_fmt(g)}")
    c_at_0 = float(model.weights.sum())
    lines.append("c0,c_at_0,offset_ratio")
    lines.append(f"{_fmt(model.offset_c0)},{_fmt(c_at_0)},{_fmt(offset_ratio(model))}")
    _write_lines(args.out, lines)
    return 0


def cmd_dynamics(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    lam, beta = cfg.single_point()
    modes = discretize(_bath_config(cfg, lam, beta))
    system = _system(cfg)
    times = time_grid(cfg.t_max, cfg.dt)
    exact = chi_series(modes, system, times)
    gauss = gaussian_trace(modes, system, times,
                           second_order_phase=cfg.gauss_second_order_phase)
    lines = ["t,re_chi,im_chi,abs_chi,re_chi_gauss,im_chi_gauss,abs_chi_gauss"]
    for t, c, g in zip(times, exact.chi, gauss.chi):
        lines.append(f"{_fmt(t)},{_fmt(c.real)},{_fmt(c.imag)},{_fmt(abs(c))},"
                     f"{_fmt(g.real)},{_fmt(g.imag)},{_fmt(abs(g))}")
    _write_lines(args.out, lines)
    # invertibility proxy, reported for every run
    print(f"min |chi| = {_fmt(float(np.abs(exact.chi).min()))}", file=sys.stderr)
    return 0


def _sweep_point(payload: tuple[str, ExperimentConfig, float, float]):
    """One (lambda, beta) sweep point; top level so worker processes can load it."""
    kind, cfg, lam, beta = payload
    modes = discretize(_bath_config(cfg, lam, beta))
    system = _system(cfg)
    times = time_grid(cfg.t_max, cfg.dt)
    if kind == "dephasing":
        trace = chi_series(modes, system, times)
        tau = dephasing_time(trace, cfg.rho0, threshold=cfg.threshold)
        return (lam, beta, tau if tau is not None else NO_CROSSING)
    if kind == "backflow":
        trace = chi_series(modes, system, times)
        flows = blp_flows(np.abs(trace.chi))
        ratio = flows.ratio if flows.ratio is not None else NO_CROSSING
        return (lam, beta, flows.n_minus, flows.n_plus, ratio)
    if kind == "gaussian-error":
        exact = chi_series(modes, system, times)
        gauss = gaussian_trace(modes, system, times,
                               second_order_phase=cfg.gauss_second_order_phase)
        report = gaussian_error(exact, gauss, cfg.rho0)
        return (lam, beta, report.time_avg, report.pointwise)
    raise ValueError(f"unknown sweep kind {kind!r}")


def _run_sweep(kind: str, cfg: ExperimentConfig, threads: int | None) -> list:
    points = [(kind, cfg, lam, beta)
              for lam in sorted(cfg.lambdas) for beta in sorted(cfg.betas)]
    workers = threads if threads is not None else (os.cpu_count() or 1)
    if workers > 1 and len(points) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_point, points, chunksize=4))
    else:
        results = [_sweep_point(p) for p in points]
    return sorted(results, key=lambda row: (row[0], row[1]))


def cmd_sweep_dephasing(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    rows = _run_sweep("dephasing", cfg, args.threads)
    lines = ["lambda,beta,eta,tau_d"]
    for lam, beta, tau in rows:
        lines.append(f"{_fmt(lam)},{_fmt(beta)},{_fmt(cfg.eta)},{_fmt(tau)}")
    _write_lines(args.out, lines)
    return 0


def cmd_sweep_backflow(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    rows = _run_sweep("backflow", cfg, args.threads)
    lines = ["lambda,beta,eta,n_minus,n_plus,ratio"]
    for lam, beta, n_minus, n_plus, ratio in rows:
        lines.append(f"{_fmt(lam)},{_fmt(beta)},{_fmt(cfg.eta)},"
                     f"{_fmt(n_minus)},{_fmt(n_plus)},{_fmt(ratio)}")
    _write_lines(args.out, lines)
    return 0


def cmd_gaussian_error(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    rows = _run_sweep("gaussian-error", cfg, args.threads)
    lines = ["lambda,beta,eta,time_avg_error"]
    for lam, beta, time_avg, _ in rows:
        lines.append(f"{_fmt(lam)},{_fmt(beta)},{_fmt(cfg.eta)},{_fmt(time_avg)}")
    _write_lines(args.out, lines)
    if cfg.pointwise_out is not None:
        times = time_grid(cfg.t_max, cfg.dt)
        point_lines = ["lambda,beta,eta,t,e_chi"]
        for lam, beta, _, pointwise in rows:
            for t, e in zip(times, pointwise):
                point_lines.append(f"{_fmt(lam)},{_fmt(beta)},{_fmt(cfg.eta)},"
                                   f"{_fmt(t)},{_fmt(e)}")
        _write_lines(cfg.pointwise_out, point_lines)
    return 0


def cmd_oracle_check(args: argparse.Namespace) -> int:
    cfg = parse_config(args.config)
    lam, beta = cfg.single_point()
    if cfg.k_modes > 3:
        raise ConfigError(f"field k_modes: oracle-check needs k_modes <= 3, got {cfg.k_modes}")
    modes = discretize(_bath_config(cfg, lam, beta))
    system = _system(cfg)
    times = time_grid(cfg.t_max, cfg.dt)

    fact = chi_series(modes, system, times)
    dense = dense_chi(modes, system, times)
    chi_dev = float(np.abs(fact.chi - dense.chi).max())

    d = bound_state_count(lam)
    xm = x_matrix(lam)
    elem_dev = max(abs(xm[n, m] - quadrature_element(lam, n, m))
                   for n in range(d) for m in range(n, d))
    gram_dev = max(abs(overlap_element(lam, n, m) - (1.0 if n == m else 0.0))
                   for n in range(d) for m in range(n, d))

    checks = [
        ("factorized_vs_dense_chi", chi_dev, 1e-10),
        ("closed_form_vs_quadrature", elem_dev, 1e-8),
        ("wavefunction_orthonormality", gram_dev, 1e-8),
    ]
    failed = False
    print(f"{'check':<30} {'max_deviation':>15} {'tolerance':>10}  status")
    for name, dev, tol in checks:
        status = "PASS" if dev < tol else "FAIL"
        failed = failed or status == "FAIL"
        print(f"{name:<30} {dev:>15.3e} {tol:>10.0e}  {status}")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morsebath",
        description="Dephasing of a two-level impurity against a bath of Morse oscillators.")
    sub = parser.add_subparsers(dest="command", required=True)

    spectrum_p = sub.add_parser("spectrum", help="bound-state energies and x elements of one oscillator")
    spectrum_p.add_argument("--lambda", dest="lam", type=float, required=True,
                            help="anharmonicity parameter (> 0.5)")
    spectrum_p.add_argument("--omega", type=float, default=1.0, help="harmonic frequency")
    spectrum_p.add_argument("--out", default=None, help="output CSV path (default stdout)")
    spectrum_p.set_defaults(func=cmd_spectrum)

    for name, func, with_threads in (
        ("bath", cmd_bath, False),
        ("correlation", cmd_correlation, False),
        ("dynamics", cmd_dynamics, False),
        ("sweep-dephasing", cmd_sweep_dephasing, True),
        ("sweep-backflow", cmd_sweep_backflow, True),
        ("gaussian-error", cmd_gaussian_error, True),
        ("oracle-check", cmd_oracle_check, False),
    ):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="configuration file")
        if name != "oracle-check":
            p.add_argument("--out", default=None, help="output CSV path (default stdout)")
        if with_threads:
            p.add_argument("--threads", type=int, default=None,
                           help="worker cap for sweep points (default: available parallelism)")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, ZeroDivisionError, IndexError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
