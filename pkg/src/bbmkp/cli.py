"""Command line entry point: ``bbmkp <command> --config PATH``.

Exit codes: 0 pass, 1 tolerance failure, 2 configuration error, 3 blow-up.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

import numpy as np

from . import io
from .config import RunConfig, load_config
from .diagnostics import decay_fit
from .errors import AdmissibilityError, BlowUpError, CommensurabilityError, ConfigError
from .exact import build_traveling_wave, linear_exact_evolve, traveling_wave_field
from .model import DampingProfile, gaussian_initial
from .spectral import (
    GridSpec,
    RealField,
    SpectralField,
    dealiased_product,
    forward_transform,
    inverse_transform,
    truncated_convolution,
)
from .stepper import project_modes, run

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_BLOWUP = 0, 1, 2, 3

WAVE_TOLERANCE = {-1: 1e-4, 1: 1e-5}


def initial_field(cfg: RunConfig, grid: GridSpec) -> RealField:
    init = cfg.initial
    if init.kind == "gaussian":
        return gaussian_initial(init.amplitude, init.sigma, grid)
    if init.kind == "mode":
        x, y = grid.nodes()
        xi = 2 * np.pi * init.mx / grid.Lx
        eta = 2 * np.pi * init.ny / grid.Ly
        return RealField(grid, init.amplitude * np.cos(xi * x + eta * y))
    if init.kind == "traveling_wave":
        wave = build_traveling_wave(cfg.model.alpha, cfg.model.gamma, init.c, init.r, init.h)
        return traveling_wave_field(wave, grid, 0.0)
    if init.kind == "file":
        field, _ = io.read_snapshot(init.path)
        if field.grid != grid:
            raise ConfigError(f"snapshot grid {field.grid} does not match configured grid {grid}", key="path")
        return field
    raise ConfigError(f"unknown initial kind {init.kind!r}", key="kind")


def _out_dir(cfg: RunConfig, out: str | None) -> Path:
    path = Path(out if out is not None else cfg.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_summary(path: Path, items: dict) -> None:
    lines = [f"{k} = {v}" for k, v in items.items()]
    (path / "summary.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _constant_damping(cfg: RunConfig) -> float:
    damping = cfg.model.damping
    if not damping.is_constant:
        raise ConfigError("this command needs constant damping (kind = none or constant)", key="kind")
    return damping.constant_value


def _log_l2_plot(path: Path, series, title: str) -> None:
    ok = series.l2 > 0
    svg = io.svg_line_plot([(series.times[ok], np.log(series.l2[ok]), "log ||u||_L2")],
                           title=title, xlabel="t", ylabel="log L2 norm")
    (path / "plot.svg").write_text(svg, encoding="utf-8")


def cmd_simulate(cfg: RunConfig, out: str | None = None) -> int:
    outdir = _out_dir(cfg, out)
    grid = cfg.grid
    u0 = initial_field(cfg, grid)
    snap_steps = {int(round(t / cfg.dt)): t for t in cfg.snapshot_times if t <= cfg.t_end + 1e-12}

    def save(k, t, field):
        if k in snap_steps:
            io.write_snapshot(outdir / io.snapshot_name(snap_steps[k]), field, t)

    start = time.perf_counter()
    try:
        result = run(u0, cfg.model, grid, cfg.dt, cfg.t_end, cfg.sample_every, [save],
                     observe_steps=snap_steps, rebootstrap_every=cfg.rebootstrap_every or None)
    except BlowUpError as exc:
        io.write_series_csv(outdir / "series.csv", exc.partial)
        _write_summary(outdir / "", {"status": "blow-up", "message": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    elapsed = time.perf_counter() - start
    series = result.series
    io.write_series_csv(outdir / "series.csv", series)
    _log_l2_plot(outdir, series, "log L2 norm")
    summary = {"status": "ok", "runtime_s": f"{elapsed:.3f}", "samples": len(series)}
    try:
        fit = decay_fit(series)
        summary.update(nu=repr(fit.nu), r_squared=repr(fit.r_squared), window=f"{fit.window[0]:g} {fit.window[1]:g}")
    except ValueError as exc:
        summary.update(nu="n/a", r_squared="n/a", fit_note=str(exc))
    _write_summary(outdir, summary)
    print(f"simulate: {len(series)} samples, final l2 = {series.l2[-1]:.10g}, runtime {elapsed:.1f} s")
    return EXIT_OK


def validate_linear(cfg: RunConfig):
    """Numerical and exact solutions of the damped linear problem at ``t_end``."""
    a = _constant_damping(cfg)
    params = dataclasses.replace(cfg.model, alpha=0.0)
    grid = cfg.grid
    u0 = initial_field(cfg, grid)
    result = run(u0, params, grid, cfg.dt, cfg.t_end, max(1, int(round(cfg.t_end / cfg.dt))))
    exact = inverse_transform(linear_exact_evolve(project_modes(forward_transform(u0)), cfg.t_end, a, params.gamma))
    return result.final, exact


def cmd_validate_linear(cfg: RunConfig, out: str | None = None, tolerance: float | None = None) -> int:
    tol = 1e-3 if tolerance is None else tolerance
    outdir = _out_dir(cfg, out)
    num, exact = validate_linear(cfg)
    j = cfg.grid.Ny // 2  # y = 0
    pn, pe = num.values[:, j], exact.values[:, j]
    err = float(np.max(np.abs(pn - pe)) / np.max(np.abs(pe)))
    x = cfg.grid.x
    io.write_profile_csv(outdir / "profile.csv", x, {"numerical": pn, "exact": pe})
    svg = io.svg_line_plot([(x, pe, "exact"), (x, pn, "numerical")],
                           title=f"u(x, 0, {cfg.t_end:g}), gamma = {cfg.model.gamma}", xlabel="x", ylabel="u")
    (outdir / "plot.svg").write_text(svg, encoding="utf-8")
    passed = err <= tol
    _write_summary(outdir, {"relative_sup_error": repr(err), "tolerance": repr(tol), "pass": passed})
    print(f"validate-linear: relative sup error {err:.3e} (tolerance {tol:.1e}) {'PASS' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_TOLERANCE


def validate_wave(cfg: RunConfig):
    init = cfg.initial
    wave = build_traveling_wave(cfg.model.alpha, cfg.model.gamma, init.c, init.r, init.h)
    ly = wave.wavelength / abs(wave.r) if wave.r != 0 else wave.wavelength
    grid = GridSpec(wave.wavelength, ly, cfg.grid.Nx, cfg.grid.Ny)
    params = dataclasses.replace(cfg.model, damping=DampingProfile("none"))
    u0 = traveling_wave_field(wave, grid, 0.0)
    result = run(u0, params, grid, cfg.dt, cfg.t_end, max(1, int(round(cfg.t_end / cfg.dt))))
    exact = traveling_wave_field(wave, grid, cfg.t_end)
    return wave, result.final, exact


def cmd_validate_wave(cfg: RunConfig, out: str | None = None, tolerance: float | None = None) -> int:
    cfg = dataclasses.replace(cfg, initial=dataclasses.replace(cfg.initial, kind="traveling_wave"))
    tol = WAVE_TOLERANCE[cfg.model.gamma] if tolerance is None else tolerance
    outdir = _out_dir(cfg, out)
    wave, num, exact = validate_wave(cfg)
    err = float(np.max(np.abs(num.values - exact.values)))
    j = num.grid.Ny // 2
    x = num.grid.x
    io.write_profile_csv(outdir / "profile.csv", x, {"numerical": num.values[:, j], "exact": exact.values[:, j]})
    svg = io.svg_line_plot([(x, exact.values[:, j], "exact"), (x, num.values[:, j], "numerical")],
                           title=f"traveling wave at t = {cfg.t_end:g}", xlabel="x", ylabel="u(x, 0)")
    (outdir / "plot.svg").write_text(svg, encoding="utf-8")
    passed = err <= tol
    _write_summary(outdir, {
        "roots": f"{wave.r1!r} {wave.r2!r} {wave.r3!r}", "m": repr(wave.m),
        "wavelength": repr(wave.wavelength), "Lx": repr(num.grid.Lx), "Ly": repr(num.grid.Ly),
        "sup_error": repr(err), "tolerance": repr(tol), "pass": passed,
    })
    print(f"validate-wave: roots {wave.r1:.6g} {wave.r2:.6g} {wave.r3:.6g}, "
          f"domain {num.grid.Lx:.6g} x {num.grid.Ly:.6g}, sup error {err:.3e} "
          f"(tolerance {tol:.1e}) {'PASS' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_TOLERANCE


def cmd_decay_study(cfg: RunConfig, out: str | None = None, tolerance: float | None = None) -> int:
    threshold = 0.99 if tolerance is None else tolerance
    outdir = _out_dir(cfg, out)
    u0 = initial_field(cfg, cfg.grid)
    try:
        result = run(u0, cfg.model, cfg.grid, cfg.dt, cfg.t_end, cfg.sample_every,
                     rebootstrap_every=cfg.rebootstrap_every or None)
    except BlowUpError as exc:
        io.write_series_csv(outdir / "series.csv", exc.partial)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    series = result.series
    io.write_series_csv(outdir / "series.csv", series)
    _log_l2_plot(outdir, series, f"gamma = {cfg.model.gamma}, p = {cfg.model.p}")
    fit = decay_fit(series)
    passed = fit.r_squared >= threshold
    _write_summary(outdir, {"nu": repr(fit.nu), "r_squared": repr(fit.r_squared),
                            "window": f"{fit.window[0]:g} {fit.window[1]:g}", "pass": passed})
    print(f"decay-study: nu = {fit.nu:.6g}, r^2 = {fit.r_squared:.6f} over t in "
          f"[{fit.window[0]:g}, {fit.window[1]:g}] (threshold {threshold}) {'PASS' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_TOLERANCE


def convergence_errors(cfg: RunConfig, levels: int = 3):
    """Sup errors of the damped linear problem at dt, dt/2, ... against the exact solution."""
    a = _constant_damping(cfg)
    params = dataclasses.replace(cfg.model, alpha=0.0)
    grid = cfg.grid
    u0 = initial_field(cfg, grid)
    exact = inverse_transform(linear_exact_evolve(project_modes(forward_transform(u0)), cfg.t_end, a, params.gamma))
    dts, errors = [], []
    for j in range(levels):
        dt = cfg.dt / 2**j
        num = run(u0, params, grid, dt, cfg.t_end, max(1, int(round(cfg.t_end / dt)))).final
        dts.append(dt)
        errors.append(float(np.max(np.abs(num.values - exact.values))))
    orders = [float(np.log2(e0 / e1)) for e0, e1 in zip(errors, errors[1:])]
    return dts, errors, orders


def cmd_convergence(cfg: RunConfig, out: str | None = None, tolerance: float | None = None) -> int:
    outdir = _out_dir(cfg, out)
    dts, errors, orders = convergence_errors(cfg)
    passed = all(1.7 <= q <= 2.3 for q in orders)
    for dt, e in zip(dts, errors):
        print(f"convergence: dt = {dt:.6g}  sup error = {e:.6e}")
    print(f"convergence: observed orders {', '.join(f'{q:.4f}' for q in orders)} {'PASS' if passed else 'FAIL'}")
    _write_summary(outdir, {"dt": " ".join(map(repr, dts)), "errors": " ".join(map(repr, errors)),
                            "orders": " ".join(map(repr, orders)), "pass": passed})
    return EXIT_OK if passed else EXIT_TOLERANCE


def _random_bandlimited(grid: GridSpec, rng: np.random.Generator) -> SpectralField:
    F = forward_transform(RealField(grid, rng.standard_normal(grid.shape)))
    keep = (grid.mode_x[:, None] != -grid.Nx // 2) & (grid.mode_y[None, :] != -grid.Ny // 2)
    return SpectralField(grid, np.where(keep, F.coeffs, 0.0))


def dealias_deviation(trials: int = 100, n: int = 16) -> float:
    grid = GridSpec(2 * np.pi, 2 * np.pi, n, n)
    worst = 0.0
    for seed in range(trials):
        rng = np.random.default_rng(seed)
        f, g = _random_bandlimited(grid, rng), _random_bandlimited(grid, rng)
        dev = np.max(np.abs(dealiased_product(f, g).coeffs - truncated_convolution(f, g).coeffs))
        worst = max(worst, float(dev))
    return worst


def cmd_dealias_check(tolerance: float | None = None) -> int:
    tol = 1e-12 if tolerance is None else tolerance
    dev = dealias_deviation()
    passed = dev <= tol
    print(f"dealias-check: max deviation {dev:.3e} over 100 trials (tolerance {tol:.0e}) {'PASS' if passed else 'FAIL'}")
    return EXIT_OK if passed else EXIT_TOLERANCE


COMMANDS = ("simulate", "validate-linear", "validate-wave", "decay-study", "convergence", "dealias-check")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bbmkp", description="Damped BBM-KP pseudospectral solver")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="run configuration file")
    parser.add_argument("--scale", choices=("desk", "paper"), help="grid preset")
    parser.add_argument("--out", help="output directory (overrides [output] directory)")
    parser.add_argument("--tolerance", type=float, help="pass/fail threshold for validation commands")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "dealias-check":
        return cmd_dealias_check(args.tolerance)
    if not args.config:
        print(f"error: {args.command} requires --config", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = load_config(args.config)
        long_run = args.command in ("simulate", "decay-study")
        if args.command == "validate-wave":
            # the wave fixes its own domain; only the resolution preset applies
            if args.scale == "desk":
                cfg = dataclasses.replace(cfg, grid=GridSpec(cfg.grid.Lx, cfg.grid.Ly, 512, 512))
        else:
            cfg = cfg.with_scale(args.scale, desk_dt=long_run)
        if args.command == "simulate":
            return cmd_simulate(cfg, args.out)
        if args.command == "validate-linear":
            return cmd_validate_linear(cfg, args.out, args.tolerance)
        if args.command == "validate-wave":
            return cmd_validate_wave(cfg, args.out, args.tolerance)
        if args.command == "decay-study":
            return cmd_decay_study(cfg, args.out, args.tolerance)
        return cmd_convergence(cfg, args.out, args.tolerance)
    except (ConfigError, AdmissibilityError, CommensurabilityError, OSError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BlowUpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BLOWUP


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
