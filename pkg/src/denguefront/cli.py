"""Command-line frontend.

Subcommands: analyze (indicators + stability), wavespeed (minimum front
speed), sweep (dengue speed vs aquatic background), simulate (PDE front
run), symcheck (symmetry equivariance).  Every output file starts with a
manifest header (lines prefixed '#') that records the resolved parameters,
so results are reproducible from the file alone.  Exit codes: 0 success,
2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
import tempfile

import numpy as np

from . import __version__
from .dynamics import ModelVariant
from .errors import (AdmissibilityError, BracketingError, ConfigError,
                     DivergenceError, DomainError, NoFrontError,
                     NoSolutionError, StiffnessError, TruncationError,
                     UnsupportedVariantError)
from .params import (DAYS_PER_YEAR, DimensionalParams, NondimParams,
                     PRESET_NAMES, basic_offspring_number,
                     basic_reproduction_number, load_config,
                     mu2_for_unit_offspring, nondimensionalize, preset,
                     speed_scale)
from .pdesim import SimConfig, integrate_homog, simulate_front
from .stability import classify, equilibria, mosquito_ray_point
from .symmetry import FieldSet, Grid, apply_group, check_equivariance, generator
from .wavespeed import (DENGUE_DISPERSION, MOSQUITO_INVASION, dispersion_curve,
                        min_wave_speed, sweep_vstar)

_CONFIG_ERRORS = (ConfigError, AdmissibilityError, DomainError,
                  UnsupportedVariantError)
_NUMERICAL_ERRORS = (NoFrontError, NoSolutionError, StiffnessError,
                     TruncationError, BracketingError, DivergenceError)

_ERROR_TAGS = {
    ConfigError: "config", AdmissibilityError: "admissibility",
    UnsupportedVariantError: "unsupported-variant", NoFrontError: "no-front",
    NoSolutionError: "no-solution", StiffnessError: "stiffness",
    TruncationError: "truncation", BracketingError: "bracketing",
    DivergenceError: "divergence", DomainError: "domain",
}


def _error_tag(exc: Exception) -> str:
    for cls in type(exc).__mro__:
        if cls in _ERROR_TAGS:
            return _ERROR_TAGS[cls]
    return "error"


@dataclasses.dataclass
class RunManifest:
    """Provenance of one command invocation, embedded in every output."""

    subcommand: str
    source: str                       # "preset:NAME" or "config:PATH"
    dimensional: DimensionalParams
    options: dict
    seed: int | None = None
    version: str = __version__

    def header_lines(self) -> list[str]:
        lines = [f"# denguefront {self.version}",
                 f"# subcommand: {self.subcommand}",
                 f"# parameters: {self.source}"]
        for field in dataclasses.fields(DimensionalParams):
            lines.append(f"# {field.name} = {getattr(self.dimensional, field.name)!r}")
        for key in sorted(self.options):
            lines.append(f"# {key} = {self.options[key]}")
        lines.append(f"# seed = {self.seed}")
        return lines

    def header(self) -> str:
        return "\n".join(self.header_lines()) + "\n"


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".denguefront-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(manifest: RunManifest, body: str, out: str | None):
    text = manifest.header() + body
    if out:
        _atomic_write(out, text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _resolve_params(args) -> tuple[DimensionalParams, str]:
    if getattr(args, "config", None):
        cfg = load_config(args.config)
        return cfg.dimensional, f"config:{args.config}"
    name = getattr(args, "preset", None) or "table3-30C"
    return preset(name), f"preset:{name}"


def _apply_force_q0(d: DimensionalParams, args) -> tuple[DimensionalParams, str | None]:
    if not getattr(args, "force_q0_one", False):
        return d, None
    mu2 = mu2_for_unit_offspring(d)
    note = (f"forcing unit offspring number: mu2_bar {d.mu2_bar!r} -> "
            f"{mu2!r} (1/day)")
    return dataclasses.replace(d, mu2_bar=mu2), note


def _effective_wind(d: DimensionalParams, args) -> DimensionalParams:
    # commands default to still air; --wind applies the parameter set's
    # tabulated advection speed
    if getattr(args, "wind", False):
        return d
    return dataclasses.replace(d, nu2_bar=0.0)


def _speed_lines(result, label: str) -> list[str]:
    lines = [f"{label}:",
             f"  c_min (nondimensional) = {result.c_min:.6f}",
             f"  minimizing decay rate m* = {result.m_star:.6f}"]
    if result.c_bar_year is not None:
        lines.append(f"  c_bar = {result.c_bar_day:.6f} km/day "
                     f"= {result.c_bar_year:.4f} km/year")
    lines.append(f"  tangency residuals |P(-m*)|, |P'(-m*)| = "
                 f"{result.tangency_residuals[0]:.3e}, "
                 f"{result.tangency_residuals[1]:.3e}")
    return lines


# --- subcommands ---------------------------------------------------------------

def cmd_analyze(args) -> int:
    d, source = _resolve_params(args)
    d, note = _apply_force_q0(d, args)
    n = nondimensionalize(d)
    manifest = RunManifest("analyze", source, d, {
        "v_star": args.vstar, "h_star": args.hstar,
        "force_q0_one": bool(args.force_q0_one)})
    lines = []
    if note:
        lines.append(note)
    ind = basic_reproduction_number(n, args.vstar, args.hstar)
    lines.append(f"basic offspring number Q0 = {ind.Q0:.6g}")
    lines.append(f"basic reproduction number R0 = {ind.R0:.6g} "
                 f"(v* = {args.vstar:g}, h* = {args.hstar:g}, "
                 f"u* = {ind.u_star:.6g})")
    res = equilibria(n, ModelVariant.malthus2())
    lines.append(f"det(A) = 1 - Q0 = {res.det_A:.6g}")
    lines.append("equilibrium sets present: "
                 + ", ".join(f.set_id for f in res.families))
    for family in res.families:
        point = (family.point(h_star=args.hstar) if family.set_id == "mosquito-free"
                 else family.point(h_star=args.hstar, v_star=args.vstar))
        report = classify(point, n)
        lines.append("")
        lines.append(report.to_text())
    lines.append("")
    lines.append(classify(mosquito_ray_point(n, 0.0), n, scope="mosquito2").to_text())
    _emit(manifest, "\n".join(lines) + "\n", args.out)
    return 0


def _kind_of(args) -> str:
    return MOSQUITO_INVASION if args.kind == "mosquito" else DENGUE_DISPERSION


def cmd_wavespeed(args) -> int:
    d, source = _resolve_params(args)
    d, note = _apply_force_q0(d, args)
    d_run = _effective_wind(d, args)
    n = nondimensionalize(d_run)
    kind = _kind_of(args)
    manifest = RunManifest("wavespeed", source, d_run, {
        "kind": args.kind, "wind": bool(args.wind),
        "v_star": args.vstar, "h_star": args.hstar,
        "force_q0_one": bool(args.force_q0_one)})
    result = min_wave_speed(n, kind, v_star=args.vstar, h_star=args.hstar,
                            scale_km_per_day=speed_scale(d_run))
    lines = ([note] if note else [])
    lines += _speed_lines(result, f"minimum wave speed ({args.kind})")
    _emit(manifest, "\n".join(lines) + "\n", args.out)
    if args.emit_curve:
        ms = np.geomspace(result.m_star / 8.0, result.m_star * 8.0, 201)
        curve = dispersion_curve(n, kind, ms, v_star=args.vstar,
                                 h_star=args.hstar)
        body = "m,c\n" + "\n".join(f"{m:.8f},{c:.8f}" for m, c in curve) + "\n"
        _atomic_write(args.emit_curve, manifest.header() + body)
        print(f"wrote {args.emit_curve}")
    return 0


def _parse_range(spec: str) -> list[float]:
    try:
        start, stop, step = (float(part) for part in spec.split(":"))
    except ValueError:
        raise ConfigError(
            f"--vstar-range expects start:stop:step, got {spec!r}") from None
    if step <= 0.0:
        raise ConfigError("--vstar-range step must be positive")
    values = []
    v = start
    while v <= stop + 1e-12:
        values.append(round(v, 12))
        v += step
    return values


def cmd_sweep(args) -> int:
    d, source = _resolve_params(args)
    d, note = _apply_force_q0(d, args)
    values = _parse_range(args.vstar_range) if args.vstar_range else []
    manifest = RunManifest("sweep", source, d, {
        "v_star_range": args.vstar_range, "h_star": args.hstar,
        "winds_km_per_year": args.winds,
        "force_q0_one": bool(args.force_q0_one)})
    winds = tuple(float(w) for w in args.winds.split(","))
    if len(winds) != 2:
        raise ConfigError("--winds expects two comma-separated values")
    if note:
        print(note)
    table = sweep_vstar(d, values, winds_km_per_year=winds, h_star=args.hstar)
    _emit(manifest, table.to_csv(), args.out)
    return 0


def cmd_simulate(args) -> int:
    d, source = _resolve_params(args)
    d, note = _apply_force_q0(d, args)
    d_run = _effective_wind(d, args)
    n = nondimensionalize(d_run)
    kind = _kind_of(args)
    cfg = SimConfig(L=args.L, N=args.N, T=args.T, dt=args.dt,
                    stepper=args.stepper, seed_amplitude=args.amplitude,
                    seed_width=args.width, seed_position=args.position,
                    threshold=args.theta, direction=args.direction)
    manifest = RunManifest("simulate", source, d_run, {
        "kind": args.kind, "wind": bool(args.wind), "L": cfg.L, "N": cfg.N,
        "T": cfg.T, "dt": cfg.dt, "stepper": cfg.stepper,
        "threshold": cfg.threshold, "seed_amplitude": cfg.seed_amplitude,
        "seed_width": cfg.seed_width, "seed_position": cfg.seed_position,
        "direction": cfg.direction,
        "force_q0_one": bool(args.force_q0_one)})
    if args.dry_run:
        print(manifest.header(), end="")
        print(f"resolved simulation config: {cfg}")
        return 0
    if note:
        print(note)
    result = simulate_front(cfg, n, ModelVariant.saturated(), kind)

    wind_sign = -1 if cfg.direction == "left" else 1
    analytic = min_wave_speed(n, kind, v_star=args.vstar, h_star=args.hstar,
                              wind_sign=wind_sign).c_min
    lines = [f"conservation max |h+I+r-1| = {result.conservation_error:.3e}"]
    if result.trace.no_front:
        lines.append("no front detected")
    else:
        measured = abs(result.trace.speed)
        gap = (measured - analytic) / analytic
        lines.append(f"measured front speed = {measured:.6f} "
                     f"(fit R^2 = {result.trace.r_squared:.6f})")
        lines.append(f"analytic minimum speed = {analytic:.6f}")
        lines.append(f"relative gap = {gap:+.2%}")
    print(manifest.header() + "\n".join(lines))
    if args.out:
        _atomic_write(args.out + "-trace.csv",
                      manifest.header() + result.trace.to_csv())
        for idx in range(len(result.snapshots)):
            t, _ = result.snapshots[idx]
            _atomic_write(f"{args.out}-snapshot-{idx:02d}.csv",
                          manifest.header() + f"# t = {t!r}\n"
                          + result.snapshot_csv(idx))
        print(f"wrote {args.out}-trace.csv and "
              f"{len(result.snapshots)} snapshots")
    return 0


_CASE_FORCED_FIELDS = {
    "1": ("p", "q1", "q2", "beta2"),
    "2": ("beta2",),
    "3": ("beta2", "nu"),
    "4": ("beta1", "p", "nu"),
    "5": ("beta1", "p", "nu"),
    "6": ("beta1", "beta2"),
    "7": ("beta1", "p", "beta2", "nu"),
}


def cmd_symcheck(args) -> int:
    d, source = _resolve_params(args)
    n = nondimensionalize(d)
    overrides = {}
    for name in ("beta1", "beta2", "nu", "mu3", "p", "q1", "q2"):
        value = getattr(args, name)
        if value is not None:
            overrides[name] = value

    cases = (["x-translation", "t-translation"] if args.case == "translations"
             else [args.case])
    manifest = RunManifest("symcheck", source, d, {
        "case": args.case, "eps": args.eps, **overrides})

    bodies = []
    ok = True
    for case in cases:
        gen = generator(case)
        values = dataclasses.asdict(n)
        # zero out whatever the constraint row demands, unless the user
        # explicitly pinned a value (then admissibility speaks for itself)
        for name in _CASE_FORCED_FIELDS.get(case, ()):
            values[name] = 0.0
        values.update(overrides)
        n_case = NondimParams(**values)

        variant = ModelVariant.family(n_case.epsilon)
        start = np.array([0.4, 0.05, 0.3, 0.7, 0.2, 0.1])
        traj = integrate_homog(start, n_case, variant, 10.0, tol=1e-11)
        fields = FieldSet.from_trajectory(traj)
        payload = None
        if case == "7":
            other = integrate_homog(np.array([0.1, 0.02, 0.2, 0.5, 0.3, 0.2]),
                                    n_case, variant, 10.0, tol=1e-11)
            payload = FieldSet.from_trajectory(other)
        gen = generator(case, solution=payload)
        grid = Grid.regular(0.0, 1.0, 9, 1.0, 9.0, 161)
        report = check_equivariance(gen, n_case, fields, args.eps, grid)
        ok &= report.passed
        bodies.append(report.to_text())
    _emit(manifest, "\n\n".join(bodies) + "\n", args.out)
    return 0 if ok else 3


# --- parser ---------------------------------------------------------------------

def _add_params_options(sub):
    group = sub.add_mutually_exclusive_group()
    group.add_argument("--preset", choices=PRESET_NAMES,
                       help="built-in parameter set (default table3-30C)")
    group.add_argument("--config", help="structured text configuration file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denguefront",
        description="mosquito invasion / dengue dispersion front toolkit")
    parser.add_argument("--version", action="version",
                        version=f"denguefront {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("analyze", help="indicators, equilibria, stability")
    _add_params_options(p)
    p.add_argument("--vstar", type=float, default=0.7)
    p.add_argument("--hstar", type=float, default=1.0)
    p.add_argument("--force-q0-one", action="store_true",
                   help="replace mu2_bar so the offspring number is 1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = subs.add_parser("wavespeed", help="minimum traveling-wave speed")
    _add_params_options(p)
    p.add_argument("--kind", choices=("mosquito", "dengue"), default="mosquito")
    p.add_argument("--wind", action="store_true",
                   help="apply the parameter set's tabulated wind")
    p.add_argument("--vstar", type=float, default=0.7)
    p.add_argument("--hstar", type=float, default=1.0)
    p.add_argument("--force-q0-one", action="store_true")
    p.add_argument("--emit-curve", help="write (m, c(m)) samples to this path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_wavespeed)

    p = subs.add_parser("sweep", help="dengue speed vs aquatic background")
    _add_params_options(p)
    p.add_argument("--vstar-range", default="0.1:1.0:0.1",
                   help="start:stop:step ('' for an empty table)")
    p.add_argument("--hstar", type=float, default=1.0)
    p.add_argument("--winds", default="0,18.25",
                   help="two wind settings, 2*nu_bar in km/year")
    p.add_argument("--force-q0-one", action="store_true", default=True)
    p.add_argument("--no-force-q0-one", dest="force_q0_one",
                   action="store_false")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep, preset_default="table3-15C")

    p = subs.add_parser("simulate", help="PDE front run with speed measurement")
    _add_params_options(p)
    p.add_argument("--kind", choices=("mosquito", "dengue"), default="mosquito")
    p.add_argument("--wind", action="store_true")
    p.add_argument("--L", type=float, default=SimConfig.L)
    p.add_argument("--N", type=int, default=SimConfig.N)
    p.add_argument("--T", type=float, default=SimConfig.T)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--theta", type=float, default=SimConfig.threshold)
    p.add_argument("--amplitude", type=float, default=SimConfig.seed_amplitude)
    p.add_argument("--width", type=float, default=SimConfig.seed_width)
    p.add_argument("--position", type=float, default=SimConfig.seed_position)
    p.add_argument("--direction", choices=("right", "left"), default="right")
    p.add_argument("--stepper", choices=("euler", "rk2"), default="euler")
    p.add_argument("--vstar", type=float, default=0.7)
    p.add_argument("--hstar", type=float, default=1.0)
    p.add_argument("--force-q0-one", action="store_true")
    p.add_argument("--dry-run", action="store_true")
    p.add_argument("--out", help="prefix for trace/snapshot CSV files")
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("symcheck", help="symmetry equivariance check")
    _add_params_options(p)
    p.add_argument("--case", default="translations",
                   help="1..7, translations, x-translation, t-translation")
    p.add_argument("--eps", type=float, default=0.3)
    for name in ("beta1", "beta2", "nu", "mu3", "p", "q1", "q2"):
        p.add_argument(f"--{name}", type=float, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_symcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.subcommand == "sweep" and not args.config and not args.preset:
        args.preset = "table3-15C"
    try:
        return args.func(args)
    except _NUMERICAL_ERRORS as exc:
        print(f"error: {_error_tag(exc)}: {exc}", file=sys.stderr)
        return 3
    except _CONFIG_ERRORS as exc:
        print(f"error: {_error_tag(exc)}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
