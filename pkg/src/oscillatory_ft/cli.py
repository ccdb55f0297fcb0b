"""Command-line front end.

    oscillatory-ft ft-point [--vertices X1 Y1 X2 Y2 X3 Y3 --weights W1 W2 W3]
    oscillatory-ft simulate [--a 5 --phi0-deg 40 --w2 1 --m0 1 --dt 1e-3 --t-max 30 --out DIR]
    oscillatory-ft analyze TRAJECTORY.csv [--out DIR] [--method envelope|least_squares]
    oscillatory-ft reproduce-example1 [--dt ... --out DIR]

System flags may also come from ``--config FILE`` (``key = value`` lines);
flags given on the command line win.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import csvio
from .analysis import (
    deviation_series,
    estimate_period_crossings,
    estimate_period_quadrature,
    fit_sinusoid,
    speed_at_ft,
    turning_point,
)
from .dynamics import simulate
from .errors import ConfigurationError, InsufficientDataError
from .example1 import run_checks
from .fermat_core import AbsorbedAt, IsoscelesSystem, Point2, WeightedTriangle, isosceles_ft_angle, weiszfeld

DEFAULTS = {"a": 5.0, "phi0_deg": 40.0, "w2": 1.0, "m0": 1.0, "dt": 1e-3, "t_max": 30.0, "out": "."}


def _add_system_flags(p: argparse.ArgumentParser) -> None:
    # default None so that config-file values survive unless a flag is given
    p.add_argument("--a", type=float, default=None, help="equal side length A1A2 = A1A3")
    p.add_argument("--phi0-deg", type=float, default=None, help="half apex angle in degrees")
    p.add_argument("--w2", type=float, default=None, help="weight at A2 and A3 (A1 carries 1)")
    p.add_argument("--m0", type=float, default=None, help="knot mass")
    p.add_argument("--dt", type=float, default=None, help="RK4 step")
    p.add_argument("--t-max", type=float, default=None, help="simulated time span")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--config", default=None, help="key = value config file")


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        cfg.update(csvio.read_config(args.config))
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            cfg[key] = value
    for key in ("a", "w2", "m0", "dt", "t_max"):
        if not cfg[key] > 0:
            raise ConfigurationError(f"{key} must be positive, got {cfg[key]}")
    if not 0 < cfg["phi0_deg"] < 90:
        raise ConfigurationError(f"phi0_deg must lie in (0, 90), got {cfg['phi0_deg']}")
    return cfg


def _system(cfg: dict) -> IsoscelesSystem:
    return IsoscelesSystem.from_degrees(cfg["a"], cfg["phi0_deg"], cfg["w2"], cfg["m0"])


def cmd_ft_point(args) -> int:
    if args.vertices is not None or args.weights is not None:
        if args.vertices is None or args.weights is None:
            raise ConfigurationError("--vertices and --weights must be given together")
        v = args.vertices
        tri = WeightedTriangle((Point2(v[0], v[1]), Point2(v[2], v[3]), Point2(v[4], v[5])), tuple(args.weights))
        system = None
    else:
        system = _system(resolve_config(args))
        tri = system.triangle()
    res = weiszfeld(tri)
    if isinstance(res.case, AbsorbedAt):
        print(f"case: absorbed at A{res.case.vertex}")
    else:
        print("case: floating")
    print(f"point: {res.point.x:.10g} {res.point.y:.10g}")
    print(f"residual: {res.residual:.3e}")
    print(f"iterations: {res.iterations}")
    if system is not None and not isinstance(res.case, AbsorbedAt):
        print(f"x_O (A1O along the axis): {system.h - res.point.y:.10g}")
    return 0


def cmd_simulate(args) -> int:
    cfg = resolve_config(args)
    system = _system(cfg)
    traj = simulate(system, cfg["dt"], cfg["t_max"])
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    csvio.write_trajectory(out / "trajectory.csv", traj)
    csvio.write_events(out / "events.csv", traj.events, traj.x_o)

    print(f"x_O: {traj.x_o:.10g}")
    print(f"alpha: {math.degrees(isosceles_ft_angle(system.w2)):.6f} deg")
    print(f"x_max: {turning_point(system):.10g}")
    print(f"speed at O (closed form): {speed_at_ft(system):.10g}")
    if traj.events.o_crossings:
        print(f"speed at O (first crossing): {abs(traj.events.o_crossings[0].xdot):.10g}")
    else:
        print("speed at O (first crossing): n/a, no crossing before t_max")
    try:
        print(f"period (crossings): {estimate_period_crossings(traj).period:.10g}")
    except InsufficientDataError:
        print("period (crossings): n/a, fewer than three same-direction crossings")
    print(f"period (quadrature): {estimate_period_quadrature(system).period:.10g}")
    print(f"max energy drift: {traj.max_energy_drift:.3e}")
    print(f"wrote {out / 'trajectory.csv'} and {out / 'events.csv'}")
    return 0


def cmd_analyze(args) -> int:
    traj = csvio.read_trajectory(args.trajectory)
    fit = fit_sinusoid(traj, method=args.method)
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    csvio.write_fit(out / "fit.csv", fit)
    csvio.write_deviation(out / "deviation.csv", deviation_series(traj, fit))
    print(f"fit: x(t) ~ {fit.offset:.6f} + {fit.amplitude:.6f} sin({fit.omega:.6f} (t - {fit.t0:.6f}))")
    print(f"rmse: {fit.rmse:.3e}")
    print(f"wrote {out / 'fit.csv'} and {out / 'deviation.csv'}")
    return 0


def cmd_reproduce_example1(args) -> int:
    cfg = resolve_config(args)
    checks, traj = run_checks(_system(cfg), cfg["dt"], cfg["t_max"])
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        csvio.write_trajectory(out / "trajectory.csv", traj)
        csvio.write_events(out / "events.csv", traj.events, traj.x_o)
    width = max(len(c.name) for c in checks)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  {c.detail}")
    ok = all(c.passed for c in checks)
    print("all checks passed" if ok else "some checks FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oscillatory-ft", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ft-point", help="weighted Fermat-Torricelli point of a triangle")
    _add_system_flags(p)
    p.add_argument("--vertices", type=float, nargs=6, metavar="C", help="x1 y1 x2 y2 x3 y3")
    p.add_argument("--weights", type=float, nargs=3, metavar="W", help="w1 w2 w3")
    p.set_defaults(func=cmd_ft_point)

    p = sub.add_parser("simulate", help="release the knot and write trajectory.csv / events.csv")
    _add_system_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="fit a sinusoid to trajectory.csv")
    p.add_argument("trajectory", help="trajectory CSV written by 'simulate'")
    p.add_argument("--out", default=None, help="output directory")
    p.add_argument("--method", choices=("envelope", "least_squares"), default="envelope")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reproduce-example1", help="run the reference scenario and report checks")
    _add_system_flags(p)
    p.set_defaults(func=cmd_reproduce_example1)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:  # all package input errors derive from ValueError
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
