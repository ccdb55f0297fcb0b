"""Flat-file formats: trajectory, event, fit and deviation CSVs and key = value configs.

All CSVs use 15 significant digits, may start with ``#`` comment lines and
carry a single header row.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .analysis import DeviationSeries, SinusoidFit
from .dynamics import EventLog, Trajectory
from .errors import ParseError

TRAJECTORY_COLUMNS = ("t", "x", "xdot", "phi", "energy")
EVENT_COLUMNS = ("kind", "t", "x", "xdot")
FIT_COLUMNS = ("d", "A", "omega", "t0", "rmse")
DEVIATION_COLUMNS = ("t", "dx", "dv")

CONFIG_KEYS = {"a", "phi0_deg", "w2", "m0", "dt", "t_max", "out"}


def fmt(v: float) -> str:
    return f"{v:.15g}"


def _write(path, comments, columns, rows):
    lines = [f"# {c}" for c in comments]
    lines.append(",".join(columns))
    lines.extend(",".join(r) for r in rows)
    Path(path).write_text("\n".join(lines) + "\n")


def write_trajectory(path, traj: Trajectory) -> None:
    comments = ["phi in radians; time and length in units with g = 1"]
    if traj.system is not None:
        s = traj.system
        comments.append(
            f"a={fmt(s.a)} phi0_deg={fmt(math.degrees(s.phi0))} w2={fmt(s.w2)} "
            f"m0={fmt(s.m0)} dt={fmt(traj.dt)}"
        )
    cols = np.column_stack([traj.t, traj.x, traj.xdot, traj.phi, traj.energy])
    _write(path, comments, TRAJECTORY_COLUMNS, ([fmt(v) for v in row] for row in cols))


def write_events(path, events: EventLog, x_o: float) -> None:
    rows = [("crossing" + c.direction, c.t, x_o, c.xdot) for c in events.o_crossings]
    rows += [("turn", tp.t, tp.x, 0.0) for tp in events.turning_points]
    rows.sort(key=lambda r: r[1])
    _write(
        path,
        ["kind in {crossing+, crossing-, turn}"],
        EVENT_COLUMNS,
        ([k, fmt(t), fmt(x), fmt(v)] for k, t, x, v in rows),
    )


def write_fit(path, fit: SinusoidFit) -> None:
    _write(
        path,
        ["x(t) ~ d + A sin(omega (t - t0))"],
        FIT_COLUMNS,
        [[fmt(fit.offset), fmt(fit.amplitude), fmt(fit.omega), fmt(fit.t0), fmt(fit.rmse)]],
    )


def write_deviation(path, dev: DeviationSeries) -> None:
    cols = np.column_stack([dev.t, dev.dx, dev.dv])
    _write(path, ["dx = x - fit, dv = |xdot| - |fit'|"], DEVIATION_COLUMNS, ([fmt(v) for v in r] for r in cols))


def read_numeric_csv(path, columns, increasing_first: bool = False) -> np.ndarray:
    """Read a CSV with the given header into an ``(n, len(columns))`` array.

    With ``increasing_first`` the first column must be strictly increasing.

    Raises:
        ParseError: missing or wrong header, wrong field count, non-numeric
            or non-finite field, no data rows, or a non-increasing first column.
    """
    header_seen = False
    rows = []
    lineno = 0
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",")]
            if not header_seen:
                if tuple(fields) != tuple(columns):
                    raise ParseError(f"expected header {','.join(columns)!r}, got {line!r}", lineno)
                header_seen = True
                continue
            if len(fields) != len(columns):
                raise ParseError(f"expected {len(columns)} fields, got {len(fields)}", lineno)
            try:
                values = [float(f) for f in fields]
            except ValueError:
                raise ParseError(f"non-numeric field in {line!r}", lineno) from None
            if not all(math.isfinite(v) for v in values):
                raise ParseError(f"non-finite value in {line!r}", lineno)
            if increasing_first and rows and values[0] <= rows[-1][0]:
                raise ParseError(f"{columns[0]} is not strictly increasing", lineno)
            rows.append(values)
    if not header_seen:
        raise ParseError("empty file, no header row", max(lineno, 1))
    if not rows:
        raise ParseError("no data rows", lineno)
    return np.array(rows)


def read_trajectory(path) -> Trajectory:
    data = read_numeric_csv(path, TRAJECTORY_COLUMNS, increasing_first=True)
    t = data[:, 0]
    dt = float(t[1] - t[0]) if len(t) > 1 else 0.0
    return Trajectory(t=t, x=data[:, 1], xdot=data[:, 2], phi=data[:, 3], energy=data[:, 4], dt=dt)


def read_config(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment.

    Keys are normalised so ``phi0-deg`` and ``phi0_deg`` are the same.
    Every value except ``out`` is parsed as a float.
    """
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {raw!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in CONFIG_KEYS:
            raise ParseError(f"unknown config key {key!r}", lineno)
        if key == "out":
            cfg[key] = value
            continue
        try:
            cfg[key] = float(value)
        except ValueError:
            raise ParseError(f"value for {key!r} is not a number: {value!r}", lineno) from None
    return cfg
