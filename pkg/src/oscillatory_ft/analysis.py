"""Quantities derived from the axis potential and from simulated trajectories."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import bisect, brentq

from .dynamics import Trajectory, check_oscillatory, hermite_interp, hermite_root, potential
from .errors import ConfigurationError, DomainError, InsufficientDataError, NonConvergenceError
from .fermat_core import IsoscelesSystem, isosceles_ft_x

__all__ = [
    "SinusoidFit",
    "PeriodEstimate",
    "DeviationSeries",
    "speed_at_ft",
    "work_along_axis",
    "turning_point",
    "oscillation_period",
    "estimate_period_crossings",
    "estimate_period_quadrature",
    "fit_sinusoid",
    "deviation_series",
    "in_regime",
]


@dataclass(frozen=True)
class SinusoidFit:
    """``x(t) ~ offset + amplitude * sin(omega * (t - t0))``."""

    offset: float
    amplitude: float
    omega: float
    t0: float
    rmse: float

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    def __call__(self, t):
        return self.offset + self.amplitude * np.sin(self.omega * (np.asarray(t) - self.t0))

    def velocity(self, t):
        return self.amplitude * self.omega * np.cos(self.omega * (np.asarray(t) - self.t0))


@dataclass(frozen=True)
class PeriodEstimate:
    period: float
    method: str  # "crossings" or "quadrature"
    uncertainty: float


class DeviationSeries(NamedTuple):
    t: np.ndarray
    dx: np.ndarray
    dv: np.ndarray


def speed_at_ft(sys: IsoscelesSystem) -> float:
    """Knot speed when passing the weighted Fermat-Torricelli point.

    Energy conservation from the apex release gives ``sqrt(-2 V(x_O) / m0)``.

    Raises:
        DomainError: ``w2 < 1/2`` or ``phi0 >= alpha``.
    """
    x_o = isosceles_ft_x(sys)
    return math.sqrt(max(-2.0 * float(potential(sys, x_o)) / sys.m0, 0.0))


def work_along_axis(sys: IsoscelesSystem, x_end: float) -> float:
    """Work of the net axial force from the apex to ``x_end``: ``2 w2 (a - d) - x_end``."""
    if x_end < 0:
        raise DomainError(f"x_end must be non-negative, got {x_end}")
    return 2.0 * sys.w2 * (sys.a - float(sys.base_distance(x_end))) - x_end


def turning_point(sys: IsoscelesSystem, xtol: float = 1e-15) -> float:
    """Far turning point: the root of the potential beyond ``x_O``, by bisection."""
    x_o = check_oscillatory(sys)
    hi = max(sys.h, 2.0 * x_o)
    for _ in range(200):
        if potential(sys, hi) > 0:
            break
        hi *= 2.0
    else:  # pragma: no cover - V grows linearly, so this is unreachable in-regime
        raise RuntimeError("far turning point not bracketed")
    return bisect(lambda x: float(potential(sys, x)), x_o, hi, xtol=xtol)


def oscillation_period(
    v: Callable[[np.ndarray], np.ndarray],
    x_lo: float,
    x_hi: float,
    m0: float,
    level: float = 0.0,
    nodes: int = 64,
) -> tuple[float, float]:
    """Period of 1-D motion at energy ``level`` between turning points ``x_lo < x_hi``.

    Evaluates ``2 * integral dx / sqrt(2 (level - v(x)) / m0)``. Each half of
    the interval is mapped by ``x = x_turn +/- s**2``, which turns the inverse
    square root at the turning point into a smooth integrand, and is then
    integrated with Gauss-Legendre. ``v`` must accept numpy arrays.

    Returns:
        ``(period, err)`` where ``err`` is the change from halving ``nodes``.
    """
    if not x_hi > x_lo:
        raise ValueError("need x_lo < x_hi")
    smax = math.sqrt(0.5 * (x_hi - x_lo))

    def half_periods(n):
        u, wts = np.polynomial.legendre.leggauss(n)
        s = 0.5 * smax * (u + 1.0)
        total = 0.0
        for turn, sign in ((x_lo, 1.0), (x_hi, -1.0)):
            ke = level - np.asarray(v(turn + sign * s * s), dtype=float)
            total += 0.5 * smax * np.sum(wts * 2.0 * s / np.sqrt(2.0 * ke / m0))
        return 2.0 * total

    fine = half_periods(nodes)
    return float(fine), float(abs(fine - half_periods(nodes // 2)))


def estimate_period_quadrature(sys: IsoscelesSystem) -> PeriodEstimate:
    """Period of the apex-release orbit from the turning points and the potential."""
    x_max = turning_point(sys)
    period, err = oscillation_period(lambda x: potential(sys, x), 0.0, x_max, sys.m0)
    return PeriodEstimate(period, "quadrature", err)


def _same_direction_gaps(times: list[float], directions: list[str], need: int) -> np.ndarray:
    gaps = []
    enough = False
    for d in set(directions):
        ts = [t for t, dd in zip(times, directions) if dd == d]
        enough |= len(ts) >= need
        gaps.extend(np.diff(ts))
    if not enough:
        raise InsufficientDataError(
            f"need at least {need} same-direction crossings, got {len(times)} in total"
        )
    return np.asarray(gaps)


def estimate_period_crossings(traj: Trajectory) -> PeriodEstimate:
    """Mean spacing of same-direction passes through the equilibrium point.

    Raises:
        InsufficientDataError: fewer than three crossings in every direction.
    """
    cs = traj.events.o_crossings
    gaps = _same_direction_gaps([c.t for c in cs], [c.direction for c in cs], 3)
    mean = float(gaps.mean())
    return PeriodEstimate(mean, "crossings", float(np.max(np.abs(gaps - mean))))


def _level_crossings(t, x, xdot, level):
    f = x - level
    f0, f1 = f[:-1], f[1:]
    out = []
    for i in np.nonzero(((f0 < 0) & (f1 >= 0)) | ((f0 > 0) & (f1 <= 0)))[0]:
        h = t[i + 1] - t[i]
        u = hermite_root(f[i], xdot[i], f[i + 1], xdot[i + 1], h)
        out.append((t[i] + u * h, "+" if f[i] < 0 else "-"))
    return out


def _hermite_slope(y0, d0, y1, d1, h, u):
    return (
        (6 * u * u - 6 * u) * y0
        + (3 * u * u - 4 * u + 1) * h * d0
        + (6 * u - 6 * u * u) * y1
        + (3 * u * u - 2 * u) * h * d1
    )


def _extrema(t, x, xdot):
    # (time, value, is_max) at sign changes of xdot, refined on the Hermite cubic of x
    f0, f1 = xdot[:-1], xdot[1:]
    out = []
    for i in np.nonzero(((f0 < 0) & (f1 >= 0)) | ((f0 > 0) & (f1 <= 0)))[0]:
        h = t[i + 1] - t[i]
        args = (x[i], xdot[i], x[i + 1], xdot[i + 1], h)
        if xdot[i + 1] == 0.0:
            u = 1.0
        else:
            u = brentq(lambda u: _hermite_slope(*args, u), 0.0, 1.0, xtol=1e-15)
        out.append((t[i] + u * h, hermite_interp(*args, u), xdot[i] > 0))
    return out


def _envelope_fit(t, x, xdot) -> np.ndarray:
    ext = _extrema(t, x, xdot)
    maxima = [(tt, v) for tt, v, is_max in ext if is_max]
    hi = max([float(x.max())] + [v for _, v in maxima])
    lo = min([float(x.min())] + [v for _, v, is_max in ext if not is_max])
    offset, amplitude = 0.5 * (hi + lo), 0.5 * (hi - lo)
    if amplitude <= 0:
        raise InsufficientDataError("trajectory has no oscillation to fit")
    cross = _level_crossings(t, x, xdot, offset)
    gaps = _same_direction_gaps([c[0] for c in cross], [c[1] for c in cross], 2)
    period = float(gaps.mean())
    if t[-1] - t[0] < 2.0 * period * (1 - 1e-9):
        raise InsufficientDataError(
            f"trajectory spans {t[-1] - t[0]:.6g}, less than two periods ({2 * period:.6g})"
        )
    if maxima:
        t_peak = maxima[0][0]
    else:
        t_peak = float(t[np.argmax(x)])
    omega = 2.0 * math.pi / period
    return np.array([offset, amplitude, omega, t_peak - 0.5 * math.pi / omega])


def _residual(p, t, x):
    return p[0] + p[1] * np.sin(p[2] * (t - p[3])) - x


def _gauss_newton(p, t, x, rtol=1e-10, max_iter=100):
    r = _residual(p, t, x)
    cost = float(r @ r)
    for _ in range(max_iter):
        arg = p[2] * (t - p[3])
        s, c = np.sin(arg), np.cos(arg)
        jac = np.column_stack([np.ones_like(t), s, p[1] * c * (t - p[3]), -p[1] * p[2] * c])
        step = np.linalg.lstsq(jac, -r, rcond=None)[0]
        rel = np.linalg.norm(step) / np.linalg.norm(p)
        lam = 1.0
        while lam > 1e-12:
            trial = p + lam * step
            r_trial = _residual(trial, t, x)
            c_trial = float(r_trial @ r_trial)
            if c_trial <= cost:
                break
            lam *= 0.5
        else:
            # no descent along the Gauss-Newton direction: at the floor of rounding
            if rel < 1e-8:
                return p, r
            raise NonConvergenceError("Gauss-Newton step failed to reduce the residual", last=p)
        p, r, cost = trial, r_trial, c_trial
        if lam * rel < rtol:
            return p, r
    raise NonConvergenceError(f"Gauss-Newton did not converge in {max_iter} steps", last=p)


def fit_sinusoid(traj, method: str = "envelope") -> SinusoidFit:
    """Fit ``d + A sin(omega (t - t0))`` to the sampled positions.

    ``method="envelope"`` takes ``d`` and ``A`` from the extreme positions,
    ``omega`` from the mean spacing of same-direction passes through ``d``
    and places the first sine peak on the first maximum. Extremes and
    passes are refined on the cubic Hermite interpolant of ``(x, xdot)``.

    ``method="least_squares"`` starts from the envelope parameters and runs
    damped Gauss-Newton on all four parameters until the relative step is
    below ``1e-10``.

    ``traj`` needs ``t``, ``x`` and ``xdot`` arrays spanning at least two
    periods.

    Raises:
        InsufficientDataError: too short or flat a record.
        NonConvergenceError: least squares stalled; ``err.last`` holds the
            best parameter vector ``[d, A, omega, t0]``.
    """
    t = np.asarray(traj.t, dtype=float)
    x = np.asarray(traj.x, dtype=float)
    xdot = np.asarray(traj.xdot, dtype=float)
    p = _envelope_fit(t, x, xdot)
    if method == "least_squares":
        p, _ = _gauss_newton(p, t, x)
        if p[2] < 0:
            p[2], p[1] = -p[2], -p[1]
        if p[1] < 0:
            p[1] = -p[1]
            p[3] += math.pi / p[2]
    elif method != "envelope":
        raise ValueError(f"unknown fit method {method!r}")
    r = _residual(p, t, x)
    return SinusoidFit(*(float(v) for v in p), rmse=float(np.sqrt(np.mean(r * r))))


def deviation_series(traj, fit: SinusoidFit) -> DeviationSeries:
    """Position residual ``x - fit`` and speed residual ``|xdot| - |fit'|``."""
    t = np.asarray(traj.t, dtype=float)
    dx = np.asarray(traj.x, dtype=float) - fit(t)
    dv = np.abs(np.asarray(traj.xdot, dtype=float)) - np.abs(fit.velocity(t))
    return DeviationSeries(t, dx, dv)


def in_regime(sys: IsoscelesSystem) -> bool:
    try:
        check_oscillatory(sys)
    except (ConfigurationError, DomainError):
        return False
    return True
