"""Frictionless knot motion along the symmetry axis.

The knot of mass ``m0`` is released from the apex with zero velocity and
moves under the axial force ``2 w2 cos(phi) - 1`` (string tensions equal the
hanging weights). Integration is fixed-step RK4 in the axis coordinate
``x``; events are located by cubic Hermite interpolation inside the
bracketing step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import ConfigurationError, DomainError
from .fermat_core import (
    AbsorbedAt,
    IsoscelesSystem,
    classify_case,
    isosceles_ft_x,
    phi_of_x,
)

__all__ = [
    "KnotState",
    "OCrossing",
    "TurningPoint",
    "EventLog",
    "Trajectory",
    "axial_force",
    "potential",
    "energy",
    "rhs",
    "step_rk4",
    "simulate",
    "detect_events",
    "check_oscillatory",
    "phi_ode_residual",
    "phi_derivatives",
    "hermite_root",
    "hermite_interp",
]


@dataclass(frozen=True)
class KnotState:
    t: float
    x: float
    xdot: float


@dataclass(frozen=True)
class OCrossing:
    t: float
    xdot: float
    direction: str  # "+" or "-"


@dataclass(frozen=True)
class TurningPoint:
    t: float
    x: float


@dataclass
class EventLog:
    o_crossings: list[OCrossing] = field(default_factory=list)
    turning_points: list[TurningPoint] = field(default_factory=list)


@dataclass
class Trajectory:
    """Uniformly sampled knot trajectory.

    Samples are stored column-wise as numpy arrays. ``system`` and ``x_o``
    are ``None`` for trajectories read back from CSV without a system.
    """

    t: np.ndarray
    x: np.ndarray
    xdot: np.ndarray
    phi: np.ndarray
    energy: np.ndarray
    dt: float
    system: IsoscelesSystem | None = None
    x_o: float | None = None
    events: EventLog = field(default_factory=EventLog)

    def __len__(self):
        return len(self.t)

    @property
    def max_energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])))

    def state(self, i: int) -> KnotState:
        return KnotState(float(self.t[i]), float(self.x[i]), float(self.xdot[i]))


def axial_force(sys: IsoscelesSystem, x):
    """Net pull along the axis towards the base, ``2 w2 cos(phi(x)) - 1``."""
    return 2.0 * sys.w2 * np.cos(phi_of_x(sys, x)) - 1.0


def potential(sys: IsoscelesSystem, x):
    """Axis potential ``x + 2 w2 (d(x) - a)``, zero at the apex.

    ``d(x)`` is the distance from the knot to either base vertex, so this is
    the weighted distance objective on the axis minus its apex value.
    """
    x = np.asarray(x, dtype=float)
    # d - a rewritten as (d**2 - a**2) / (d + a) to avoid cancellation near the apex
    return x + 2.0 * sys.w2 * x * (x - 2.0 * sys.h) / (sys.base_distance(x) + sys.a)


def energy(sys: IsoscelesSystem, s: KnotState) -> float:
    return float(0.5 * sys.m0 * s.xdot**2 + potential(sys, s.x))


def rhs(sys: IsoscelesSystem, s: KnotState) -> tuple[float, float]:
    return s.xdot, float(axial_force(sys, s.x)) / sys.m0


def _accel(sys: IsoscelesSystem, x: float) -> float:
    # scalar fast path of axial_force / m0 for the integration loop
    return (2.0 * sys.w2 * math.cos(math.atan2(sys.b, sys.h - x)) - 1.0) / sys.m0


def _rk4(sys: IsoscelesSystem, x: float, v: float, dt: float) -> tuple[float, float]:
    k1x, k1v = v, _accel(sys, x)
    k2x, k2v = v + 0.5 * dt * k1v, _accel(sys, x + 0.5 * dt * k1x)
    k3x, k3v = v + 0.5 * dt * k2v, _accel(sys, x + 0.5 * dt * k2x)
    k4x, k4v = v + dt * k3v, _accel(sys, x + dt * k3x)
    return (
        x + dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x),
        v + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
    )


def step_rk4(sys: IsoscelesSystem, s: KnotState, dt: float) -> KnotState:
    """One classical fourth-order Runge-Kutta step."""
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    x, v = _rk4(sys, s.x, s.xdot, dt)
    return KnotState(s.t + dt, x, v)


def hermite_interp(y0, d0, y1, d1, h, u):
    # cubic Hermite on [0, h] evaluated at fraction u
    h00 = (1 + 2 * u) * (1 - u) ** 2
    h10 = u * (1 - u) ** 2
    h01 = u * u * (3 - 2 * u)
    h11 = u * u * (u - 1)
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1


def hermite_root(y0: float, d0: float, y1: float, d1: float, h: float) -> float:
    """Fraction ``u`` in [0, 1] where the cubic Hermite interpolant vanishes.

    Requires ``y0`` and ``y1`` to bracket zero.
    """
    if y0 == 0.0:
        return 0.0
    if y1 == 0.0:
        return 1.0
    return brentq(lambda u: hermite_interp(y0, d0, y1, d1, h, u), 0.0, 1.0, xtol=1e-15)


def _brackets(f: np.ndarray) -> np.ndarray:
    # indices i with a strict sign change from f[i] to f[i+1] (landing on 0 counts)
    f0, f1 = f[:-1], f[1:]
    return np.nonzero(((f0 < 0) & (f1 >= 0)) | ((f0 > 0) & (f1 <= 0)))[0]


def detect_events(sys: IsoscelesSystem, t, x, xdot, x_o: float) -> EventLog:
    """O-crossings (sign changes of ``x - x_o``) and turning points (of ``xdot``)."""
    acc = axial_force(sys, x) / sys.m0
    log = EventLog()
    for i in _brackets(x - x_o):
        h = t[i + 1] - t[i]
        u = hermite_root(x[i] - x_o, xdot[i], x[i + 1] - x_o, xdot[i + 1], h)
        v = hermite_interp(xdot[i], acc[i], xdot[i + 1], acc[i + 1], h, u)
        log.o_crossings.append(OCrossing(float(t[i] + u * h), float(v), "+" if v > 0 else "-"))
    for i in _brackets(xdot):
        h = t[i + 1] - t[i]
        u = hermite_root(xdot[i], acc[i], xdot[i + 1], acc[i + 1], h)
        xt = hermite_interp(x[i], xdot[i], x[i + 1], xdot[i + 1], h, u)
        log.turning_points.append(TurningPoint(float(t[i] + u * h), float(xt)))
    return log


def check_oscillatory(sys: IsoscelesSystem) -> float:
    """Return the equilibrium position ``x_O`` or raise :class:`ConfigurationError`."""
    case = classify_case(sys.triangle())
    if isinstance(case, AbsorbedAt):
        raise ConfigurationError(
            f"weighted Fermat-Torricelli point is absorbed at A{case.vertex}; "
            "the knot does not oscillate"
        )
    try:
        return isosceles_ft_x(sys)
    except DomainError as exc:
        raise ConfigurationError(str(exc)) from exc


def simulate(sys: IsoscelesSystem, dt: float = 1e-3, t_max: float = 30.0) -> Trajectory:
    """Release the knot at the apex with zero velocity and integrate to ``t_max``.

    The grid is ``t_k = k * dt`` for ``k = 0 .. round(t_max / dt)``.

    Raises:
        ConfigurationError: absorbed configuration or ``phi0 >= alpha``.
    """
    if not (dt > 0 and t_max > 0):
        raise ValueError("dt and t_max must be positive")
    x_o = check_oscillatory(sys)
    n = int(round(t_max / dt))
    xs = np.empty(n + 1)
    vs = np.empty(n + 1)
    x = v = 0.0
    xs[0] = vs[0] = 0.0
    for k in range(1, n + 1):
        x, v = _rk4(sys, x, v, dt)
        xs[k] = x
        vs[k] = v
    t = np.arange(n + 1) * dt
    e = 0.5 * sys.m0 * vs**2 + potential(sys, xs)
    return Trajectory(
        t=t,
        x=xs,
        xdot=vs,
        phi=phi_of_x(sys, xs),
        energy=e,
        dt=dt,
        system=sys,
        x_o=x_o,
        events=detect_events(sys, t, xs, vs, x_o),
    )


def phi_derivatives(sys: IsoscelesSystem, x, xdot, xddot):
    """Map axis kinematics ``(x, xdot, xddot)`` to ``(phi, phidot, phiddot)``."""
    x = np.asarray(x, dtype=float)
    u = sys.h - x
    r2 = u * u + sys.b**2
    dphi = sys.b / r2  # d phi / d x
    d2phi = 2.0 * sys.b * u / r2**2
    phi = phi_of_x(sys, x)
    return phi, dphi * xdot, d2phi * xdot**2 + dphi * xddot


def phi_ode_residual(sys: IsoscelesSystem, phi, phidot, phiddot):
    """Residual of the angle-form equation of motion.

    ``m0 (a sin(phi0) / sin(phi)**2 * phiddot
    - 2 a sin(phi0) cos(phi) / sin(phi)**3 * phidot**2) - (2 w2 cos(phi) - 1)``

    The velocity term is squared, as the chain rule on
    ``x = h - b cot(phi)`` requires.

    Raises:
        DomainError: ``phi`` outside (0, pi).
    """
    phi = np.asarray(phi, dtype=float)
    s = np.sin(phi)
    if np.any(~((phi > 0) & (phi < math.pi))) or np.any(s == 0):
        raise DomainError("phi must lie strictly between 0 and pi")
    c = np.cos(phi)
    lhs = sys.m0 * (sys.b / s**2 * phiddot - 2.0 * sys.b * c / s**3 * np.square(phidot))
    return lhs - (2.0 * sys.w2 * c - 1.0)
