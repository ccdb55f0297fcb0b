import math
from types import SimpleNamespace

import numpy as np
import pytest

from conftest import EX1_A2O, EX1_SPEED_AT_O, EX1_V_AT_O, EX1_X_MAX, EX1_X_O, random_in_regime
from oracles import harmonic_period, mp_example
from oscillatory_ft import (
    DomainError,
    InsufficientDataError,
    IsoscelesSystem,
    deviation_series,
    estimate_period_crossings,
    estimate_period_quadrature,
    fit_sinusoid,
    isosceles_ft_angle,
    isosceles_ft_x,
    oscillation_period,
    potential,
    simulate,
    speed_at_ft,
    turning_point,
    work_along_axis,
)


def synthetic(d, amp, omega, t0, t_max=40.0, dt=1e-3):
    t = np.arange(int(round(t_max / dt)) + 1) * dt
    return SimpleNamespace(
        t=t,
        x=d + amp * np.sin(omega * (t - t0)),
        xdot=amp * omega * np.cos(omega * (t - t0)),
    )


# --- speed and work ------------------------------------------------------------


def test_speed_at_ft_example1(ex1):
    assert speed_at_ft(ex1) == pytest.approx(EX1_SPEED_AT_O, abs=1e-12)


def test_speed_matches_theorem_expression(ex1):
    alpha = isosceles_ft_angle(ex1.w2)
    x_o = isosceles_ft_x(ex1)
    a, w2 = ex1.a, ex1.w2
    direct = math.sqrt(2 / ex1.m0 * (2 * a * w2 - x_o - 2 * a * w2 * math.sin(ex1.phi0) / math.sin(alpha)))
    assert speed_at_ft(ex1) == pytest.approx(direct, abs=1e-13)


def test_speed_printed_corollary_disagrees(ex1):
    # the unit-weight specialisation as printed drops a factor a from its first term
    x_o = isosceles_ft_x(ex1)
    printed_arg = 2 / ex1.m0 * (2 - x_o - 4 * ex1.a * math.sin(ex1.phi0) / math.sqrt(3))
    assert printed_arg < 0


def test_speed_vs_reference_peak(ex1):
    assert abs(speed_at_ft(ex1) - 1.08427) / speed_at_ft(ex1) < 0.03


def test_speed_vanishes_at_regime_edge():
    sys = IsoscelesSystem.from_degrees(5.0, 59.999, 1.0)
    assert 0 < speed_at_ft(sys) < 1e-3


def test_speed_domain_error():
    with pytest.raises(DomainError):
        speed_at_ft(IsoscelesSystem.from_degrees(5.0, 61.0, 1.0))


def test_speed_matches_simulation(rng):
    for sys in random_in_regime(rng, 5):
        traj = simulate(sys, 1e-3, 12.0)
        v = speed_at_ft(sys)
        for c in traj.events.o_crossings:
            assert abs(c.xdot) == pytest.approx(v, abs=1e-6)


def test_speed_monotone_in_w2():
    grid = [0.8, 1.0, 1.5, 2.0, 3.0]
    systems = [IsoscelesSystem.from_degrees(5.0, 40.0, w) for w in grid]
    alphas = [isosceles_ft_angle(w) for w in grid]
    speeds = [speed_at_ft(s) for s in systems]
    assert all(np.diff(alphas) > 0)
    assert all(np.diff(speeds) > 0)
    for w, s in zip(grid, speeds):
        assert s == pytest.approx(mp_example(5, 40, w)[2], abs=1e-12)


def test_work_example1(ex1):
    w = work_along_axis(ex1, EX1_X_O)
    assert w == pytest.approx(-EX1_V_AT_O, abs=1e-14)
    assert w == pytest.approx(2 * (5 - EX1_A2O) - EX1_X_O, abs=1e-14)
    assert w != 0
    assert work_along_axis(ex1, 0.0) == 0.0
    assert work_along_axis(ex1, 3.5473) == pytest.approx(0.0, abs=1e-3)


def test_work_is_minus_potential(ex1, rng):
    xs = rng.uniform(0, EX1_X_MAX, 200)
    for x in xs:
        assert work_along_axis(ex1, x) == pytest.approx(-potential(ex1, x), abs=1e-14)


def test_work_equals_kinetic_energy(ex1, ex1_traj):
    ke = 0.5 * ex1.m0 * ex1_traj.xdot**2
    w = np.array([work_along_axis(ex1, max(x, 0.0)) for x in ex1_traj.x[::50]])
    assert np.max(np.abs(w - ke[::50])) < 1e-6


def test_work_rejects_negative(ex1):
    with pytest.raises(DomainError):
        work_along_axis(ex1, -0.1)


# --- periods ----------------------------------------------------------------------


def test_turning_point_example1(ex1):
    assert turning_point(ex1) == pytest.approx(EX1_X_MAX, abs=1e-12)
    assert turning_point(ex1) == pytest.approx(3.5473, abs=1e-4)


def test_period_quadrature_example1(ex1):
    est = estimate_period_quadrature(ex1)
    assert est.method == "quadrature"
    assert abs(est.period - 2 * math.pi / 0.61133) / est.period < 0.02


def test_period_quadrature_harmonic_probe():
    m0, k, c, amp = 1.7, 3.2, 0.4, 0.9
    period, _ = oscillation_period(
        lambda x: 0.5 * k * (x - c) ** 2, c - amp, c + amp, m0, level=0.5 * k * amp**2
    )
    assert period == pytest.approx(harmonic_period(m0, k), abs=1e-8)


def test_period_quadrature_other_regime():
    sys = IsoscelesSystem.from_degrees(5.0, 30.0, 1 / math.sqrt(2))
    est = estimate_period_quadrature(sys)
    assert math.isfinite(est.period) and est.period > 0
    assert turning_point(sys) == pytest.approx(mp_example(5, 30, 1 / math.sqrt(2))[3], abs=1e-10)


def test_period_crossings_example1(ex1, ex1_traj):
    est = estimate_period_crossings(ex1_traj)
    assert est.method == "crossings"
    assert abs(est.period - 2 * math.pi / 0.61133) / est.period < 0.02
    q = estimate_period_quadrature(ex1)
    assert abs(est.period - q.period) / q.period < 1e-4
    assert est.uncertainty / est.period < 1e-4


def test_period_estimators_agree(rng):
    for sys in random_in_regime(rng, 5):
        q = estimate_period_quadrature(sys)
        traj = simulate(sys, 1e-3, 3.2 * q.period)
        c = estimate_period_crossings(traj)
        assert abs(c.period - q.period) / q.period < 1e-4


def test_period_crossings_insufficient(ex1):
    with pytest.raises(InsufficientDataError):
        estimate_period_crossings(simulate(ex1, 1e-3, 8.0))


# --- sinusoid fit ------------------------------------------------------------------


@pytest.mark.parametrize("method", ["envelope", "least_squares"])
def test_fit_recovers_synthetic(method):
    d, amp, omega, t0 = 1.3, 0.7, 0.9, 0.45
    fit = fit_sinusoid(synthetic(d, amp, omega, t0), method=method)
    assert fit.offset == pytest.approx(d, abs=1e-8)
    assert fit.amplitude == pytest.approx(amp, abs=1e-8)
    assert fit.omega == pytest.approx(omega, abs=1e-8)
    period = 2 * math.pi / omega
    assert (fit.t0 - t0) / period == pytest.approx(round((fit.t0 - t0) / period), abs=1e-8)
    assert fit.rmse < 1e-10


def test_fit_envelope_example1(ex1_traj):
    fit = fit_sinusoid(ex1_traj)
    assert fit.offset == pytest.approx(1.77363, rel=0.01)
    assert fit.amplitude == pytest.approx(1.77363, rel=0.01)
    assert fit.omega == pytest.approx(0.61133, rel=0.02)
    assert fit.offset + fit.amplitude == pytest.approx(EX1_X_MAX, abs=5e-3)
    assert abs(fit.offset - fit.amplitude) <= fit.rmse
    # the reference phase is a quarter period after release
    assert fit.t0 == pytest.approx(2.56947, abs=1e-4)


def test_fit_least_squares_example1(ex1_traj):
    fit = fit_sinusoid(ex1_traj, method="least_squares")
    env = fit_sinusoid(ex1_traj)
    assert fit.rmse < env.rmse
    assert fit.omega == pytest.approx(0.61133, rel=0.02)
    assert fit.amplitude >= 0 and fit.omega > 0
    dev = deviation_series(ex1_traj, fit)
    assert abs(dev.dx.mean()) < 1e-3 * fit.amplitude
    # the orbit is anharmonic: the least-squares offset sits below x_max / 2
    assert fit.offset < 0.99 * EX1_X_MAX / 2


def test_fit_requires_two_periods(ex1):
    with pytest.raises(InsufficientDataError):
        fit_sinusoid(simulate(ex1, 1e-3, 15.0))


def test_fit_unknown_method(ex1_traj):
    with pytest.raises(ValueError):
        fit_sinusoid(ex1_traj, method="fourier")


# --- deviation series -----------------------------------------------------------


def test_deviation_zero_for_synthetic():
    traj = synthetic(0.2, 1.1, 1.4, -0.3)
    fit = fit_sinusoid(traj)
    dev = deviation_series(traj, fit)
    assert np.max(np.abs(dev.dx)) < 1e-10
    assert np.max(np.abs(dev.dv)) < 1e-10


def test_deviation_example1_bounded_and_nonzero(ex1_traj):
    # bound measured on the reference orbit: 0.1982 envelope, 0.1127 least squares
    for method, bound in (("envelope", 0.2), ("least_squares", 0.12)):
        fit = fit_sinusoid(ex1_traj, method=method)
        dev = deviation_series(ex1_traj, fit)
        assert 0.05 < np.max(np.abs(dev.dx)) < bound
        assert np.max(np.abs(dev.dv)) > 1e-3


def test_deviation_vanishes_at_intersections(ex1_traj):
    fit = fit_sinusoid(ex1_traj)
    dev = deviation_series(ex1_traj, fit)
    sign_change = np.nonzero(np.diff(np.sign(dev.dx)) != 0)[0]
    assert len(sign_change) > 0
    assert np.min(np.abs(dev.dx[sign_change])) < 1e-3


def test_deviation_reference_fit(ex1_traj):
    from oscillatory_ft import SinusoidFit

    reference = SinusoidFit(1.77363, 1.77363, 0.61133, 2.56947, rmse=float("nan"))
    ours = fit_sinusoid(ex1_traj)
    d_pub = deviation_series(ex1_traj, reference)
    d_ours = deviation_series(ex1_traj, ours)
    assert np.max(np.abs(d_pub.dx - d_ours.dx)) < 1e-4
    assert reference.amplitude * reference.omega == pytest.approx(1.08427, abs=1e-5)
