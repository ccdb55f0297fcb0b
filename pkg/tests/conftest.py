import math

import numpy as np
import pytest

from oscillatory_ft import IsoscelesSystem, isosceles_ft_angle, simulate

# Reference scenario values computed at 30 digits with mpmath from the axis
# potential V(x) = x + 2 w2 (sqrt((h - x)**2 + b**2) - a); see tests/oracles.py.
EX1_X_O = 1.9746542181734923
EX1_V_AT_O = -0.60307379214091616
EX1_SPEED_AT_O = 1.0982475059301671
EX1_X_MAX = 3.5472592415863738
EX1_A2O = 3.7111359948427958
EX1_FORCE_AT_APEX = 2 * math.cos(math.radians(40)) - 1


@pytest.fixture(scope="session")
def ex1():
    return IsoscelesSystem.from_degrees(5.0, 40.0, 1.0, 1.0)


@pytest.fixture(scope="session")
def ex1_traj(ex1):
    return simulate(ex1, dt=1e-3, t_max=30.0)


def random_in_regime(rng, n):
    """Random isosceles systems with phi0 well inside (0, alpha)."""
    out = []
    while len(out) < n:
        w2 = rng.uniform(0.6, 5.0)
        alpha = isosceles_ft_angle(w2)
        phi0 = rng.uniform(0.1, 0.9) * min(alpha, math.pi / 2)
        if not 0 < phi0 < math.pi / 2:
            continue
        out.append(IsoscelesSystem(rng.uniform(0.5, 10.0), phi0, w2, rng.uniform(0.2, 5.0)))
    return out


def random_triangles(rng, n, min_area=1e-2):
    from oscillatory_ft import WeightedTriangle

    out = []
    while len(out) < n:
        pts = rng.uniform(-1, 1, size=(3, 2))
        tri = WeightedTriangle(tuple(map(tuple, pts)), tuple(rng.uniform(0.2, 3.0, size=3)))
        if abs(tri.twice_signed_area()) > min_area:
            out.append(tri)
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


@pytest.fixture
def acceptance(request):
    """Record one summary line per acceptance criterion; printed at session end."""
    lines = request.config.__dict__.setdefault("_acceptance_lines", [])
    entry = {"name": request.node.name, "detail": ""}
    lines.append(entry)

    def note(detail):
        entry["detail"] = detail

    yield note
    rep = getattr(request.node, "rep_call", None)
    entry["passed"] = rep is not None and rep.passed


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter, config):
    lines = config.__dict__.get("_acceptance_lines")
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for e in lines:
        mark = "PASS" if e.get("passed") else "FAIL"
        terminalreporter.write_line(f"{mark}  {e['name']}  {e['detail']}")
