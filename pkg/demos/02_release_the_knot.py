"""Release the knot at the apex and watch it oscillate through the equilibrium.

Reference scenario: equal sides a = 5, half apex angle 40 degrees, unit weights
and unit mass. The knot starts at rest at A1 and slides along the symmetry axis.
Energy conservation predicts the speed at the equilibrium O and the far
turning point; the simulation reproduces both.
"""

import math
import sys
from pathlib import Path

from oscillatory_ft import (
    IsoscelesSystem,
    estimate_period_crossings,
    estimate_period_quadrature,
    isosceles_ft_angle,
    isosceles_ft_x,
    simulate,
    speed_at_ft,
    turning_point,
    work_along_axis,
)
from oscillatory_ft import csvio

system = IsoscelesSystem.from_degrees(5.0, 40.0, 1.0)
x_o = isosceles_ft_x(system)
print(f"equilibrium angle     {math.degrees(isosceles_ft_angle(system.w2)):.6f} deg")
print(f"A1O                   {x_o:.10f}")
print(f"work along A1O        {work_along_axis(system, x_o):.10f}")
print(f"speed at O            {speed_at_ft(system):.10f}")
print(f"far turning point     {turning_point(system):.10f}")
print(f"period (quadrature)   {estimate_period_quadrature(system).period:.10f}")

traj = simulate(system, dt=1e-3, t_max=30.0)
print(f"\nsimulated {len(traj)} samples, max energy drift {traj.max_energy_drift:.1e}")
print(f"period (crossings)    {estimate_period_crossings(traj).period:.10f}")

print("\nevents")
for c in traj.events.o_crossings:
    print(f"  t = {c.t:9.5f}  crossing {c.direction}  speed {abs(c.xdot):.10f}")
for tp in traj.events.turning_points:
    print(f"  t = {tp.t:9.5f}  turn at x = {tp.x:.10f}")

# The knot passes A4 (the foot of the altitude) only for heavier base weights.
heavy = IsoscelesSystem.from_degrees(5.0, 40.0, 10.0)
print(f"\nw2 = 10: x_max {turning_point(heavy):.6f} vs h {heavy.h:.6f}")

if len(sys.argv) > 1:
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    csvio.write_trajectory(out / "trajectory.csv", traj)
    csvio.write_events(out / "events.csv", traj.events, traj.x_o)
    print(f"wrote CSVs to {out}")
