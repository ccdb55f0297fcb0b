"""How close is the oscillation to a sinusoid?

The restoring force is nonlinear, so the orbit is only approximately
d + A sin(omega (t - t0)). Two fits are compared: an envelope fit built from the
extremes and level crossings, and a least-squares refinement that minimizes
the squared residual. The deviation series shows what neither can capture.
"""

import numpy as np

from oscillatory_ft import IsoscelesSystem, deviation_series, fit_sinusoid, simulate

system = IsoscelesSystem.from_degrees(5.0, 40.0, 1.0)
traj = simulate(system, dt=1e-3, t_max=30.0)

print("method          offset     amplitude  omega      t0         rmse    max|dx|  max|dv|")
for method in ("envelope", "least_squares"):
    fit = fit_sinusoid(traj, method=method)
    dev = deviation_series(traj, fit)
    print(
        f"{method:<14} {fit.offset:9.6f}  {fit.amplitude:9.6f}  {fit.omega:9.6f}  {fit.t0:9.6f}"
        f"  {fit.rmse:.4f}  {np.max(np.abs(dev.dx)):.4f}   {np.max(np.abs(dev.dv)):.4f}"
    )

# Where in the cycle is the mismatch largest? Compare x near the apex and near x_max.
fit = fit_sinusoid(traj)
dev = deviation_series(traj, fit)
i = int(np.argmax(np.abs(dev.dx)))
print(f"\nlargest envelope-fit deviation {dev.dx[i]:+.4f} at t = {traj.t[i]:.3f}, x = {traj.x[i]:.4f}")

# A coarse picture of one period, sampled every 0.5 time units.
print("\n    t        x      fit       dx")
for k in range(0, 10_500, 500):
    print(f"{traj.t[k]:5.1f}  {traj.x[k]:7.4f}  {fit(traj.t[k]):7.4f}  {dev.dx[k]:+7.4f}")
