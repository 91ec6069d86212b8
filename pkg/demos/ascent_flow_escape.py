"""Gradient ascent escaping a degenerate critical point.

Starting the ascent flow u' = grad scal(u) at an improving witness point,
the value can only increase, so the trajectory never revisits the critical
metric: a dynamical restatement of "not a local maximum".  Trajectories are
exported as CSV for plotting.
"""

import os
import tempfile

import numpy as np

from homscal import build, improving_offset, integrate_ascent, probe_chart, write_trajectory_csv


def main():
    entry = build("e6_su2_so6")
    res = probe_chart(entry.chart, entry.curve())
    witness = improving_offset(entry.chart, entry.curve(), res.s3)
    print(f"witness start: y = {witness[0]}")

    traj = integrate_ascent(entry.chart, witness, region=[(0.9, 1.1)])
    values = np.array(traj.values)
    crit_value = entry.chart.reduced.eval_float((1.0,))
    print(f"steps taken: {len(traj.points) - 1}, termination: {traj.reason}")
    print(f"value goes {values[0]:.9f} -> {values[-1]:.9f} "
          f"(critical value {crit_value:.9f})")
    print(f"smallest per-step increment: {np.diff(values).min():.3e} (never < -1e-10)")
    closest = min(abs(p[0] - 1.0) for p in traj.points)
    print(f"closest return to the critical point: {closest:.6f} (never within 1e-4)")

    out = os.path.join(tempfile.gettempdir(), "ascent_two_summand.csv")
    write_trajectory_csv(traj, out)
    print(f"trajectory written to {out}")

    print("\nthe same flow started on the descending side of the kernel line:")
    entry3 = build("su_n", 3)
    start = tuple(np.array([1.0, 1.0]) - 1e-2 * np.array([-2.0, 1.0]) / np.sqrt(5))
    traj3 = integrate_ascent(entry3.chart, start, max_steps=4000,
                             region=[(0.8, 1.2), (0.8, 1.2)])
    inc = np.diff(traj3.values)
    print(f"steps: {len(traj3.points) - 1}, termination: {traj3.reason}, "
          f"min increment {inc.min():.3e} (ascent is monotone on either side)")


if __name__ == "__main__":
    main()
