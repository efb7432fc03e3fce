#!/usr/bin/env python3
"""Random waypoint motion: a single node's trajectory, step by step.

Walks one node for ten minutes of simulated time, printing a sample of the
trajectory and checking the two properties the mobility model promises:
the node never leaves the terrain and never moves faster than Vmax.
If matplotlib is importable the trajectory is also saved as a PNG.
"""

import math

import numpy as np

from sddwca import Position, advance, init_waypoint

TERRAIN = (750.0, 750.0)
VMIN, VMAX = 0.1, 15.0
PAUSE = 30.0


def main():
    rng = np.random.default_rng(11)
    state = init_waypoint(Position(375.0, 375.0), TERRAIN, VMIN, VMAX, rng)
    points = [state.current]
    max_step = 0.0
    for step in range(600):
        prev = state.current
        state = advance(state, 1.0, TERRAIN, VMIN, VMAX, PAUSE, rng)
        points.append(state.current)
        max_step = max(
            max_step, math.hypot(state.current.x - prev.x, state.current.y - prev.y)
        )
        if step % 60 == 0:
            mode = "paused" if state.pause_left > 0 else f"{state.speed:4.1f} m/s"
            print(
                f"  t={step:3d}s  pos=({state.current.x:6.1f},{state.current.y:6.1f})  {mode}"
            )

    xs = [p.x for p in points]
    ys = [p.y for p in points]
    print(f"\nvisited x range [{min(xs):.1f}, {max(xs):.1f}], "
          f"y range [{min(ys):.1f}, {max(ys):.1f}]")
    print(f"largest per-second displacement {max_step:.2f} m (Vmax {VMAX})")

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        plt.figure(figsize=(5, 5))
        plt.plot(xs, ys, linewidth=0.8)
        plt.scatter([xs[0]], [ys[0]], color="green", label="start")
        plt.scatter([xs[-1]], [ys[-1]], color="red", label="end")
        plt.xlim(0, TERRAIN[0])
        plt.ylim(0, TERRAIN[1])
        plt.legend()
        plt.title("random waypoint trajectory, 600 s")
        plt.savefig("waypoint_trajectory.png", dpi=120)
        print("saved waypoint_trajectory.png")
    except ImportError:
        print("matplotlib not available; skipping the plot")


if __name__ == "__main__":
    main()
