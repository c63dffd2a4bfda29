#!/usr/bin/env python3
"""Radius sweep over a synthetic blob cloud, printed as a small table.

Shows how the ball count collapses as the radius grows, the first step of
any exploration before settling on a working resolution.

Run: python scripts/sweep_demo.py
"""

from ballmapper.analysis import radius_sweep
from ballmapper.synthetic import gaussian_blobs


def main() -> None:
    cloud = gaussian_blobs(
        150,
        centers=[(0.0, 0.0, 0.0), (12.0, 0.0, 4.0), (6.0, 14.0, -2.0)],
        spread=2.0,
        seed=4,
    )
    grid = [0.5, 1, 2, 3, 4, 6, 8, 12, 20]
    print(f"{'eps':>6} {'balls':>6} {'size_mean':>10} {'size_sd':>9} {'edges/ball':>11}")
    for row in radius_sweep(cloud, grid, seed=0):
        print(
            f"{row.epsilon:>6.1f} {row.ball_count:>6} {row.size_mean:>10.2f} "
            f"{row.size_sd:>9.2f} {row.edges_per_ball:>11.3f}"
        )


if __name__ == "__main__":
    main()
