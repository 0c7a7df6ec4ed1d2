"""Regenerates the synthetic type-day profiles of the example dataset.

Each profile is a base load plus Gaussian bumps, sampled every 15 minutes.
Bump centres sit on grid points so every day has a single clear maximum.
"""

import math

DT = 0.25

# (base, [(centre_h, width_h, height), ...])
SHAPES = {
    "weekday": [(7.0, 0.9, 1.00), (12.5, 0.8, 0.25), (19.0, 1.4, 1.35)],
    "weekend": [(10.0, 1.6, 0.78), (12.5, 1.0, 0.20), (19.5, 1.5, 1.40)],
}
SEASONS = {
    "winter": (0.55, 1.00),
    "spring_autumn": (0.45, 0.78),
    "summer": (0.38, 0.62),
}

for season, (base, scale) in SEASONS.items():
    for day, bumps in SHAPES.items():
        with open(f"{season}_{day}.csv", "w") as f:
            f.write("time_h,value\n")
            for k in range(int(24 / DT)):
                t = k * DT
                v = base + scale * sum(
                    h * math.exp(-0.5 * ((t - c) / w) ** 2) for c, w, h in bumps
                )
                f.write(f"{t:.2f},{v:.4f}\n")
