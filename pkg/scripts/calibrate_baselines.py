#!/usr/bin/env python3
"""Measure the constants behind the structural checks.

The structural claims (bias contrast, flatness, group sizes) hold up to
constant factors nobody publishes. This script runs the reference
configurations once, records the measured constants in
src/tabsketch/data/baselines.json keyed by config fingerprint, and the
test suite then regression-checks against them with fixed slack.

Usage: python3 scripts/calibrate_baselines.py [outpath]
"""

import math
import sys
import time

from tabsketch.statlab import (
    config_fingerprint,
    contrast_cells,
    contrast_record,
    estimate_min_probability,
    flatness_cells,
    flatness_record,
    group_size_record,
    max_group_sizes,
    save_baselines,
)
from tabsketch.statlab.baseline import GROUPS_SEED, REFERENCE_SPEC


def calibrate_contrast() -> dict:
    by_cell = {}
    for cell in contrast_cells():
        t0 = time.time()
        rep = estimate_min_probability(cell)
        by_cell[(cell.family, cell.n)] = rep
        print(
            f"  {cell.family:8s} n={cell.n:3d} implied_bias={rep.implied_bias:+.4f} "
            f"[{rep.implied_bias_lo:+.4f}, {rep.implied_bias_hi:+.4f}] "
            f"({time.time() - t0:.1f}s)"
        )
    margins = {}
    for n in (2, 4, 8):
        tw, si = by_cell[("twisted", n)], by_cell[("simple", n)]
        margins[n] = si.implied_bias_lo - tw.implied_bias_hi
    best_n = max(margins, key=margins.get)
    twisted_abs = max(abs(by_cell[("twisted", n)].implied_bias) for n in (2, 4, 8))
    return {
        "contrast_margin": margins[best_n],
        "contrast_best_n": best_n,
        "twisted_abs_bias_max": twisted_abs,
    }


def calibrate_flatness() -> dict:
    points, halves = [], []
    for cell in flatness_cells():
        t0 = time.time()
        rep = estimate_min_probability(cell)
        points.append(rep.implied_bias)
        halves.append((rep.implied_bias_hi - rep.implied_bias_lo) / 2.0)
        print(
            f"  twisted  n={cell.n:3d} implied_bias={rep.implied_bias:+.4f} "
            f"half_width={halves[-1]:.4f} ({time.time() - t0:.1f}s)"
        )
    spread = max(points) - min(points)
    sum_half = sum(halves)
    slack = max(0.0, spread - sum_half) + 0.01
    return {"slack": slack, "measured_spread": spread, "sum_half_widths": sum_half}


def calibrate_group_constant(n: int = 4096, trials: int = 1000) -> dict:
    t0 = time.time()
    maxima = max_group_sizes(REFERENCE_SPEC, n, trials, GROUPS_SEED)
    unit = 1.0 + n / math.sqrt(REFERENCE_SPEC.alphabet_size)
    worst = max(maxima)
    c = math.ceil(worst / unit * 1000) / 1000
    print(
        f"  worst max group {worst} over {trials} seeds, unit {unit:.1f}, "
        f"C={c} ({time.time() - t0:.1f}s)"
    )
    return {"C": c, "worst_max_group": worst, "bound_unit": unit}


def main() -> int:
    out = sys.argv[1] if len(sys.argv) > 1 else "src/tabsketch/data/baselines.json"
    entries = {}

    print("headline contrast cells:")
    rec = contrast_record()
    entries[config_fingerprint(rec)] = {
        "label": "headline-contrast",
        "constants": calibrate_contrast(),
    }

    print("flatness cells:")
    rec = flatness_record()
    entries[config_fingerprint(rec)] = {
        "label": "flatness",
        "constants": calibrate_flatness(),
    }

    print("group sizes:")
    rec = group_size_record()
    entries[config_fingerprint(rec)] = {
        "label": "group-size",
        "constants": calibrate_group_constant(),
    }

    save_baselines(
        {"format": "tabsketch-baselines", "version": 1, "entries": entries}, out
    )
    print(f"wrote {len(entries)} baselines to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
