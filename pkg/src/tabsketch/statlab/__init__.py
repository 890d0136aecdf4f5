"""Statistical verification lab for the hash families."""

from .baseline import (
    SLACK_FACTOR,
    baseline_for,
    config_fingerprint,
    contrast_cells,
    contrast_record,
    flatness_cells,
    flatness_record,
    group_size_record,
    load_baselines,
    save_baselines,
)
from .bias import (
    GENERATORS,
    BiasExperimentConfig,
    BiasReport,
    estimate_min_probability,
    generate_query_and_set,
)
from .independence import IndependenceReport, exhaustive_independence_check
from .occupancy import (
    ConcentrationReport,
    GroupStatsReport,
    OccupancyReport,
    bin_occupancy,
    concentration_spot_check,
    max_group_sizes,
    occupancy_sweep,
    twisted_group_stats,
)
from .stats import binomial_tail_ge, chernoff_upper, wilson_interval, z_for_confidence

__all__ = [
    "GENERATORS",
    "BiasExperimentConfig",
    "BiasReport",
    "ConcentrationReport",
    "GroupStatsReport",
    "IndependenceReport",
    "OccupancyReport",
    "SLACK_FACTOR",
    "baseline_for",
    "bin_occupancy",
    "binomial_tail_ge",
    "chernoff_upper",
    "concentration_spot_check",
    "config_fingerprint",
    "contrast_cells",
    "contrast_record",
    "estimate_min_probability",
    "exhaustive_independence_check",
    "flatness_cells",
    "flatness_record",
    "generate_query_and_set",
    "group_size_record",
    "load_baselines",
    "max_group_sizes",
    "occupancy_sweep",
    "save_baselines",
    "twisted_group_stats",
    "wilson_interval",
    "z_for_confidence",
]
