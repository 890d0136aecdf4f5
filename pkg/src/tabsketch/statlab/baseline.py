"""Calibrated constants for the asymptotic checks.

The structural claims the lab verifies come with unspecified constant
factors. Those constants are measured once on reference configurations
by scripts/calibrate_baselines.py, recorded in data/baselines.json
keyed by a fingerprint of the configuration, and regression-tested
with 2x slack. Checks against a configuration with no recorded entry
fail loudly instead of inventing a constant.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

from ..errors import ConfigError
from ..tabcore import UniverseSpec
from .bias import BiasExperimentConfig

SLACK_FACTOR = 2.0

# the reference configurations the committed baselines were measured on
CONTRAST_SEED = 2026
FLATNESS_SEED = 2027
GROUPS_SEED = 2028
REFERENCE_SPEC = UniverseSpec(char_bits=8, char_count=2)


def contrast_cells(trials: int = 10**6) -> list[BiasExperimentConfig]:
    """Structured-set cells contrasting twisted against simple at small n."""
    return [
        BiasExperimentConfig(
            spec=REFERENCE_SPEC,
            family=family,
            n=n,
            set_generator="fixed-tail-cube",
            trials=trials,
            base_seed=CONTRAST_SEED,
        )
        for family in ("twisted", "simple")
        for n in (2, 4, 8)
    ]


def flatness_cells(trials: int = 10**6) -> list[BiasExperimentConfig]:
    """Twisted cells across a set-size sweep, bias should not move."""
    return [
        BiasExperimentConfig(
            spec=REFERENCE_SPEC,
            family="twisted",
            n=n,
            set_generator="random-distinct",
            trials=trials,
            base_seed=FLATNESS_SEED,
        )
        for n in (4, 16, 64, 256)
    ]


def contrast_record(trials: int = 10**6) -> dict:
    return {
        "check": "headline-contrast",
        "cells": [cell.to_record() for cell in contrast_cells(trials)],
    }


def flatness_record(trials: int = 10**6) -> dict:
    return {
        "check": "flatness",
        "cells": [cell.to_record() for cell in flatness_cells(trials)],
    }


def group_size_record(n: int = 4096, trials: int = 1000) -> dict:
    return {
        "check": "group-size",
        "spec": {
            "char_bits": REFERENCE_SPEC.char_bits,
            "char_count": REFERENCE_SPEC.char_count,
            "out_bits": REFERENCE_SPEC.out_bits,
        },
        "n": n,
        "set_generator": "random-distinct",
        "trials": trials,
        "base_seed": GROUPS_SEED,
    }


def config_fingerprint(record: dict) -> str:
    """Stable digest of a JSON-serializable configuration record."""
    blob = json.dumps(record, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


def load_baselines(path=None) -> dict:
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    ref = resources.files("tabsketch").joinpath("data/baselines.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def baseline_for(record: dict, baselines: dict | None = None) -> dict:
    """Recorded constants for a configuration; error if never calibrated."""
    if baselines is None:
        baselines = load_baselines()
    fp = config_fingerprint(record)
    entry = baselines.get("entries", {}).get(fp)
    if entry is None:
        raise ConfigError(
            f"no calibrated baseline for fingerprint {fp}; "
            "run scripts/calibrate_baselines.py for this configuration"
        )
    return entry["constants"]


def save_baselines(baselines: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(baselines, fh, indent=2, sort_keys=True)
        fh.write("\n")
