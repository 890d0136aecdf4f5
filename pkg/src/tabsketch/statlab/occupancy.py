"""Group-size, bin-load, and concentration measurements.

Covers the structural side of the lab: how large twisted groups get,
how evenly keys spread over power-of-two bins (for the twisted family,
bins of the internal hash within each group), and how concentrated the
count of small-hash keys is compared to the ideal binomial.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .. import engine
from ..errors import ConfigError
from ..families import Hasher, parse_family
from ..tabcore import (
    TwistedTables,
    UniverseSpec,
    twisted_group_of,
    twisted_internal_hash,
)
from .bias import GENERATORS, generate_query_and_set
from .stats import binomial_tail_ge, chernoff_upper


@dataclass(frozen=True)
class GroupStatsReport:
    n: int
    alphabet_size: int
    sizes: dict  # group id -> member count, non-empty groups only
    max_group_size: int

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "alphabet_size": self.alphabet_size,
            "sizes": {str(g): c for g, c in sorted(self.sizes.items())},
            "max_group_size": self.max_group_size,
            "group_count": len(self.sizes),
        }


def twisted_group_stats(tables: TwistedTables, keys) -> GroupStatsReport:
    """Exact histogram of twisted-group membership for ``keys``."""
    sizes = Counter(twisted_group_of(tables, k) for k in keys)
    return GroupStatsReport(
        n=sum(sizes.values()),
        alphabet_size=tables.spec.alphabet_size,
        sizes=dict(sizes),
        max_group_size=max(sizes.values(), default=0),
    )


@dataclass(frozen=True)
class OccupancyReport:
    m: int
    n: int
    max_load: int
    loads: dict  # bin -> count (single run) or empty for sweeps
    per_group_max: dict | None
    trials: int
    threshold: int | None
    exceed_fraction: float | None

    def to_record(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "max_load": self.max_load,
            "loads": {str(b): c for b, c in sorted(self.loads.items())},
            "per_group_max": (
                {str(g): c for g, c in sorted(self.per_group_max.items())}
                if self.per_group_max is not None
                else None
            ),
            "trials": self.trials,
            "threshold": self.threshold,
            "exceed_fraction": self.exceed_fraction,
        }


def _bin_shift(out_bits: int, m: int) -> int:
    if m < 1 or m & (m - 1):
        raise ConfigError(f"bin count must be a power of two, got {m}")
    log_m = m.bit_length() - 1
    if log_m > out_bits:
        raise ConfigError(f"{m} bins need {log_m} output bits, have {out_bits}")
    return out_bits - log_m


def bin_occupancy(hashfn, keys, m: int) -> OccupancyReport:
    """Per-bin loads using the top log2(m) hash bits.

    ``hashfn`` is either a :class:`Hasher` (loads of the full hash) or
    a :class:`TwistedTables` (loads of the internal hash, computed per
    twisted group, with the report carrying each group's own maximum).
    """
    keys = list(keys)
    if isinstance(hashfn, TwistedTables):
        shift = _bin_shift(hashfn.spec.out_bits, m)
        per_group: dict[int, Counter] = {}
        for k in keys:
            g = twisted_group_of(hashfn, k)
            per_group.setdefault(g, Counter())[twisted_internal_hash(hashfn, k) >> shift] += 1
        loads = Counter()
        for bins in per_group.values():
            loads.update(bins)
        group_max = {g: max(bins.values()) for g, bins in per_group.items()}
        overall = max(group_max.values(), default=0)
        return OccupancyReport(
            m=m, n=len(keys), max_load=overall, loads=dict(loads),
            per_group_max=group_max, trials=1, threshold=None, exceed_fraction=None,
        )
    if not isinstance(hashfn, Hasher):
        raise ConfigError("bin_occupancy needs a Hasher or TwistedTables")
    shift = _bin_shift(hashfn.spec.out_bits, m)
    loads = Counter(hashfn.hash(k) >> shift for k in keys)
    return OccupancyReport(
        m=m, n=len(keys), max_load=max(loads.values(), default=0), loads=dict(loads),
        per_group_max=None, trials=1, threshold=None, exceed_fraction=None,
    )


def max_group_sizes(
    spec: UniverseSpec, n: int, trials: int, base_seed: int,
    set_generator: str = "random-distinct",
) -> list[int]:
    """Max twisted-group size for one fixed set under ``trials`` seeds."""
    if set_generator not in GENERATORS:
        raise ConfigError(f"unknown set generator {set_generator!r}")
    _, keys = generate_query_and_set(spec, set_generator, n, base_seed)
    out = []
    for seed in engine.trial_seeds(base_seed, 0, trials):
        tables = TwistedTables(spec, int(seed))
        out.append(twisted_group_stats(tables, keys).max_group_size)
    return out


def occupancy_sweep(
    spec: UniverseSpec, family: str, n: int, m: int, trials: int, base_seed: int,
    threshold: int, set_generator: str = "random-distinct",
) -> OccupancyReport:
    """Max bin load across many seeds for one fixed set.

    For the twisted family the load is the per-group internal-hash load,
    i.e. the quantity asserted small by the lab's structural checks.
    """
    parse_family(family)
    _, keys = generate_query_and_set(spec, set_generator, n, base_seed)
    shift = _bin_shift(spec.out_bits, m)
    worst = 0
    exceed = 0
    for seed in engine.trial_seeds(base_seed, 0, trials):
        if family == "twisted":
            report = bin_occupancy(TwistedTables(spec, int(seed)), keys, m)
            load = report.max_load
        else:
            report = bin_occupancy(Hasher(spec, family, int(seed)), keys, m)
            load = report.max_load
        worst = max(worst, load)
        if load > threshold:
            exceed += 1
    return OccupancyReport(
        m=m, n=n, max_load=worst, loads={}, per_group_max=None,
        trials=trials, threshold=threshold, exceed_fraction=exceed / trials,
    )


@dataclass(frozen=True)
class ConcentrationReport:
    family: str
    n: int
    threshold: int
    trials: int
    mu: float
    deltas: tuple
    upper_rates: tuple  # empirical Pr[V >= (1+d) mu]
    lower_rates: tuple  # empirical Pr[V <= (1-d) mu]
    chernoff_reference: tuple
    binomial_upper: tuple  # ideal-family Pr[V >= ceil((1+d) mu)]
    outside_small_mean_regime: bool  # concentration only promised for mu < sqrt(alphabet)

    def to_record(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "threshold": self.threshold,
            "trials": self.trials,
            "mu": self.mu,
            "deltas": list(self.deltas),
            "upper_rates": list(self.upper_rates),
            "lower_rates": list(self.lower_rates),
            "chernoff_reference": list(self.chernoff_reference),
            "binomial_upper": list(self.binomial_upper),
            "outside_small_mean_regime": self.outside_small_mean_regime,
        }


def concentration_spot_check(
    spec: UniverseSpec, family: str, n: int, threshold: int, trials: int,
    base_seed: int, deltas=(0.5, 1.0), set_generator: str = "random-distinct",
) -> ConcentrationReport:
    """Distribution of V = #{x in S : h(x) < threshold} across seeds.

    Compares empirical exceedance rates against the multiplicative
    Chernoff reference curve and the exact binomial tail an ideal
    family would give. Indicator thresholds are the only value shape
    supported; mu = n * threshold / 2**out_bits.
    """
    if not 0 <= threshold <= (1 << spec.out_bits):
        raise ConfigError("threshold must lie in [0, 2**out_bits]")
    _, keys = generate_query_and_set(spec, set_generator, n, base_seed)
    counts = []
    done = 0
    while done < trials:
        count = min(engine.DEFAULT_BLOCK, trials - done)
        seeds = engine.trial_seeds(base_seed, done, count)
        block = engine.hash_block(spec, family, seeds, list(keys))
        counts.append((block < np.uint64(threshold)).sum(axis=0))
        done += count
    values = np.concatenate(counts)
    p = threshold / (1 << spec.out_bits)
    mu = n * p
    upper, lower, chern, binom = [], [], [], []
    for d in deltas:
        if d < 0:
            raise ConfigError("deltas must be >= 0")
        upper.append(float((values >= (1 + d) * mu).mean()))
        lower.append(float((values <= (1 - d) * mu).mean()))
        chern.append(chernoff_upper(mu, d))
        binom.append(binomial_tail_ge(n, p, math.ceil((1 + d) * mu)))
    return ConcentrationReport(
        family=family,
        n=n,
        threshold=threshold,
        trials=trials,
        mu=mu,
        deltas=tuple(deltas),
        upper_rates=tuple(upper),
        lower_rates=tuple(lower),
        chernoff_reference=tuple(chern),
        binomial_upper=tuple(binom),
        outside_small_mean_regime=mu >= math.sqrt(spec.alphabet_size),
    )
