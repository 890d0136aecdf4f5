"""Monte-Carlo estimation of minwise bias.

One experiment fixes a query key q and a set S with q outside S, then
measures across independently seeded hash functions how often q's hash
beats the set minimum. A perfectly uniform minwise family gives
probability exactly 1/(|S|+1); the implied bias rescales the estimate
so that 0 means uniform: implied = (n+1) * p - 1.

Ties are resolved by the documented total order (hash, then key), and
the raw strict/non-strict counts are reported alongside so both sides
of the definition stay visible.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .. import engine
from ..errors import ConfigError
from ..families import parse_family
from ..rng import MASK64, SETGEN_SALT, stream_value
from ..tabcore import UniverseSpec
from .stats import wilson_interval

GENERATORS = ("random-distinct", "fixed-tail-cube", "dense-interval")

# below this many expected hits the normal approximation behind the
# interval is shaky; reports flag it instead of refusing
MIN_EXPECTED_HITS = 20.0


@dataclass(frozen=True)
class BiasExperimentConfig:
    spec: UniverseSpec
    family: str
    n: int
    set_generator: str
    trials: int
    base_seed: int
    confidence: float = 0.99

    def __post_init__(self):
        parse_family(self.family)
        if self.set_generator not in GENERATORS:
            raise ConfigError(
                f"unknown set generator {self.set_generator!r}; expected one of {GENERATORS}"
            )
        if self.n < 1:
            raise ConfigError("set size n must be >= 1")
        if self.n + 1 > self.spec.universe_size:
            raise ConfigError("universe too small for n keys plus a query")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not 0.0 < self.confidence < 1.0:
            raise ConfigError("confidence must be in (0, 1)")

    def to_record(self) -> dict:
        return {
            "spec": {
                "char_bits": self.spec.char_bits,
                "char_count": self.spec.char_count,
                "out_bits": self.spec.out_bits,
            },
            "family": self.family,
            "n": self.n,
            "set_generator": self.set_generator,
            "trials": self.trials,
            "base_seed": self.base_seed,
            "confidence": self.confidence,
        }


@dataclass(frozen=True)
class BiasReport:
    config: BiasExperimentConfig
    query: int
    set_digest: str
    hit_count: int
    hit_count_strict: int
    hit_count_leq: int
    tie_count: int
    trials: int
    point_estimate: float
    wilson_lo: float
    wilson_hi: float
    implied_bias_lo: float
    implied_bias_hi: float
    low_trials_warning: bool

    @property
    def implied_bias(self) -> float:
        return (self.config.n + 1) * self.point_estimate - 1.0

    def to_record(self) -> dict:
        return {
            "config": self.config.to_record(),
            "query": self.query,
            "set_digest": self.set_digest,
            "hit_count": self.hit_count,
            "hit_count_strict": self.hit_count_strict,
            "hit_count_leq": self.hit_count_leq,
            "tie_count": self.tie_count,
            "trials": self.trials,
            "point_estimate": self.point_estimate,
            "wilson_lo": self.wilson_lo,
            "wilson_hi": self.wilson_hi,
            "implied_bias": self.implied_bias,
            "implied_bias_lo": self.implied_bias_lo,
            "implied_bias_hi": self.implied_bias_hi,
            "low_trials_warning": self.low_trials_warning,
        }


def _generator_seed(base_seed: int, n: int) -> int:
    # same base_seed and n give the same set for every family, so
    # cross-family comparisons run on identical inputs
    return stream_value((base_seed & MASK64) ^ SETGEN_SALT, n)


def _draw_distinct(spec: UniverseSpec, seed: int, count: int, start: int = 0):
    mask = spec.universe_size - 1
    out: list[int] = []
    seen: set[int] = set()
    pos = start
    while len(out) < count:
        k = stream_value(seed, pos) & mask
        pos += 1
        if k not in seen:
            seen.add(k)
            out.append(k)
    return out, pos


def _near_square_factors(n: int) -> tuple[int, int]:
    a = 1
    for d in range(1, math.isqrt(n) + 1):
        if n % d == 0:
            a = d
    return a, n // a


def generate_query_and_set(
    spec: UniverseSpec, generator: str, n: int, base_seed: int
) -> tuple[int, tuple[int, ...]]:
    """Deterministic (query, set) pair with the query outside the set."""
    if generator not in GENERATORS:
        raise ConfigError(f"unknown set generator {generator!r}")
    if n + 1 > spec.universe_size:
        raise ConfigError("universe too small for n keys plus a query")
    seed = _generator_seed(base_seed, n)

    if generator == "random-distinct":
        drawn, _ = _draw_distinct(spec, seed, n + 1)
        return drawn[0], tuple(sorted(drawn[1:]))

    if generator == "dense-interval":
        base = stream_value(seed, 0) % (spec.universe_size - n)
        return base + n, tuple(range(base, base + n))

    # fixed-tail-cube: an a-by-b grid in the two low character positions
    # (a*b = n, near square), all higher positions frozen; the query
    # takes fresh characters in both grid positions and the same tail
    if spec.char_count < 2:
        raise ConfigError("fixed-tail-cube needs at least 2 characters per key")
    a, b = _near_square_factors(n)
    sigma = spec.alphabet_size
    if a + 1 > sigma or b + 1 > sigma:
        raise ConfigError(f"cube {a}x{b} plus query does not fit alphabet of {sigma}")
    char_spec = UniverseSpec(char_bits=spec.char_bits, char_count=1, out_bits=1)
    lo_chars, pos = _draw_distinct(char_spec, seed, a + 1)
    hi_chars, pos = _draw_distinct(char_spec, seed, b + 1, start=pos)
    fixed = [
        stream_value(seed, pos + i) & spec.char_mask
        for i in range(spec.char_count - 2)
    ]
    tail = 0
    for i, ch in enumerate(fixed):
        tail |= ch << ((i + 2) * spec.char_bits)
    shift = spec.char_bits
    keys = tuple(
        sorted(tail | (c1 << shift) | c0 for c0 in lo_chars[:a] for c1 in hi_chars[:b])
    )
    query = tail | (hi_chars[b] << shift) | lo_chars[a]
    return query, keys


def estimate_min_probability(config: BiasExperimentConfig, block: int = 0) -> BiasReport:
    """Run the experiment described by ``config`` and report the estimate."""
    query, keys = generate_query_and_set(
        config.spec, config.set_generator, config.n, config.base_seed
    )
    if query in keys:
        raise ConfigError("generator produced a query inside the set")
    if len(keys) != config.n:
        raise ConfigError("generator produced the wrong set size")
    block = block or engine.DEFAULT_BLOCK
    win = strict = non_strict = 0
    done = 0
    while done < config.trials:
        count = min(block, config.trials - done)
        seeds = engine.trial_seeds(config.base_seed, done, count)
        w, s, ns = engine.min_win_counts(config.spec, config.family, seeds, keys, query)
        win += w
        strict += s
        non_strict += ns
        done += count
    lo, hi = wilson_interval(win, config.trials, config.confidence)
    n1 = config.n + 1
    digest = hashlib.sha256(
        (",".join(str(k) for k in keys)).encode("ascii")
    ).hexdigest()[:16]
    return BiasReport(
        config=config,
        query=query,
        set_digest=digest,
        hit_count=win,
        hit_count_strict=strict,
        hit_count_leq=non_strict,
        tie_count=non_strict - strict,
        trials=config.trials,
        point_estimate=win / config.trials,
        wilson_lo=lo,
        wilson_hi=hi,
        implied_bias_lo=n1 * lo - 1.0,
        implied_bias_hi=n1 * hi - 1.0,
        low_trials_warning=config.trials / n1 < MIN_EXPECTED_HITS,
    )
