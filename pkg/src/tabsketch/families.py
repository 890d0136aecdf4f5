"""Uniform access to the hash families by name.

Family strings: ``simple``, ``twisted``, ``random``, ``poly:<k>``.
``random`` is the idealized stand-in that assigns every key a fresh
uniform value straight from the seed's counter stream; it exists so the
lab has a zero-bias reference, not for production hashing.
"""

from __future__ import annotations

import hashlib
import json

from .errors import ConfigError
from .rng import MASK64, ORACLE_SALT, stream_value
from .tabcore import (
    UniverseSpec,
    fill_poly,
    fill_simple,
    fill_twisted,
    poly_hash,
    simple_hash,
    twisted_hash,
)

FAMILY_KINDS = ("simple", "twisted", "random", "poly")


def parse_family(family: str) -> tuple[str, int | None]:
    """Validate a family string, returning (kind, poly degree or None)."""
    if family in ("simple", "twisted", "random"):
        return family, None
    if family.startswith("poly:"):
        try:
            k = int(family[5:])
        except ValueError:
            k = 0
        if k < 2:
            raise ConfigError(f"polynomial family needs an integer k >= 2: {family!r}")
        return "poly", k
    raise ConfigError(
        f"unknown family {family!r}; expected simple, twisted, random, or poly:<k>"
    )


class Hasher:
    """One sampled hash function of a named family.

    Immutable; ``hash`` may be called concurrently.
    """

    def __init__(self, spec: UniverseSpec, family: str, seed: int):
        kind, k = parse_family(family)
        self.spec = spec
        self.family = family
        self.seed = seed & MASK64
        if kind == "simple":
            tables = fill_simple(spec, seed)
            self._fn = lambda key: simple_hash(tables, key)
        elif kind == "twisted":
            tables = fill_twisted(spec, seed)
            self._fn = lambda key: twisted_hash(tables, key)
        elif kind == "poly":
            params = fill_poly(spec, seed, k)
            self._fn = lambda key: poly_hash(params, key)
        else:
            mask = spec.out_mask
            s = self.seed ^ ORACLE_SALT
            size = spec.universe_size

            def _random(key, _s=s, _mask=mask, _size=size):
                if not 0 <= key < _size:
                    spec.check_key(key)
                return stream_value(_s, key) & _mask

            self._fn = _random

    def hash(self, key: int) -> int:
        return self._fn(key)

    def __call__(self, key: int) -> int:
        return self._fn(key)


def make_hasher(spec: UniverseSpec, family: str, seed: int) -> Hasher:
    return Hasher(spec, family, seed)


def seed_fingerprint(spec: UniverseSpec, family: str, seeds) -> str:
    """Short stable digest identifying (spec, family, seed list).

    Sketches carry this so comparisons between sketches built from
    different functions fail loudly instead of returning noise.
    """
    parse_family(family)
    blob = json.dumps(
        {
            "spec": [spec.char_bits, spec.char_count, spec.out_bits],
            "family": family,
            "seeds": [s & MASK64 for s in seeds],
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode("ascii")).hexdigest()[:16]
