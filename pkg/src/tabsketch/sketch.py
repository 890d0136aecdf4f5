"""Minwise selection and set-similarity sketches.

Two sketch kinds:

* k-by-minwise: q independently seeded functions, store the minimum of
  each; the Jaccard estimate is the fraction of aligned positions whose
  minima coincide.
* bottom-q: one function, store the q smallest values; the estimate is
  |S(A) and S(B) and (q smallest of their union)| / q, evaluated
  literally on the stored values.

Minima are (hash, key) pairs ordered lexicographically, so ties at
finite precision resolve to the smaller key and every sketch is an
exact deterministic function of (spec, family, seeds, set). Each sketch
carries a fingerprint of those choices; estimator calls between
sketches with different fingerprints raise instead of returning noise.

Sketch objects are immutable. Construction over a large set hashes the
whole set in one vectorized block per function.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import engine
from .errors import AlignmentError, ConfigError, EmptySetError
from .families import Hasher, make_hasher, seed_fingerprint
from .rng import MASK64
from .tabcore import UniverseSpec

_FORMAT = "tabsketch-sketch"
_VERSION = 1


def min_hash_of_set(hasher: Hasher, keys) -> tuple[int, int]:
    """The (hash, key) minimum of a non-empty set under one function."""
    it = iter(keys)
    try:
        first = next(it)
    except StopIteration:
        raise EmptySetError("minimum of an empty set is undefined") from None
    best = (hasher.hash(first), first)
    for key in it:
        cand = (hasher.hash(key), key)
        if cand < best:
            best = cand
    return best


@dataclass(frozen=True)
class KxMinwiseSketch:
    spec: UniverseSpec
    family: str
    q: int
    fingerprint: str
    minima: tuple  # q pairs (hash, key)

    def __post_init__(self):
        if self.q < 1:
            raise ConfigError("q must be >= 1")
        if len(self.minima) != self.q:
            raise ConfigError(f"expected {self.q} minima, got {len(self.minima)}")

    def to_record(self) -> dict:
        return {
            "format": _FORMAT,
            "version": _VERSION,
            "kind": "kx",
            "spec": {
                "char_bits": self.spec.char_bits,
                "char_count": self.spec.char_count,
                "out_bits": self.spec.out_bits,
            },
            "family": self.family,
            "fingerprint": self.fingerprint,
            "q": self.q,
            "values": [[h, k] for h, k in self.minima],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)

    @classmethod
    def from_record(cls, record: dict) -> "KxMinwiseSketch":
        _check_record(record, "kx")
        return cls(
            spec=UniverseSpec(**record["spec"]),
            family=record["family"],
            q=record["q"],
            fingerprint=record["fingerprint"],
            minima=tuple((int(h), int(k)) for h, k in record["values"]),
        )

    @classmethod
    def from_json(cls, blob: str) -> "KxMinwiseSketch":
        return cls.from_record(json.loads(blob))


@dataclass(frozen=True)
class BottomQSketch:
    spec: UniverseSpec
    family: str
    q: int
    fingerprint: str
    values: tuple  # at most q pairs (hash, key), strictly increasing

    def __post_init__(self):
        if self.q < 1:
            raise ConfigError("q must be >= 1")
        if len(self.values) > self.q:
            raise ConfigError("more stored values than q")
        if any(a >= b for a, b in zip(self.values, self.values[1:])):
            raise ConfigError("stored values must be strictly increasing")

    def to_record(self) -> dict:
        return {
            "format": _FORMAT,
            "version": _VERSION,
            "kind": "bottomq",
            "spec": {
                "char_bits": self.spec.char_bits,
                "char_count": self.spec.char_count,
                "out_bits": self.spec.out_bits,
            },
            "family": self.family,
            "fingerprint": self.fingerprint,
            "q": self.q,
            "values": [[h, k] for h, k in self.values],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_record(), sort_keys=True)

    @classmethod
    def from_record(cls, record: dict) -> "BottomQSketch":
        _check_record(record, "bottomq")
        return cls(
            spec=UniverseSpec(**record["spec"]),
            family=record["family"],
            q=record["q"],
            fingerprint=record["fingerprint"],
            values=tuple((int(h), int(k)) for h, k in record["values"]),
        )

    @classmethod
    def from_json(cls, blob: str) -> "BottomQSketch":
        return cls.from_record(json.loads(blob))


def _check_record(record: dict, kind: str):
    if record.get("format") != _FORMAT:
        raise ConfigError(f"not a sketch record: {record.get('format')!r}")
    if record.get("version") != _VERSION:
        raise ConfigError(f"unsupported sketch version {record.get('version')!r}")
    if record.get("kind") != kind:
        raise ConfigError(f"expected a {kind} sketch, got {record.get('kind')!r}")


def kx_sketch(spec: UniverseSpec, family: str, seeds, keys) -> KxMinwiseSketch:
    """Aligned minima of ``keys`` under len(seeds) functions of one family."""
    seeds = [s & MASK64 for s in seeds]
    if not seeds:
        raise ConfigError("need at least one seed")
    keys = sorted(keys)
    if not keys:
        raise EmptySetError("cannot sketch an empty set")
    for key in keys:
        spec.check_key(key)
    block = engine.hash_block(spec, family, np.array(seeds, dtype=np.uint64), keys)
    mins = block.min(axis=0)
    karr = np.array(keys, dtype=np.uint64)
    kmin = np.where(block == mins[None, :], karr[:, None], np.uint64(MASK64)).min(axis=0)
    minima = tuple(zip(mins.tolist(), kmin.tolist()))
    return KxMinwiseSketch(
        spec=spec,
        family=family,
        q=len(seeds),
        fingerprint=seed_fingerprint(spec, family, seeds),
        minima=minima,
    )


def _check_aligned(a, b):
    if a.q != b.q or a.fingerprint != b.fingerprint:
        raise AlignmentError(
            "sketches disagree on q or on the underlying functions "
            f"(q {a.q} vs {b.q}, fingerprint {a.fingerprint} vs {b.fingerprint})"
        )


def kx_jaccard(a: KxMinwiseSketch, b: KxMinwiseSketch) -> float:
    """Fraction of positions whose minima coincide."""
    _check_aligned(a, b)
    matches = sum(x == y for x, y in zip(a.minima, b.minima))
    return matches / a.q


def kx_merge(a: KxMinwiseSketch, b: KxMinwiseSketch) -> KxMinwiseSketch:
    """Sketch of the union of the two underlying sets."""
    _check_aligned(a, b)
    return KxMinwiseSketch(
        spec=a.spec,
        family=a.family,
        q=a.q,
        fingerprint=a.fingerprint,
        minima=tuple(min(x, y) for x, y in zip(a.minima, b.minima)),
    )


def bottomq_sketch(hasher: Hasher, keys, q: int) -> BottomQSketch:
    """The q smallest (hash, key) pairs of ``keys`` under one function."""
    if q < 1:
        raise ConfigError("q must be >= 1")
    pairs = sorted((hasher.hash(k), k) for k in set(keys))
    return BottomQSketch(
        spec=hasher.spec,
        family=hasher.family,
        q=q,
        fingerprint=seed_fingerprint(hasher.spec, hasher.family, [hasher.seed]),
        values=tuple(pairs[:q]),
    )


def bottomq_merge(a: BottomQSketch, b: BottomQSketch) -> BottomQSketch:
    """Sketch of the union: q smallest of the combined stored values."""
    _check_aligned(a, b)
    merged = sorted(set(a.values) | set(b.values))
    return BottomQSketch(
        spec=a.spec,
        family=a.family,
        q=a.q,
        fingerprint=a.fingerprint,
        values=tuple(merged[: a.q]),
    )


def bottomq_jaccard(a: BottomQSketch, b: BottomQSketch) -> float:
    """|S(A) and S(B) and (q smallest of S(A) or S(B))| / q."""
    _check_aligned(a, b)
    sa, sb = set(a.values), set(b.values)
    smallest = sorted(sa | sb)[: a.q]
    return sum(1 for v in smallest if v in sa and v in sb) / a.q
