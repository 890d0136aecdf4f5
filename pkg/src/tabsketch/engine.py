"""Batch evaluation of the hash families across many seeds at once.

The lab estimates probabilities over the random choice of the hash
function, which means instantiating millions of independently seeded
functions. Doing that through tabcore's scalar path is hopeless, so
this module re-derives the same fills and hash loops over numpy uint64
blocks. Nothing here is public API; every path is property-tested for
exact agreement with the scalar definitions.

Block layout: for B seeds, a table family is an array of shape
(rows, alphabet, B), so one character lookup across all B functions is
a contiguous row gather. All arithmetic is uint64 with wraparound,
matching the scalar generator by construction.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .families import parse_family
from .rng import (
    GOLDEN,
    MASK64,
    ORACLE_SALT,
    POLY_FILL_SALT,
    SHIFT_FILL_SALT,
    SIMPLE_FILL_SALT,
    TRIAL_SALT,
    TWIST_FILL_SALT,
    mix64_vec,
    stream_block,
)
from .tabcore import MERSENNE61, UniverseSpec, _poly_coefficients

U64 = np.uint64
M61 = U64(MERSENNE61)
MASK32 = U64(0xFFFFFFFF)
MASK29 = U64((1 << 29) - 1)

DEFAULT_BLOCK = 16384


def trial_seeds(base_seed: int, start: int, count: int) -> np.ndarray:
    """Seeds for trials start..start+count-1 of one experiment."""
    return stream_block((base_seed & MASK64) ^ TRIAL_SALT, start, count)


def _fill_block(seeds: np.ndarray, salt: int, rows: int, sigma: int, mask: int):
    # same stream positions as tabcore._fill, one column per seed
    pos = np.arange(rows * sigma, dtype=U64)
    base = (seeds ^ U64(salt))[None, :] + (pos[:, None] + U64(1)) * U64(GOLDEN)
    vals = mix64_vec(base)
    vals &= U64(mask)
    return vals.reshape(rows, sigma, len(seeds))


def _key_chars(spec: UniverseSpec, key: int) -> list[int]:
    return [(key >> (i * spec.char_bits)) & spec.char_mask for i in range(spec.char_count)]


def simple_hash_block(spec: UniverseSpec, seeds: np.ndarray, keys) -> np.ndarray:
    tables = _fill_block(
        seeds, SIMPLE_FILL_SALT, spec.char_count, spec.alphabet_size, spec.out_mask
    )
    out = np.empty((len(keys), len(seeds)), dtype=U64)
    for r, key in enumerate(keys):
        chars = _key_chars(spec, key)
        acc = tables[0, chars[0], :].copy()
        for i in range(1, spec.char_count):
            acc ^= tables[i, chars[i], :]
        out[r] = acc
    return out


def twisted_hash_block(spec: UniverseSpec, seeds: np.ndarray, keys) -> np.ndarray:
    if spec.char_count < 2:
        raise ConfigError("twisting requires at least 2 characters per key")
    twister = _fill_block(
        seeds, TWIST_FILL_SALT, spec.char_count - 1, spec.alphabet_size, spec.char_mask
    )
    shifts = _fill_block(
        seeds, SHIFT_FILL_SALT, spec.char_count, spec.alphabet_size, spec.out_mask
    )
    cols = np.arange(len(seeds))
    head_table = shifts[spec.char_count - 1]
    out = np.empty((len(keys), len(seeds)), dtype=U64)
    for r, key in enumerate(keys):
        chars = _key_chars(spec, key)
        t = twister[0, chars[0], :].copy()
        internal = shifts[0, chars[0], :].copy()
        for i in range(1, spec.char_count - 1):
            t ^= twister[i, chars[i], :]
            internal ^= shifts[i, chars[i], :]
        head = U64(chars[-1]) ^ t
        out[r] = internal ^ head_table[head, cols]
    return out


def random_hash_block(spec: UniverseSpec, seeds: np.ndarray, keys) -> np.ndarray:
    pos = np.array(keys, dtype=U64)
    base = (seeds ^ U64(ORACLE_SALT))[None, :] + (pos[:, None] + U64(1)) * U64(GOLDEN)
    vals = mix64_vec(base)
    vals &= U64(spec.out_mask)
    return vals


def mulmod61(a, b):
    """(a * b) mod 2**61 - 1 for uint64 operands below 2**61.

    Splits into 32-bit halves and folds with 2**61 = 1 and 2**64 = 8
    modulo the prime; every intermediate fits in uint64.
    """
    a_hi, a_lo = a >> U64(32), a & MASK32
    b_hi, b_lo = b >> U64(32), b & MASK32
    hi = a_hi * b_hi
    mid = a_hi * b_lo + a_lo * b_hi
    lo = a_lo * b_lo
    acc = (
        (hi << U64(3))
        + ((mid & MASK29) << U64(32))
        + (mid >> U64(29))
        + (lo & M61)
        + (lo >> U64(61))
    )
    acc = (acc & M61) + (acc >> U64(61))
    return np.where(acc >= M61, acc - M61, acc)


def _poly_coef_block(seeds: np.ndarray, k: int) -> np.ndarray:
    pos = np.arange(k, dtype=U64)
    base = (seeds ^ U64(POLY_FILL_SALT))[None, :] + (pos[:, None] + U64(1)) * U64(GOLDEN)
    vals = mix64_vec(base)
    vals &= M61
    bad = vals == M61  # the one rejected value; redo those scalarly
    if bad.any():
        for j, t in zip(*np.nonzero(bad)):
            vals[j, t] = _poly_coefficients(int(seeds[t]), k)[j]
    return vals


def poly_hash_block(spec: UniverseSpec, seeds: np.ndarray, keys, k: int) -> np.ndarray:
    if spec.key_bits > 60:
        raise ConfigError("polynomial family needs keys below 2**61 - 1")
    coef = _poly_coef_block(seeds, k)
    out = np.empty((len(keys), len(seeds)), dtype=U64)
    for r, key in enumerate(keys):
        acc = coef[k - 1].copy()
        kv = U64(key)
        for j in range(k - 2, -1, -1):
            acc = mulmod61(acc, kv)
            acc += coef[j]
            acc = np.where(acc >= M61, acc - M61, acc)
        out[r] = acc & U64(spec.out_mask)
    return out


def hash_block(spec: UniverseSpec, family: str, seeds: np.ndarray, keys) -> np.ndarray:
    """(len(keys), len(seeds)) hashes; column t uses the function seeded seeds[t]."""
    kind, k = parse_family(family)
    if kind == "simple":
        return simple_hash_block(spec, seeds, keys)
    if kind == "twisted":
        return twisted_hash_block(spec, seeds, keys)
    if kind == "poly":
        return poly_hash_block(spec, seeds, keys, k)
    return random_hash_block(spec, seeds, keys)


def min_win_counts(
    spec: UniverseSpec, family: str, seeds: np.ndarray, set_keys, query: int
) -> tuple[int, int, int]:
    """Count trials where the query beats the set minimum.

    Returns (wins, strict, non_strict): wins break hash ties by the
    smaller key, strict counts h(q) < min h(S) on raw hashes, and
    non_strict counts h(q) <= min h(S).
    """
    keys = list(set_keys)
    block = hash_block(spec, family, seeds, keys + [query])
    hs, hq = block[:-1], block[-1]
    mins = hs.min(axis=0)
    skeys = np.array(keys, dtype=U64)
    # smallest key among the rows attaining the minimum hash
    kmin = np.where(hs == mins[None, :], skeys[:, None], U64(MASK64)).min(axis=0)
    strict = hq < mins
    tie = hq == mins
    win = strict | (tie & (U64(query) < kmin))
    non_strict = strict | tie
    return int(win.sum()), int(strict.sum()), int(non_strict.sum())
