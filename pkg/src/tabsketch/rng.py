"""Deterministic random streams used everywhere in this package.

All randomness is derived from a counter-mode construction over the
SplitMix64 finalizer: value at position ``pos`` of the stream with a
given ``seed`` is

    mix64((seed + (pos + 1) * GOLDEN) mod 2**64)

where GOLDEN is the odd 64-bit golden-ratio constant. Two properties
matter here and are relied on by callers:

* any position can be computed without generating earlier positions,
  so table fills vectorize and parallel workers never share state;
* the mapping is fixed by this module alone, so a reimplementation in
  another language can reproduce every table and every test vector
  bit for bit.

The per-purpose salt constants below keep unrelated streams (table
fills, trial seeds, set generation, ...) independent even when the
caller passes the same base seed to each of them. They are ASCII tags
packed big-endian into 64 bits; the text is only mnemonic.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15

# b"SIMPLE_T", b"SHIFTS_!", b"TWISTER!", b"POLYCOEF", ...
SIMPLE_FILL_SALT = 0x53494D504C455F54
SHIFT_FILL_SALT = 0x5348494654535F21
TWIST_FILL_SALT = 0x5457495354455221
POLY_FILL_SALT = 0x504F4C59434F4546
TRIAL_SALT = 0x545249414C53445F
ORACLE_SALT = 0x46554C4C52414E44
SETGEN_SALT = 0x53455447454E5F21
FOLD_SEED = 0x5348494E474C4521


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a fixed bijection on 64-bit words."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_value(seed: int, pos: int) -> int:
    """Value at ``pos`` (0-based) of the stream keyed by ``seed``.

    Equals the (pos+1)-th output of a classic sequential SplitMix64
    seeded with ``seed``.
    """
    return mix64((seed + (pos + 1) * GOLDEN) & MASK64)


def stream_block(seed: int, start: int, count: int) -> np.ndarray:
    """Positions ``start .. start+count-1`` of the stream, as uint64."""
    pos = np.arange(start, start + count, dtype=np.uint64)
    return mix64_vec(
        np.uint64(seed & MASK64) + (pos + np.uint64(1)) * np.uint64(GOLDEN)
    )


def mix64_vec(z: np.ndarray) -> np.ndarray:
    """Vectorized :func:`mix64` over a uint64 array (wrapping mults)."""
    z = z.astype(np.uint64, copy=True)
    z ^= z >> np.uint64(30)
    z *= np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z *= np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return z


def derive_seed(base_seed: int, salt: int, index: int = 0) -> int:
    """Stable sub-seed: position ``index`` of the stream ``base_seed ^ salt``.

    Used to hand each trial, worker, or table its own independent seed
    from one user-facing base seed.
    """
    return stream_value((base_seed & MASK64) ^ salt, index)
