"""Core hash families over fixed-width integer keys.

A key is viewed as ``c`` characters of ``char_bits`` bits each, least
significant character first. Three families are provided:

* simple tabulation: one lookup table per character position, the hash
  is the XOR of the selected entries;
* twisted tabulation: like simple tabulation, except the final (most
  significant) character is XORed with a small hash of the other
  characters before its table lookup, so the last lookup acts as a
  shared shift for every key in the same "twisted group";
* a polynomial baseline of configurable independence degree over the
  Mersenne prime 2**61 - 1.

All table contents derive deterministically from a 64-bit seed through
the counter streams in :mod:`tabsketch.rng`; identical (spec, seed)
reproduce identical functions on any platform. Table objects are
immutable after construction and safe to hash from many threads.

The twisted layout matches a widely circulated 32-bit C routine that
packs shift and twister entries into one 64-bit table; see
``data/golden_vectors_seed1.txt`` for the bit-exact reference pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError, KeyRangeError
from .rng import (
    MASK64,
    POLY_FILL_SALT,
    SHIFT_FILL_SALT,
    SIMPLE_FILL_SALT,
    TWIST_FILL_SALT,
    stream_value,
)

MERSENNE61 = (1 << 61) - 1


@dataclass(frozen=True)
class UniverseSpec:
    """Shape of the key universe and the hash output.

    ``char_bits`` bits per character, ``char_count`` characters per key
    (so keys live in [0, 2**(char_bits*char_count))), and ``out_bits``
    bits of hash output. ``out_bits`` defaults to the key width.
    """

    char_bits: int
    char_count: int
    out_bits: int = 0

    def __post_init__(self):
        if self.char_bits < 1:
            raise ConfigError(f"char_bits must be >= 1, got {self.char_bits}")
        if self.char_count < 1:
            raise ConfigError(f"char_count must be >= 1, got {self.char_count}")
        if self.char_bits * self.char_count > 64:
            raise ConfigError(
                f"keys must fit in 64 bits, got {self.char_bits}x{self.char_count}"
            )
        if self.out_bits == 0:
            object.__setattr__(self, "out_bits", self.char_bits * self.char_count)
        if not 1 <= self.out_bits <= 64:
            raise ConfigError(f"out_bits must be in [1, 64], got {self.out_bits}")

    @property
    def alphabet_size(self) -> int:
        return 1 << self.char_bits

    @property
    def key_bits(self) -> int:
        return self.char_bits * self.char_count

    @property
    def universe_size(self) -> int:
        return 1 << self.key_bits

    @property
    def char_mask(self) -> int:
        return self.alphabet_size - 1

    @property
    def out_mask(self) -> int:
        return (1 << self.out_bits) - 1

    def check_key(self, key: int) -> int:
        if not 0 <= key < self.universe_size:
            raise KeyRangeError(
                f"key {key:#x} outside universe of {self.key_bits}-bit keys"
            )
        return key


def split_key(key: int, spec: UniverseSpec) -> tuple[int, ...]:
    """Decompose ``key`` into characters, least significant first."""
    spec.check_key(key)
    mask = spec.char_mask
    return tuple(
        (key >> (i * spec.char_bits)) & mask for i in range(spec.char_count)
    )


def join_key(chars: tuple[int, ...], spec: UniverseSpec) -> int:
    """Inverse of :func:`split_key`."""
    if len(chars) != spec.char_count:
        raise ConfigError(f"expected {spec.char_count} characters, got {len(chars)}")
    key = 0
    for i, ch in enumerate(chars):
        if not 0 <= ch < spec.alphabet_size:
            raise KeyRangeError(f"character {ch:#x} outside alphabet")
        key |= ch << (i * spec.char_bits)
    return key


def _fill(spec: UniverseSpec, seed: int, salt: int, rows: int, mask: int):
    # entry (i, j) sits at stream position i*alphabet_size + j, so the
    # fill is order-independent and any entry can be recomputed alone
    s = (seed & MASK64) ^ salt
    sigma = spec.alphabet_size
    return tuple(
        tuple(stream_value(s, i * sigma + j) & mask for j in range(sigma))
        for i in range(rows)
    )


def _check_tables(tables, rows: int, cols: int, bound: int, what: str):
    tables = tuple(tuple(row) for row in tables)
    if len(tables) != rows or any(len(row) != cols for row in tables):
        raise ConfigError(f"{what} must be {rows} tables of {cols} entries")
    for row in tables:
        for v in row:
            if not 0 <= v < bound:
                raise ConfigError(f"{what} entry {v:#x} out of range")
    return tables


@dataclass(frozen=True)
class SimpleTables:
    """One sampled simple-tabulation function.

    Built from (spec, seed) the contents are the deterministic counter
    fill; explicit ``tables`` may be passed instead for hand-crafted
    functions (exhaustive enumeration, degenerate cases in tests).
    """

    spec: UniverseSpec
    seed: int
    tables: tuple = field(repr=False)

    def __init__(self, spec: UniverseSpec, seed: int, tables=None):
        if tables is None:
            tables = _fill(spec, seed, SIMPLE_FILL_SALT, spec.char_count, spec.out_mask)
        else:
            tables = _check_tables(
                tables, spec.char_count, spec.alphabet_size, 1 << spec.out_bits,
                "simple tables",
            )
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "seed", seed & MASK64)
        object.__setattr__(self, "tables", tables)


def fill_simple(spec: UniverseSpec, seed: int) -> SimpleTables:
    """Sample the simple-tabulation function determined by (spec, seed)."""
    return SimpleTables(spec, seed)


def simple_hash(tables: SimpleTables, key: int) -> int:
    spec = tables.spec
    spec.check_key(key)
    h = 0
    bits = spec.char_bits
    mask = spec.char_mask
    for i in range(spec.char_count):
        h ^= tables.tables[i][(key >> (i * bits)) & mask]
    return h


@dataclass(frozen=True)
class TwistedTables:
    """One sampled twisted-tabulation function.

    ``twister`` holds c-1 tables of character-sized entries hashing the
    low c-1 characters; ``shifts`` holds c tables of out_bits-sized
    entries. The two fills come from disjoint substreams of ``seed`` so
    the twister and the shifts are independent.
    """

    spec: UniverseSpec
    seed: int
    twister: tuple = field(repr=False)
    shifts: tuple = field(repr=False)

    def __init__(self, spec: UniverseSpec, seed: int, twister=None, shifts=None):
        if spec.char_count < 2:
            raise ConfigError("twisting requires at least 2 characters per key")
        if twister is None:
            twister = _fill(spec, seed, TWIST_FILL_SALT, spec.char_count - 1, spec.char_mask)
        else:
            twister = _check_tables(
                twister, spec.char_count - 1, spec.alphabet_size,
                spec.alphabet_size, "twister tables",
            )
        if shifts is None:
            shifts = _fill(spec, seed, SHIFT_FILL_SALT, spec.char_count, spec.out_mask)
        else:
            shifts = _check_tables(
                shifts, spec.char_count, spec.alphabet_size, 1 << spec.out_bits,
                "shift tables",
            )
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "seed", seed & MASK64)
        object.__setattr__(self, "twister", twister)
        object.__setattr__(self, "shifts", shifts)


def fill_twisted(spec: UniverseSpec, seed: int) -> TwistedTables:
    """Sample the twisted-tabulation function determined by (spec, seed)."""
    return TwistedTables(spec, seed)


def twist(tables: TwistedTables, key: int) -> int:
    """Twisted head character: the top character XOR a hash of the rest.

    The head is the MOST significant character. The reference C routine
    consumes the low characters first and twists whatever remains, so
    with the least-significant-first ordering of :func:`split_key` the
    twisted position is index c-1.
    """
    spec = tables.spec
    spec.check_key(key)
    bits = spec.char_bits
    mask = spec.char_mask
    t = 0
    for i in range(spec.char_count - 1):
        t ^= tables.twister[i][(key >> (i * bits)) & mask]
    return ((key >> ((spec.char_count - 1) * bits)) & mask) ^ t


def twisted_group_of(tables: TwistedTables, key: int) -> int:
    """Group id of ``key``: keys with equal ids share the final shift."""
    return twist(tables, key)


def twisted_internal_hash(tables: TwistedTables, key: int) -> int:
    """The partial hash over the low c-1 characters, before the shift."""
    spec = tables.spec
    spec.check_key(key)
    bits = spec.char_bits
    mask = spec.char_mask
    h = 0
    for i in range(spec.char_count - 1):
        h ^= tables.shifts[i][(key >> (i * bits)) & mask]
    return h


def twisted_hash(tables: TwistedTables, key: int) -> int:
    return twisted_internal_hash(tables, key) ^ tables.shifts[
        tables.spec.char_count - 1
    ][twist(tables, key)]


@dataclass(frozen=True)
class PolyHashParams:
    """Degree-(k-1) polynomial over the prime 2**61 - 1.

    With k coefficients the family is k-independent on keys below the
    prime, which caps usable keys at 60 bits.
    """

    spec: UniverseSpec
    seed: int
    k: int
    coefficients: tuple = field(repr=False)
    prime: int = MERSENNE61

    def __init__(self, spec: UniverseSpec, seed: int, k: int, coefficients=None):
        if k < 2:
            raise ConfigError(f"polynomial degree parameter k must be >= 2, got {k}")
        if spec.key_bits > 60:
            raise ConfigError(
                "polynomial family needs keys below 2**61 - 1; "
                f"got {spec.key_bits}-bit keys"
            )
        if coefficients is None:
            coefficients = _poly_coefficients(seed, k)
        else:
            coefficients = tuple(coefficients)
            if len(coefficients) != k:
                raise ConfigError(f"expected {k} coefficients, got {len(coefficients)}")
            for coef in coefficients:
                if not 0 <= coef < MERSENNE61:
                    raise ConfigError(f"coefficient {coef:#x} not in [0, 2**61 - 1)")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "seed", seed & MASK64)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "prime", MERSENNE61)
        object.__setattr__(self, "coefficients", coefficients)


def _poly_coefficients(seed: int, k: int) -> tuple[int, ...]:
    # uniform in [0, p): draw 61 bits, reject the single value p;
    # retry a for coefficient j reads stream position a*k + j
    s = (seed & MASK64) ^ POLY_FILL_SALT
    out = []
    for j in range(k):
        attempt = 0
        while True:
            v = stream_value(s, attempt * k + j) & MERSENNE61
            if v != MERSENNE61:
                out.append(v)
                break
            attempt += 1
    return tuple(out)


def fill_poly(spec: UniverseSpec, seed: int, k: int) -> PolyHashParams:
    """Sample k coefficients for the polynomial family."""
    return PolyHashParams(spec, seed, k)


def poly_hash(params: PolyHashParams, key: int) -> int:
    """Horner evaluation mod 2**61 - 1, truncated to out_bits."""
    params.spec.check_key(key)
    p = params.prime
    acc = 0
    for coef in reversed(params.coefficients):
        acc = (acc * key + coef) % p
    return acc & params.spec.out_mask


def hash_to_unit(h: int, out_bits: int) -> Fraction:
    """Exact dyadic position of ``h`` in [0, 1).

    Returned as a rational so unit-interval comparisons stay integer
    comparisons; never compare hashes through floats.
    """
    if not 0 <= h < (1 << out_bits):
        raise KeyRangeError(f"hash {h:#x} does not fit in {out_bits} bits")
    return Fraction(h, 1 << out_bits)
