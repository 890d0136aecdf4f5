"""Document shingling: turn text into fixed-width integer key sets.

A document becomes the set of its overlapping character shingles of
length w (after optional normalization), and each shingle is folded
into the target key universe with the library's own simple tabulation
under a fixed published seed. Same document, same config, same keys,
on any platform.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConfigError
from .rng import FOLD_SEED
from .tabcore import SimpleTables, UniverseSpec, simple_hash

_WS = re.compile(r"\s+")


@dataclass(frozen=True)
class ShingleConfig:
    w: int
    lowercase: bool = True
    collapse_whitespace: bool = True

    def __post_init__(self):
        if self.w < 1:
            raise ConfigError(f"shingle length must be >= 1, got {self.w}")

    def to_record(self) -> dict:
        return {
            "w": self.w,
            "lowercase": self.lowercase,
            "collapse_whitespace": self.collapse_whitespace,
        }


def normalize_text(text: str, config: ShingleConfig) -> str:
    if config.lowercase:
        text = text.lower()
    if config.collapse_whitespace:
        text = _WS.sub(" ", text).strip()
    return text


def shingles(text: str, config: ShingleConfig) -> list[str]:
    """Overlapping length-w windows; empty when the text is shorter."""
    text = normalize_text(text, config)
    return [text[i : i + config.w] for i in range(len(text) - config.w + 1)]


@lru_cache(maxsize=64)
def _fold_tables(index: int, key_bits: int) -> SimpleTables:
    # one table set per 8-byte chunk position, plus index 0 for length
    spec = UniverseSpec(char_bits=8, char_count=8, out_bits=key_bits)
    return SimpleTables(spec, FOLD_SEED + index)


def fold_bytes(data: bytes, key_bits: int) -> int:
    """Fold a byte string into a key_bits-bit integer.

    XOR of one simple-tabulation hash per 8-byte little-endian chunk
    (zero padded), each chunk position with its own tables, plus a hash
    of the byte length so trailing-zero padding cannot collide.
    """
    if not 1 <= key_bits <= 64:
        raise ConfigError("key width must be in [1, 64]")
    key = simple_hash(_fold_tables(0, key_bits), len(data) & 0xFFFFFFFFFFFFFFFF)
    for i in range(0, len(data), 8):
        chunk = int.from_bytes(data[i : i + 8], "little")
        key ^= simple_hash(_fold_tables(i // 8 + 1, key_bits), chunk)
    return key


def shingle_keys(text: str, config: ShingleConfig, spec: UniverseSpec) -> set[int]:
    """The document's shingle set folded into ``spec``'s key universe."""
    return {
        fold_bytes(s.encode("utf-8"), spec.key_bits) for s in shingles(text, config)
    }
