#!/usr/bin/env python3
"""Generate the golden vector file for the 32-bit twisted instantiation.

Deliberately does NOT import tabsketch. The hashing below goes through
the merged one-array layout (64-bit entries, shift value in the high
half, twister character in the low half) while the library keeps the
twister and shift tables separate, so agreement between this file and
the library is a real cross-check of both routes. The counter-mix
generator and the fill salts are duplicated here for the same reason.

Usage: python3 scripts/make_golden_vectors.py [seed] [count] [outpath]
"""

import sys

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
SHIFT_FILL_SALT = 0x5348494654535F21
TWIST_FILL_SALT = 0x5457495354455221


def mix64(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def stream_value(seed: int, pos: int) -> int:
    return mix64((seed + (pos + 1) * GOLDEN) & MASK64)


def merged_tables(seed: int) -> list:
    """Four 256-entry tables of packed 64-bit values for 4x8-bit keys."""
    h = []
    for i in range(4):
        row = []
        for j in range(256):
            shift = stream_value((seed & MASK64) ^ SHIFT_FILL_SALT, i * 256 + j) & 0xFFFFFFFF
            entry = shift << 32
            if i < 3:
                entry |= stream_value((seed & MASK64) ^ TWIST_FILL_SALT, i * 256 + j) & 0xFF
            row.append(entry)
        h.append(row)
    return h


def twisted_tab32(x: int, h_tables: list) -> int:
    # transcription of the reference C routine; the signed INT8 index
    # becomes an explicit & 0xff and the INT64 accumulator an & on 64 bits
    h = 0
    for i in range(3):
        c = x & 0xFF
        h ^= h_tables[i][c]
        x >>= 8
    c = (x ^ h) & 0xFF
    h ^= h_tables[3][c]
    return (h >> 32) & 0xFFFFFFFF


def emit(seed: int, count: int) -> str:
    h_tables = merged_tables(seed)
    lines = [f"# spec char_bits=8 c=4 r=32 seed={seed}"]
    for j in range(8):
        lines.append(f"# tablecheck 0 {j} {h_tables[0][j]:016x}")
    for key in range(count):
        lines.append(f"{key:08x}\t{twisted_tab32(key, h_tables):08x}")
    return "\n".join(lines) + "\n"


def main() -> int:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    count = int(sys.argv[2]) if len(sys.argv) > 2 else 256
    out = sys.argv[3] if len(sys.argv) > 3 else "src/tabsketch/data/golden_vectors_seed1.txt"
    text = emit(seed, count)
    with open(out, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    print(f"wrote {count} vectors for seed {seed} to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
