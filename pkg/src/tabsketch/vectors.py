"""Reading and verifying golden test-vector files.

File format (plain text, LF line endings):

    # spec char_bits=8 c=4 r=32 seed=1
    # tablecheck 0 0 a08934b55b1e8eb6
    ...more tablecheck lines...
    00000000<TAB>8ca451e2
    00000001<TAB>d7f3a201
    ...

The header fixes the universe and the seed. Optional ``tablecheck``
comment lines carry merged 64-bit table entries (shift value in the
high 32 bits, twister character in the low bits) so a reimplementation
of the table generator can be cross-checked before any hashing. Body
lines are ``hex_key<TAB>hex_hash`` pairs, lowercase, zero padded.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ConfigError, VectorFormatError
from .tabcore import TwistedTables, UniverseSpec, twisted_hash

_HEADER = re.compile(r"# spec char_bits=(\d+) c=(\d+) r=(\d+) seed=(\d+)\s*$")
_TABLECHECK = re.compile(r"# tablecheck (\d+) (\d+) ([0-9a-f]{16})\s*$")
_PAIR = re.compile(r"([0-9a-f]+)\t([0-9a-f]+)\s*$")


@dataclass(frozen=True)
class VectorLine:
    lineno: int
    key: int
    value: int


@dataclass(frozen=True)
class TableCheck:
    lineno: int
    table: int
    entry: int
    value: int


@dataclass(frozen=True)
class VectorFile:
    spec: UniverseSpec
    seed: int
    pairs: tuple  # VectorLine, in file order
    table_checks: tuple  # TableCheck, in file order
    warnings: tuple


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    checked: int
    mismatch_line: int | None
    mismatch_text: str | None
    warnings: tuple


def merged_table_entry(tables: TwistedTables, i: int, j: int) -> int:
    """The packed 64-bit entry of the one-table reference layout.

    High 32 bits carry the shift value; for every position except the
    head the low bits carry the twister character.
    """
    if tables.spec.out_bits != 32:
        raise ConfigError("the merged layout is defined for 32-bit output")
    entry = tables.shifts[i][j] << 32
    if i < tables.spec.char_count - 1:
        entry |= tables.twister[i][j]
    return entry


def parse_vector_file(path) -> VectorFile:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise VectorFormatError("empty file, expected a spec header", 1)
    m = _HEADER.match(lines[0])
    if not m:
        raise VectorFormatError(f"bad header {lines[0]!r}", 1)
    char_bits, c, r, seed = (int(g) for g in m.groups())
    try:
        spec = UniverseSpec(char_bits=char_bits, char_count=c, out_bits=r)
    except ConfigError as exc:
        raise VectorFormatError(str(exc), 1) from exc
    key_digits = spec.key_bits // 4
    hash_digits = spec.out_bits // 4
    pairs = []
    checks = []
    warnings = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            warnings.append(f"line {lineno}: blank line ignored")
            continue
        m = _TABLECHECK.match(line)
        if m:
            checks.append(TableCheck(lineno, int(m.group(1)), int(m.group(2)), int(m.group(3), 16)))
            continue
        if line.startswith("#"):
            warnings.append(f"line {lineno}: unrecognized comment ignored")
            continue
        m = _PAIR.match(line)
        if not m:
            raise VectorFormatError(f"expected hex_key<TAB>hex_hash, got {line!r}", lineno)
        if len(m.group(1)) != key_digits or len(m.group(2)) != hash_digits:
            raise VectorFormatError(
                f"expected {key_digits} key digits and {hash_digits} hash digits", lineno
            )
        key, value = int(m.group(1), 16), int(m.group(2), 16)
        if key >= spec.universe_size:
            raise VectorFormatError(f"key {key:#x} outside universe", lineno)
        pairs.append(VectorLine(lineno, key, value))
    if not pairs:
        warnings.append("no vector lines: verification is vacuous")
    return VectorFile(
        spec=spec, seed=seed, pairs=tuple(pairs),
        table_checks=tuple(checks), warnings=tuple(warnings),
    )


def verify_vector_file(path) -> VerifyResult:
    """Recompute every vector and table check with the library."""
    vf = parse_vector_file(path)
    tables = TwistedTables(vf.spec, vf.seed)
    for check in vf.table_checks:
        i, j = check.table, check.entry
        if not (0 <= i < vf.spec.char_count and 0 <= j < vf.spec.alphabet_size):
            return VerifyResult(
                False, 0, check.lineno, f"tablecheck ({i},{j}) out of range", vf.warnings
            )
        got = merged_table_entry(tables, i, j)
        if got != check.value:
            return VerifyResult(
                False, 0, check.lineno,
                f"table entry ({i},{j}): file has {check.value:016x}, "
                f"library computes {got:016x}",
                vf.warnings,
            )
    checked = 0
    kd, hd = vf.spec.key_bits // 4, vf.spec.out_bits // 4
    for pair in vf.pairs:
        got = twisted_hash(tables, pair.key)
        if got != pair.value:
            return VerifyResult(
                False, checked, pair.lineno,
                f"key {pair.key:0{kd}x}: file has {pair.value:0{hd}x}, "
                f"library computes {got:0{hd}x}",
                vf.warnings,
            )
        checked += 1
    return VerifyResult(True, checked, None, None, vf.warnings)


def packaged_golden_path():
    """Path of the checked-in golden vector file."""
    from importlib import resources

    return resources.files("tabsketch").joinpath("data/golden_vectors_seed1.txt")
