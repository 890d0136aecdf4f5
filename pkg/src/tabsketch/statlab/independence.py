"""Exact independence verification over enumerable function spaces.

These checks carry no sampling error: they enumerate EVERY function in
a (tiny) family and count joint hash tuples for every set of distinct
keys. A family is k-independent exactly when all those counts are
equal. Refuses spaces above 2**24 functions rather than sampling.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from ..errors import ConfigError, StateSpaceError
from ..families import parse_family
from ..tabcore import SimpleTables, UniverseSpec, simple_hash

MAX_FUNCTIONS = 1 << 24


@dataclass(frozen=True)
class IndependenceReport:
    family: str
    k: int
    total_functions: int
    tuples_checked: int
    is_uniform: bool
    expected_count: int
    witness_keys: tuple | None
    witness_counts: dict | None

    def to_record(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "total_functions": self.total_functions,
            "tuples_checked": self.tuples_checked,
            "is_uniform": self.is_uniform,
            "expected_count": self.expected_count,
            "witness_keys": list(self.witness_keys) if self.witness_keys else None,
            "witness_counts": (
                {",".join(map(str, t)): c for t, c in sorted(self.witness_counts.items())}
                if self.witness_counts
                else None
            ),
        }


def _all_simple_fills(spec: UniverseSpec):
    entries = spec.char_count * spec.alphabet_size
    total_bits = entries * spec.out_bits
    if total_bits > 24:
        raise StateSpaceError(
            f"simple-tabulation fill space is 2**{total_bits}, refusing above 2**24"
        )
    sigma = spec.alphabet_size
    emask = spec.out_mask
    for fill in range(1 << total_bits):
        tables = tuple(
            tuple(
                (fill >> ((i * sigma + j) * spec.out_bits)) & emask
                for j in range(sigma)
            )
            for i in range(spec.char_count)
        )
        yield SimpleTables(spec, 0, tables=tables)


def exhaustive_independence_check(
    spec: UniverseSpec, family: str, k: int, prime: int | None = None
) -> IndependenceReport:
    """Enumerate all functions of a tiny family and test k-independence.

    ``family`` is ``simple`` (all table fills for ``spec``) or
    ``poly:<k>`` with a toy ``prime`` (all coefficient tuples, full
    residue output, keys ranging over [prime)).
    """
    kind, poly_k = parse_family(family)
    if k < 1:
        raise ConfigError("independence degree k must be >= 1")
    if kind == "simple":
        return _check_simple(spec, k)
    if kind == "poly":
        if prime is None:
            raise ConfigError("toy polynomial check needs an explicit prime")
        if poly_k != k:
            raise ConfigError("polynomial coefficient count must equal tested k")
        return _check_poly_toy(prime, k)
    raise ConfigError(f"exhaustive check supports simple or poly families, not {family!r}")


def _check_simple(spec: UniverseSpec, k: int) -> IndependenceReport:
    u = spec.universe_size
    if k > u:
        raise ConfigError(f"need at least {k} distinct keys, universe has {u}")
    key_sets = list(combinations(range(u), k))
    counters = [Counter() for _ in key_sets]
    total = 0
    for tables in _all_simple_fills(spec):
        total += 1
        hashes = [simple_hash(tables, x) for x in range(u)]
        for counter, keys in zip(counters, key_sets):
            counter[tuple(hashes[x] for x in keys)] += 1
    out_values = 1 << spec.out_bits
    return _verdict("simple", k, total, out_values**k, key_sets, counters)


def _check_poly_toy(prime: int, k: int) -> IndependenceReport:
    if prime < 2 or any(prime % d == 0 for d in range(2, min(prime, 1 + int(prime**0.5)))):
        raise ConfigError(f"{prime} is not prime")
    if prime**k > MAX_FUNCTIONS:
        raise StateSpaceError(f"{prime}**{k} coefficient tuples exceed 2**24")
    if k > prime:
        raise ConfigError("k exceeds key count")
    key_sets = list(combinations(range(prime), k))
    counters = [Counter() for _ in key_sets]
    total = 0
    coeffs = [0] * k
    while True:
        total += 1
        # Horner, same coefficient order as the production family
        hashes = []
        for x in range(prime):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * x + c) % prime
            hashes.append(acc)
        for counter, keys in zip(counters, key_sets):
            counter[tuple(hashes[x] for x in keys)] += 1
        for j in range(k):
            coeffs[j] += 1
            if coeffs[j] < prime:
                break
            coeffs[j] = 0
        else:
            break
    return _verdict(f"poly:{k}", k, total, prime**k, key_sets, counters)


def _verdict(family, k, total, tuple_space, key_sets, counters) -> IndependenceReport:
    expected, rem = divmod(total, tuple_space)
    for keys, counter in zip(key_sets, counters):
        uniform = rem == 0 and len(counter) == tuple_space and all(
            c == expected for c in counter.values()
        )
        if not uniform:
            return IndependenceReport(
                family=family,
                k=k,
                total_functions=total,
                tuples_checked=len(key_sets),
                is_uniform=False,
                expected_count=expected,
                witness_keys=keys,
                witness_counts=dict(counter),
            )
    return IndependenceReport(
        family=family,
        k=k,
        total_functions=total,
        tuples_checked=len(key_sets),
        is_uniform=True,
        expected_count=expected,
        witness_keys=None,
        witness_counts=None,
    )
