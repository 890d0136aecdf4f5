from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tabsketch import tabcore
from tabsketch.errors import ConfigError, KeyRangeError
from tabsketch.tabcore import (
    MERSENNE61,
    PolyHashParams,
    SimpleTables,
    TwistedTables,
    UniverseSpec,
    fill_simple,
    fill_twisted,
    hash_to_unit,
    join_key,
    poly_hash,
    simple_hash,
    split_key,
    twist,
    twisted_group_of,
    twisted_hash,
    twisted_internal_hash,
)

SPEC16 = UniverseSpec(char_bits=8, char_count=2)
SPEC32 = UniverseSpec(char_bits=8, char_count=4, out_bits=32)


def small_specs():
    return st.builds(
        UniverseSpec,
        char_bits=st.integers(1, 4),
        char_count=st.integers(1, 4),
        out_bits=st.integers(1, 16),
    )


class TestUniverseSpec:
    def test_defaults_output_width_to_key_width(self):
        assert UniverseSpec(char_bits=8, char_count=4).out_bits == 32

    def test_derived_quantities(self):
        spec = UniverseSpec(char_bits=8, char_count=2, out_bits=16)
        assert spec.alphabet_size == 256
        assert spec.key_bits == 16
        assert spec.universe_size == 1 << 16
        assert spec.out_mask == 0xFFFF

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(char_bits=0, char_count=2),
            dict(char_bits=8, char_count=0),
            dict(char_bits=8, char_count=9),
            dict(char_bits=8, char_count=2, out_bits=65),
        ],
    )
    def test_rejects_bad_shapes(self, kwargs):
        with pytest.raises(ConfigError):
            UniverseSpec(**kwargs)


class TestSplitKey:
    def test_two_byte_example(self):
        assert split_key(0x3412, SPEC16) == (0x12, 0x34)

    def test_zero(self):
        assert split_key(0, SPEC32) == (0, 0, 0, 0)

    def test_four_byte_example(self):
        assert split_key(0xDEADBEEF, SPEC32) == (0xEF, 0xBE, 0xAD, 0xDE)

    def test_out_of_universe(self):
        with pytest.raises(KeyRangeError):
            split_key(1 << 16, SPEC16)
        with pytest.raises(KeyRangeError):
            split_key(-1, SPEC16)

    @given(small_specs(), st.integers(min_value=0))
    def test_roundtrip(self, spec, raw):
        key = raw % spec.universe_size
        assert join_key(split_key(key, spec), spec) == key


class TestSimpleTables:
    def test_fill_is_deterministic(self):
        a = fill_simple(SPEC16, 42)
        b = fill_simple(SPEC16, 42)
        assert a.tables == b.tables

    def test_distinct_seeds_differ(self):
        assert fill_simple(SPEC16, 42).tables != fill_simple(SPEC16, 43).tables

    def test_shape_and_entry_range(self):
        t = fill_simple(SPEC16, 7)
        assert len(t.tables) == 2
        assert all(len(row) == 256 for row in t.tables)
        assert all(0 <= v <= 0xFFFF for row in t.tables for v in row)

    def test_explicit_tables_validated(self):
        with pytest.raises(ConfigError):
            SimpleTables(SPEC16, 0, tables=((0,) * 255,) * 2)
        with pytest.raises(ConfigError):
            SimpleTables(SPEC16, 0, tables=((1 << 16,) + (0,) * 255, (0,) * 256))

    def test_hash_is_xor_of_selected_entries(self):
        t0 = [0] * 256
        t1 = [0] * 256
        t0[0x12] = 0xABCD
        t1[0x34] = 0x1234
        tables = SimpleTables(SPEC16, 0, tables=(t0, t1))
        assert simple_hash(tables, 0x3412) == 0xB9F9

    def test_all_zero_tables_hash_to_zero(self):
        tables = SimpleTables(SPEC16, 0, tables=((0,) * 256, (0,) * 256))
        assert all(simple_hash(tables, k) == 0 for k in (0, 1, 0xFFFF, 0x1234))

    def test_single_character_difference_cancels(self):
        tables = fill_simple(SPEC16, 99)
        x, y = 0x12AB, 0x12CD  # differ in char 0 only
        want = tables.tables[0][0xAB] ^ tables.tables[0][0xCD]
        assert simple_hash(tables, x) ^ simple_hash(tables, y) == want

    @given(small_specs(), st.integers(0, 2**64 - 1), st.integers(min_value=0))
    def test_matches_definition(self, spec, seed, raw):
        key = raw % spec.universe_size
        tables = fill_simple(spec, seed)
        want = 0
        for i, ch in enumerate(split_key(key, spec)):
            want ^= tables.tables[i][ch]
        assert simple_hash(tables, key) == want


class TestTwistedTables:
    def test_requires_a_tail(self):
        with pytest.raises(ConfigError):
            fill_twisted(UniverseSpec(char_bits=8, char_count=1), 0)

    def test_twister_and_shifts_are_independent_fills(self):
        t = fill_twisted(SPEC16, 5)
        s = fill_simple(SPEC16, 5)
        assert t.shifts != s.tables  # distinct substreams of the same seed
        assert len(t.twister) == 1
        assert len(t.shifts) == 2
        assert all(0 <= v < 256 for row in t.twister for v in row)

    def test_zero_twister_head_is_top_character(self):
        t = TwistedTables(SPEC16, 3, twister=((0,) * 256,))
        assert twist(t, 0x3412) == 0x34

    def test_equal_tails_heads_differ_as_top_chars(self):
        t = fill_twisted(SPEC32, 11)
        a, b = 0x11223344, 0xAA223344  # same low three chars
        assert twist(t, a) ^ twist(t, b) == 0x11 ^ 0xAA

    def test_twist_matches_definition(self):
        t = fill_twisted(SPEC32, 8)
        key = 0xCAFEF00D
        chars = split_key(key, SPEC32)
        acc = 0
        for i in range(3):
            acc ^= t.twister[i][chars[i]]
        assert twist(t, key) == chars[3] ^ acc
        assert twisted_group_of(t, key) == twist(t, key)

    def test_hash_is_internal_xor_final_shift(self):
        t = fill_twisted(SPEC32, 8)
        key = 0xCAFEF00D
        want = twisted_internal_hash(t, key) ^ t.shifts[3][twist(t, key)]
        assert twisted_hash(t, key) == want

    def test_zero_twister_degenerates_to_simple(self):
        # exhaustive for a small universe
        spec = UniverseSpec(char_bits=3, char_count=2, out_bits=6)
        t = fill_twisted(spec, 77)
        zeroed = TwistedTables(spec, 77, twister=((0,) * 8,), shifts=t.shifts)
        plain = SimpleTables(spec, 0, tables=t.shifts)
        for key in range(spec.universe_size):
            assert twisted_hash(zeroed, key) == simple_hash(plain, key)

    def test_zero_twister_degenerates_to_simple_sampled(self):
        t = fill_twisted(SPEC32, 13)
        zeroed = TwistedTables(SPEC32, 13, twister=((0,) * 256,) * 3, shifts=t.shifts)
        plain = SimpleTables(SPEC32, 0, tables=t.shifts)
        for i in range(10_000):
            key = tabcore.stream_value(123, i) & 0xFFFFFFFF
            assert twisted_hash(zeroed, key) == simple_hash(plain, key)

    def test_same_group_equal_tails_differ_by_head_entry(self):
        t = fill_twisted(SPEC16, 21)
        a, b = 0x0712, 0x0912
        ha, hb = twist(t, a), twist(t, b)
        want = t.shifts[1][ha] ^ t.shifts[1][hb]
        assert twisted_hash(t, a) ^ twisted_hash(t, b) == want

    @given(st.integers(0, 2**64 - 1), st.integers(min_value=0))
    @settings(max_examples=50)
    def test_group_partition_by_head(self, seed, raw):
        spec = UniverseSpec(char_bits=2, char_count=3, out_bits=8)
        t = fill_twisted(spec, seed)
        key = raw % spec.universe_size
        assert 0 <= twisted_group_of(t, key) < spec.alphabet_size


class TestPolyHash:
    def test_requires_k_at_least_two(self):
        with pytest.raises(ConfigError):
            PolyHashParams(SPEC16, 0, k=1)

    def test_rejects_wide_keys(self):
        with pytest.raises(ConfigError):
            PolyHashParams(UniverseSpec(char_bits=8, char_count=8), 0, k=2)

    def test_coefficients_uniform_shape(self):
        p = PolyHashParams(SPEC16, 9, k=4)
        assert len(p.coefficients) == 4
        assert all(0 <= c < MERSENNE61 for c in p.coefficients)
        assert p.coefficients == PolyHashParams(SPEC16, 9, k=4).coefficients

    def test_linear_example(self):
        p = PolyHashParams(SPEC16, 0, k=2, coefficients=(7, 11))
        key = 0x1234
        assert poly_hash(p, key) == ((7 + 11 * key) % MERSENNE61) & 0xFFFF

    def test_key_zero_gives_constant_coefficient(self):
        p = PolyHashParams(SPEC16, 31, k=3)
        assert poly_hash(p, 0) == p.coefficients[0] & 0xFFFF

    @given(st.integers(0, 2**64 - 1), st.integers(2, 5), st.integers(min_value=0))
    @settings(max_examples=50)
    def test_matches_horner_oracle(self, seed, k, raw):
        key = raw % SPEC16.universe_size
        p = PolyHashParams(SPEC16, seed, k=k)
        want = sum(c * key**i for i, c in enumerate(p.coefficients)) % MERSENNE61
        assert poly_hash(p, key) == want & 0xFFFF


class TestHashToUnit:
    def test_endpoints(self):
        assert hash_to_unit(0, 16) == 0
        assert hash_to_unit(1 << 15, 16) == Fraction(1, 2)

    def test_rejects_oversized(self):
        with pytest.raises(KeyRangeError):
            hash_to_unit(1 << 16, 16)

    @given(st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
    def test_order_preserving(self, a, b):
        assert (a < b) == (hash_to_unit(a, 16) < hash_to_unit(b, 16))
