import pytest
from hypothesis import given
from hypothesis import strategies as st

from tabsketch.errors import ConfigError
from tabsketch.shingle import (
    ShingleConfig,
    fold_bytes,
    normalize_text,
    shingle_keys,
    shingles,
)
from tabsketch.tabcore import UniverseSpec


class TestNormalize:
    def test_lowercase_and_whitespace(self):
        cfg = ShingleConfig(w=3)
        assert normalize_text("  Big\tDog \n ran  ", cfg) == "big dog ran"

    def test_raw_mode_keeps_text(self):
        cfg = ShingleConfig(w=3, lowercase=False, collapse_whitespace=False)
        assert normalize_text(" Big\tDog ", cfg) == " Big\tDog "


class TestShingles:
    def test_known_windows(self):
        assert shingles("abcd", ShingleConfig(w=2)) == ["ab", "bc", "cd"]

    def test_short_text_gives_nothing(self):
        assert shingles("ab", ShingleConfig(w=3)) == []

    def test_exact_length_gives_one(self):
        assert shingles("abc", ShingleConfig(w=3)) == ["abc"]

    def test_w_must_be_positive(self):
        with pytest.raises(ConfigError):
            ShingleConfig(w=0)

    @given(st.text(min_size=0, max_size=40), st.integers(min_value=1, max_value=6))
    def test_count_matches_length(self, text, w):
        cfg = ShingleConfig(w=w)
        out = shingles(text, cfg)
        n = len(normalize_text(text, cfg))
        assert len(out) == max(0, n - w + 1)
        assert all(len(s) == w for s in out)


class TestFoldBytes:
    def test_deterministic(self):
        assert fold_bytes(b"shingle", 32) == fold_bytes(b"shingle", 32)

    def test_respects_width(self):
        for bits in (1, 8, 16, 32, 60, 64):
            assert 0 <= fold_bytes(b"shingle", bits) < (1 << bits)

    def test_length_breaks_zero_padding(self):
        # b"a" pads to the same 8-byte chunk as b"a\x00" would
        assert fold_bytes(b"a", 32) != fold_bytes(b"a\x00", 32)

    def test_empty_input_hashes_length_only(self):
        assert 0 <= fold_bytes(b"", 32) < (1 << 32)

    def test_long_input_uses_per_chunk_tables(self):
        a = fold_bytes(b"x" * 8 + b"y" * 8, 32)
        b = fold_bytes(b"y" * 8 + b"x" * 8, 32)
        assert a != b

    def test_width_bounds(self):
        with pytest.raises(ConfigError):
            fold_bytes(b"a", 0)
        with pytest.raises(ConfigError):
            fold_bytes(b"a", 65)

    @given(st.binary(max_size=40))
    def test_stays_in_range(self, data):
        assert 0 <= fold_bytes(data, 16) < (1 << 16)


class TestShingleKeys:
    def test_keys_live_in_universe(self):
        spec = UniverseSpec(char_bits=8, char_count=4)
        keys = shingle_keys("the quick brown fox", ShingleConfig(w=4), spec)
        assert keys
        assert all(0 <= k < spec.universe_size for k in keys)

    def test_identical_docs_identical_keys(self):
        spec = UniverseSpec(char_bits=8, char_count=4)
        cfg = ShingleConfig(w=5)
        a = shingle_keys("Some Document Text", cfg, spec)
        b = shingle_keys("some  document\ttext", cfg, spec)
        assert a == b

    def test_disjoint_alphabets_rarely_collide(self):
        spec = UniverseSpec(char_bits=8, char_count=8)
        cfg = ShingleConfig(w=4)
        a = shingle_keys("aaaabbbbccccdddd", cfg, spec)
        b = shingle_keys("wwwwxxxxyyyyzzzz", cfg, spec)
        assert not (a & b)

    def test_empty_doc_empty_keys(self):
        spec = UniverseSpec(char_bits=8, char_count=4)
        assert shingle_keys("", ShingleConfig(w=3), spec) == set()
