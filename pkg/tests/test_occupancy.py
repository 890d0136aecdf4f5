import math

import pytest
from hypothesis import given, settings, strategies as st

from tabsketch.errors import ConfigError
from tabsketch.families import make_hasher
from tabsketch.statlab import (
    bin_occupancy,
    concentration_spot_check,
    max_group_sizes,
    occupancy_sweep,
    twisted_group_stats,
)
from tabsketch.tabcore import (
    TwistedTables,
    UniverseSpec,
    fill_twisted,
    twisted_group_of,
    twisted_internal_hash,
)

SPEC16 = UniverseSpec(char_bits=8, char_count=2)


class TestGroupStats:
    def test_single_key(self):
        t = fill_twisted(SPEC16, 1)
        report = twisted_group_stats(t, [42])
        assert report.max_group_size == 1
        assert report.n == 1

    def test_zero_twister_groups_by_top_character(self):
        t = TwistedTables(SPEC16, 1, twister=((0,) * 256,))
        keys = [0x0700, 0x0711, 0x07FF, 0x0742]  # all share the top character
        report = twisted_group_stats(t, keys)
        assert report.sizes == {0x07: 4}
        assert report.max_group_size == 4

    @given(st.integers(0, 2**64 - 1), st.sets(st.integers(0, 2**16 - 1), min_size=1, max_size=200))
    @settings(max_examples=40, deadline=None)
    def test_histogram_sums_to_n(self, seed, keys):
        report = twisted_group_stats(fill_twisted(SPEC16, seed), keys)
        assert sum(report.sizes.values()) == len(keys) == report.n
        assert report.max_group_size == max(report.sizes.values())

    def test_matches_direct_partition(self):
        t = fill_twisted(SPEC16, 9)
        keys = list(range(500, 700))
        report = twisted_group_stats(t, keys)
        for g, size in report.sizes.items():
            assert size == sum(1 for k in keys if twisted_group_of(t, k) == g)


class TestBinOccupancy:
    def test_single_key_single_load(self):
        report = bin_occupancy(make_hasher(SPEC16, "simple", 3), [99], 16)
        assert report.max_load == 1
        assert sum(report.loads.values()) == 1

    @given(st.integers(0, 2**32), st.sets(st.integers(0, 2**16 - 1), min_size=1, max_size=300))
    @settings(max_examples=30, deadline=None)
    def test_loads_sum_to_n(self, seed, keys):
        report = bin_occupancy(make_hasher(SPEC16, "twisted", seed), keys, 64)
        assert sum(report.loads.values()) == len(keys)

    def test_rejects_bad_bin_counts(self):
        h = make_hasher(SPEC16, "simple", 1)
        with pytest.raises(ConfigError):
            bin_occupancy(h, [1], 48)
        with pytest.raises(ConfigError):
            bin_occupancy(h, [1], 1 << 17)
        with pytest.raises(ConfigError):
            bin_occupancy(object(), [1], 16)

    def test_per_group_variant_matches_oracle(self):
        t = fill_twisted(SPEC16, 7)
        keys = list(range(1000, 1300))
        m = 32
        shift = SPEC16.out_bits - 5
        report = bin_occupancy(t, keys, m)
        groups: dict[int, list[int]] = {}
        for k in keys:
            groups.setdefault(twisted_group_of(t, k), []).append(k)
        for g, members in groups.items():
            bins: dict[int, int] = {}
            for k in members:
                b = twisted_internal_hash(t, k) >> shift
                bins[b] = bins.get(b, 0) + 1
            assert report.per_group_max[g] == max(bins.values())
        assert report.max_load == max(report.per_group_max.values())
        assert sum(report.loads.values()) == len(keys)


class TestSweeps:
    def test_max_group_sizes_shape(self):
        sizes = max_group_sizes(SPEC16, n=256, trials=20, base_seed=3)
        assert len(sizes) == 20
        assert all(s >= math.ceil(256 / 256) for s in sizes)
        assert sizes == max_group_sizes(SPEC16, n=256, trials=20, base_seed=3)

    @pytest.mark.parametrize("family", ["simple", "twisted"])
    def test_occupancy_sweep_reports_fraction(self, family):
        report = occupancy_sweep(
            SPEC16, family, n=64, m=256, trials=25, base_seed=4, threshold=8
        )
        assert report.trials == 25
        assert 0.0 <= report.exceed_fraction <= 1.0
        assert report.max_load >= 1
        assert report.threshold == 8


class TestConcentration:
    def test_threshold_zero_gives_zero_values(self):
        report = concentration_spot_check(
            SPEC16, "twisted", n=32, threshold=0, trials=200, base_seed=1
        )
        assert report.mu == 0.0
        assert report.upper_rates == (1.0, 1.0)  # V >= 0 trivially
        assert report.lower_rates == (1.0, 1.0)

    def test_threshold_full_gives_all_values(self):
        full = 1 << SPEC16.out_bits
        report = concentration_spot_check(
            SPEC16, "twisted", n=32, threshold=full, trials=200, base_seed=1
        )
        assert report.mu == 32.0
        assert report.upper_rates == (0.0, 0.0)  # V can never exceed n
        assert report.outside_small_mean_regime

    def test_moderate_threshold_tracks_binomial(self):
        # mu = 8 with the ideal family: exceedance at 2*mu should sit
        # near the binomial tail, far below 1
        report = concentration_spot_check(
            SPEC16, "random", n=64, threshold=8192, trials=4000, base_seed=2,
            deltas=(1.0,),
        )
        assert report.mu == 8.0
        assert not report.outside_small_mean_regime
        assert report.binomial_upper[0] < 0.02
        assert report.upper_rates[0] < 3 * report.binomial_upper[0] + 0.01

    def test_rejects_bad_threshold(self):
        with pytest.raises(ConfigError):
            concentration_spot_check(SPEC16, "simple", 8, -1, 10, 0)
        with pytest.raises(ConfigError):
            concentration_spot_check(SPEC16, "simple", 8, (1 << 16) + 1, 10, 0)
