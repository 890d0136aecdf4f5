import pytest
from hypothesis import given, settings, strategies as st

from tabsketch.errors import ConfigError
from tabsketch.statlab import (
    BiasExperimentConfig,
    estimate_min_probability,
    generate_query_and_set,
)
from tabsketch.tabcore import UniverseSpec, split_key

SPEC16 = UniverseSpec(char_bits=8, char_count=2)
SPEC64 = UniverseSpec(char_bits=8, char_count=8)


def cfg(**kw):
    base = dict(
        spec=SPEC16, family="twisted", n=4, set_generator="fixed-tail-cube",
        trials=100, base_seed=1,
    )
    base.update(kw)
    return BiasExperimentConfig(**base)


class TestConfig:
    def test_rejects_unknowns(self):
        with pytest.raises(ConfigError):
            cfg(family="sha256")
        with pytest.raises(ConfigError):
            cfg(set_generator="adversarial")
        with pytest.raises(ConfigError):
            cfg(n=0)
        with pytest.raises(ConfigError):
            cfg(trials=0)
        with pytest.raises(ConfigError):
            cfg(confidence=1.5)

    def test_rejects_overfull_universe(self):
        tiny = UniverseSpec(char_bits=1, char_count=2)
        with pytest.raises(ConfigError):
            BiasExperimentConfig(
                spec=tiny, family="simple", n=4, set_generator="random-distinct",
                trials=10, base_seed=0,
            )


class TestGenerators:
    @pytest.mark.parametrize("generator", ["random-distinct", "fixed-tail-cube", "dense-interval"])
    @pytest.mark.parametrize("n", [1, 2, 4, 7, 8, 16])
    def test_shape_and_query_outside(self, generator, n):
        query, keys = generate_query_and_set(SPEC16, generator, n, base_seed=9)
        assert len(keys) == n
        assert len(set(keys)) == n
        assert query not in keys
        assert all(0 <= k < SPEC16.universe_size for k in keys)
        assert 0 <= query < SPEC16.universe_size

    def test_deterministic(self):
        a = generate_query_and_set(SPEC16, "random-distinct", 32, 7)
        assert a == generate_query_and_set(SPEC16, "random-distinct", 32, 7)
        assert a != generate_query_and_set(SPEC16, "random-distinct", 32, 8)

    def test_dense_interval_is_contiguous(self):
        query, keys = generate_query_and_set(SPEC16, "dense-interval", 10, 3)
        assert list(keys) == list(range(keys[0], keys[0] + 10))
        assert query == keys[0] + 10

    def test_cube_structure(self):
        spec = UniverseSpec(char_bits=8, char_count=4, out_bits=32)
        query, keys = generate_query_and_set(spec, "fixed-tail-cube", 8, 5)
        chars = [split_key(k, spec) for k in keys]
        qc = split_key(query, spec)
        # grid in the two low positions: 2 x 4 distinct characters
        assert len({c[0] for c in chars}) == 2
        assert len({c[1] for c in chars}) == 4
        # all higher positions frozen and shared with the query
        for i in (2, 3):
            assert len({c[i] for c in chars}) == 1
            assert qc[i] == chars[0][i]
        # query outside the grid in both directions
        assert qc[0] not in {c[0] for c in chars}
        assert qc[1] not in {c[1] for c in chars}

    def test_cube_needs_a_tail_position(self):
        with pytest.raises(ConfigError):
            generate_query_and_set(UniverseSpec(char_bits=8, char_count=1), "fixed-tail-cube", 4, 0)

    def test_cube_must_fit_alphabet(self):
        with pytest.raises(ConfigError):
            generate_query_and_set(UniverseSpec(char_bits=1, char_count=2), "fixed-tail-cube", 2, 0)

    @given(st.integers(0, 2**32), st.integers(1, 64))
    @settings(max_examples=30, deadline=None)
    def test_random_distinct_property(self, seed, n):
        query, keys = generate_query_and_set(SPEC16, "random-distinct", n, seed)
        assert len(set(keys)) == n and query not in keys


class TestEstimate:
    def test_counts_are_consistent(self):
        report = estimate_min_probability(cfg(trials=2000))
        assert report.hit_count_strict <= report.hit_count <= report.hit_count_leq
        assert report.tie_count == report.hit_count_leq - report.hit_count_strict
        assert report.tie_count >= 0
        assert report.wilson_lo <= report.point_estimate <= report.wilson_hi
        n1 = report.config.n + 1
        assert report.implied_bias_lo == pytest.approx(n1 * report.wilson_lo - 1)
        assert report.implied_bias_hi == pytest.approx(n1 * report.wilson_hi - 1)

    def test_block_size_does_not_change_counts(self):
        a = estimate_min_probability(cfg(trials=1000), block=64)
        b = estimate_min_probability(cfg(trials=1000), block=333)
        assert (a.hit_count, a.hit_count_strict, a.hit_count_leq) == (
            b.hit_count, b.hit_count_strict, b.hit_count_leq,
        )

    def test_deterministic(self):
        a = estimate_min_probability(cfg(trials=500))
        b = estimate_min_probability(cfg(trials=500))
        assert a == b

    def test_low_trials_flagged(self):
        assert estimate_min_probability(cfg(n=64, trials=100)).low_trials_warning
        assert not estimate_min_probability(cfg(n=4, trials=2000)).low_trials_warning

    def test_pairwise_family_covers_half_at_n1(self):
        report = estimate_min_probability(
            cfg(spec=SPEC16, family="poly:2", n=1, set_generator="random-distinct",
                trials=20_000, base_seed=11)
        )
        assert report.wilson_lo < 0.5 < report.wilson_hi

    def test_fully_random_covers_uniform_probability(self):
        report = estimate_min_probability(
            cfg(spec=SPEC64, family="random", n=16, set_generator="random-distinct",
                trials=50_000, base_seed=5)
        )
        assert report.wilson_lo < 1 / 17 < report.wilson_hi
        assert report.tie_count == 0  # 64-bit hashes: ties absurdly unlikely

    def test_narrow_output_counts_ties(self):
        report = estimate_min_probability(
            cfg(spec=UniverseSpec(char_bits=8, char_count=2, out_bits=2),
                family="random", n=4, set_generator="random-distinct", trials=3000)
        )
        assert report.tie_count > 0

    def test_trial_order_invariance(self):
        # two disjoint halves sum to the full run
        full = estimate_min_probability(cfg(trials=600))
        first = estimate_min_probability(cfg(trials=300))
        assert first.hit_count <= full.hit_count
