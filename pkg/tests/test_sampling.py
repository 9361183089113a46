import math
import random
from fractions import Fraction

import pytest
from scipy import stats

from rmideal.errors import ConfigError
from rmideal.ideals import minimalize
from rmideal.sampling import (
    ModelParams,
    PSpec,
    _degree_stream,
    _distinct_ranks,
    _TrialStream,
    count_monomials_exact_degree,
    count_monomials_up_to,
    default_thresholds,
    prob_minimal_generator,
    prob_not_in_ideal,
    rank_monomial,
    sample_ideal,
    sample_raw,
    unrank_monomial,
)
from conftest import bernoulli_raw

# frozen at first run: I(3, 65, 1/4225), seed 42, trial 0
GOLDEN_GENS = ((11, 7, 13), (2, 6, 26), (6, 11, 22), (19, 19, 7),
               (18, 1, 28), (24, 6, 20), (14, 43, 1))
GOLDEN_RAW_COUNT = 10


class TestCounting:
    def test_exact_degree(self):
        assert count_monomials_exact_degree(2, 3) == 4
        assert count_monomials_exact_degree(5, 0) == 1
        assert count_monomials_exact_degree(3, 65) == math.comb(67, 2) == 2211

    def test_up_to(self):
        assert count_monomials_up_to(3, 65) == math.comb(68, 3) - 1 == 50115
        assert count_monomials_up_to(1, 9) == 9
        assert count_monomials_up_to(2, 2) == 5


class TestUnranking:
    def test_lex_boundaries(self):
        assert unrank_monomial(2, 3, 0) == (0, 3)
        assert unrank_monomial(2, 3, 3) == (3, 0)
        assert unrank_monomial(1, 7, 0) == (7,)

    def test_round_trip_exhaustive(self):
        for n in (1, 2, 3, 4):
            for d in range(9):
                total = count_monomials_exact_degree(n, d)
                seen = set()
                for i in range(total):
                    m = unrank_monomial(n, d, i)
                    assert sum(m) == d and rank_monomial(m) == i
                    seen.add(m)
                assert len(seen) == total

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            unrank_monomial(2, 3, 4)


class TestModelParams:
    def test_validation(self):
        with pytest.raises(ConfigError):
            ModelParams(2, 10, 0.0, 1)
        with pytest.raises(ConfigError):
            ModelParams(2, 10, 1.0, 1)
        with pytest.raises(ConfigError):
            ModelParams(0, 10, 0.5, 1)

    def test_spec_consistency(self):
        spec = PSpec("power", k=0.5)
        params = ModelParams.from_spec(2, 100, spec, 7)
        assert params.p_float == pytest.approx(0.1)
        with pytest.raises(ConfigError):
            ModelParams(2, 100, 0.2, 7, p_spec=spec)

    def test_exact_q(self):
        params = ModelParams(3, 65, Fraction(1, 4225), 42)
        assert params.q == Fraction(4224, 4225)

    def test_scaled_spec(self):
        spec = PSpec("scaled", c=2.0, t=2)
        assert spec.resolve(10) == pytest.approx(0.02)


class TestStreams:
    def test_trial_stream_matches_reference(self):
        for seed, trial in ((42, 0), (7, 123), (2**40, 5)):
            ts = _TrialStream(seed, trial)
            for d in (1, 9, 4, 9):  # includes revisiting a degree
                got = ts.at_degree(d).integers(0, 2**62, size=5).tolist()
                ref = _degree_stream(seed, trial, d).integers(0, 2**62, size=5).tolist()
                assert got == ref

    def test_distinct_ranks(self):
        gen = _degree_stream(1, 2, 3)
        ranks = _distinct_ranks(gen, 1000, 60)
        assert len(set(ranks.tolist())) == 60
        assert all(0 <= r < 1000 for r in ranks)
        assert _distinct_ranks(gen, 5, 5).tolist() == [0, 1, 2, 3, 4]


class TestSampleIdeal:
    def test_golden_determinism(self):
        params = ModelParams(3, 65, Fraction(1, 4225), 42)
        ideal, raw = sample_ideal(params, 0)
        assert ideal.generators == GOLDEN_GENS
        assert raw == GOLDEN_RAW_COUNT
        again, raw2 = sample_ideal(params, 0)
        assert again.generators == GOLDEN_GENS and raw2 == raw

    def test_trials_differ(self):
        params = ModelParams(3, 65, Fraction(1, 4225), 42)
        assert sample_ideal(params, 1)[0] != sample_ideal(params, 2)[0]

    def test_near_one_probability_selects_variables(self):
        params = ModelParams(2, 2, 1 - 1e-12, 5)
        ideal, raw = sample_ideal(params, 0)
        assert ideal == minimalize([(1, 0), (0, 1)], 2)
        assert raw == count_monomials_up_to(2, 2)

    def test_raw_count_mean(self):
        # E[raw] = p * (C(68,3) - 1) = 50115/4225
        params = ModelParams(3, 65, Fraction(1, 4225), 99)
        trials = 3000
        counts = [sample_ideal(params, t)[1] for t in range(trials)]
        mean = sum(counts) / trials
        expected = 50115 / 4225
        sigma = math.sqrt(expected * (1 - 1 / 4225) / trials)
        assert abs(mean - expected) <= 3 * sigma

    def test_no_repeats_within_degree(self):
        params = ModelParams(2, 6, 0.6, 11)
        for t in range(50):
            raw = sample_raw(params, t)
            assert len(raw) == len(set(raw))

    def test_matches_bernoulli_distribution(self):
        # per-degree binomial sampling vs the direct Bernoulli scan:
        # raw counts and minimal-generator counts should be KS-indistinguishable
        params = ModelParams(2, 3, 0.3, 123)
        trials = 2000
        raw_a, gens_a = [], []
        for t in range(trials):
            ideal, raw = sample_ideal(params, t)
            raw_a.append(raw)
            gens_a.append(ideal.num_generators)
        ref = random.Random(321)
        raw_b, gens_b = [], []
        for _ in range(trials):
            picks = bernoulli_raw(ref, 2, 3, 0.3)
            raw_b.append(len(picks))
            gens_b.append(minimalize(picks, 2).num_generators)
        assert stats.ks_2samp(raw_a, raw_b).pvalue > 1e-3
        assert stats.ks_2samp(gens_a, gens_b).pvalue > 1e-3


class TestProbabilities:
    def test_closed_forms(self):
        params = ModelParams(2, 3, 0.5, 1)
        assert prob_not_in_ideal(params, (1, 1)) == pytest.approx(0.125)
        assert prob_not_in_ideal(params, (1, 0)) == pytest.approx(0.5)
        assert prob_minimal_generator(params, (1, 0)) == pytest.approx(0.5)
        assert prob_minimal_generator(params, (1, 1)) == pytest.approx(0.125)

    def test_preconditions(self):
        params = ModelParams(2, 3, 0.5, 1)
        with pytest.raises(ValueError):
            prob_not_in_ideal(params, (0, 0))
        with pytest.raises(ValueError):
            prob_not_in_ideal(params, (4, 0))

    def test_against_monte_carlo(self):
        params = ModelParams(2, 3, 0.5, 2024)
        trials = 8000
        targets = [(1, 0), (1, 1), (2, 1)]
        not_in = {a: 0 for a in targets}
        min_gen = {a: 0 for a in targets}
        for t in range(trials):
            picks = set(sample_raw(params, t))
            for a in targets:
                divisors = [
                    (i, j)
                    for i in range(a[0] + 1) for j in range(a[1] + 1)
                    if 0 < i + j
                ]
                if not any(d in picks for d in divisors):
                    not_in[a] += 1
                if a in picks and not any(d in picks for d in divisors if d != a):
                    min_gen[a] += 1
        for a in targets:
            p_ni = prob_not_in_ideal(params, a)
            se = math.sqrt(p_ni * (1 - p_ni) / trials)
            assert abs(not_in[a] / trials - p_ni) <= 3 * se + 1e-12
            p_mg = prob_minimal_generator(params, a)
            se = math.sqrt(p_mg * (1 - p_mg) / trials)
            assert abs(min_gen[a] / trials - p_mg) <= 3 * se + 1e-12


class TestThresholds:
    def test_examples(self):
        f, g, h = default_thresholds(2.0, 0, 0.25, 65)
        assert f == pytest.approx(65 ** 1.75)
        assert g == h == pytest.approx(65 ** 2.25)
        f, g, h = default_thresholds(0.5, 0, 0.2, 10**4)
        assert f == pytest.approx(10 ** 1.2)
        f, _, _ = default_thresholds(2.0, 2, 1e-9, 100)
        assert f == pytest.approx(1.0, abs=1e-6)

    def test_epsilon_required(self):
        with pytest.raises(ValueError):
            default_thresholds(1.0, 0, 0.0, 10)
