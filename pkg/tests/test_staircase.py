import itertools
import math

import pytest

from rmideal.errors import ArityError, GuardExceededError, NotZeroDimensionalError
from rmideal.ideals import contains, minimalize
from rmideal.sampling import default_thresholds
from rmideal.staircase import (
    BandSpec,
    band_check,
    corner_product,
    count_standard_monomials,
    hilbert_function,
    is_zero_dimensional,
    max_staircase_product,
    staircase_corners,
    tail_check,
)
from conftest import bernoulli_ideal, monomials_of_degree


def brute_standard_count(ideal):
    """Direct enumeration oracle for zero-dimensional standard monomial counts."""
    caps = [next(g[i] for g in ideal.generators if sum(g) == g[i]) for i in range(ideal.n)]
    count = 0
    for m in itertools.product(*(range(c) for c in caps)):
        if not contains(ideal, m):
            count += 1
    return count


def brute_max_product(ideal, max_degree):
    best = 0
    for d in range(0, max_degree + 1):
        for m in monomials_of_degree(ideal.n, d):
            if not contains(ideal, m):
                best = max(best, corner_product(m))
    return best


class TestCountStandardMonomials:
    def test_examples(self):
        assert count_standard_monomials(minimalize([(2, 0), (0, 3)], 2)) == 6
        assert count_standard_monomials(
            minimalize([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)) == 1
        assert count_standard_monomials(minimalize([(2, 0), (1, 1), (0, 3)], 2)) == 4

    def test_pure_power_boxes(self, rng):
        for _ in range(20):
            n = rng.randint(1, 4)
            exps = [rng.randint(1, 6) for _ in range(n)]
            gens = [tuple(e if j == i else 0 for j in range(n)) for i, e in enumerate(exps)]
            assert count_standard_monomials(minimalize(gens, n)) == math.prod(exps)

    def test_requires_zero_dimensional(self):
        with pytest.raises(NotZeroDimensionalError):
            count_standard_monomials(minimalize([(1, 1)], 2))
        with pytest.raises(NotZeroDimensionalError):
            count_standard_monomials(minimalize([], 2))

    def test_against_enumeration(self, rng):
        hits = 0
        while hits < 60:
            n = rng.choice([2, 3])
            ideal = bernoulli_ideal(rng, n, 7, 0.25)
            if not is_zero_dimensional(ideal):
                continue
            hits += 1
            assert count_standard_monomials(ideal) == brute_standard_count(ideal)

    def test_equals_hilbert_sum_over_degrees(self, rng):
        hits = 0
        while hits < 25:
            ideal = bernoulli_ideal(rng, 2, 8, 0.3)
            if not is_zero_dimensional(ideal):
                continue
            hits += 1
            socle = sum(next(g[i] for g in ideal.generators if sum(g) == g[i])
                        for i in range(2))
            total = sum(hilbert_function(ideal, t) for t in range(socle + 1))
            assert count_standard_monomials(ideal) == total


class TestHilbertFunction:
    def test_examples(self):
        assert hilbert_function(minimalize([], 2), 3) == 4
        assert hilbert_function(minimalize([(1, 1)], 2), 5) == 2
        assert hilbert_function(minimalize([(1, 1, 0)], 3), 2) == 5

    def test_zero_ideal_general(self):
        for n, t in ((1, 5), (3, 4), (4, 3)):
            assert hilbert_function(minimalize([], n), t) == math.comb(n + t - 1, n - 1)

    def test_guard(self):
        with pytest.raises(GuardExceededError):
            hilbert_function(minimalize([], 5), 10**6, guard=10**6)


class TestBandCheck:
    def test_table1_generator_inside_band(self):
        # product of (8+1)(35+1)(5+1) = 1944 against the k=2, eps=1/4, D=65 band
        f0, g0, _ = default_thresholds(2.0, 0, 0.25, 65)
        assert corner_product((8, 35, 5)) == 1944
        assert f0 == pytest.approx(65 ** 1.75) and g0 == pytest.approx(65 ** 2.25)
        ok, witness = band_check(minimalize([(8, 35, 5)], 3), BandSpec(f0, g0, g0, 65))
        assert ok and witness is None

    def test_zero_ideal_vacuous(self):
        assert band_check(minimalize([], 3), BandSpec(5, 6, 6, 10)) == (True, None)

    def test_unbounded_band(self):
        ideal = minimalize([(7, 3), (0, 9)], 2)
        assert band_check(ideal, BandSpec(0.0, math.inf, math.inf, 10))[0]

    def test_witness_reported(self):
        ideal = minimalize([(1, 0), (0, 9)], 2)
        ok, witness = band_check(ideal, BandSpec(3.0, 100.0, 100.0, 10))
        assert not ok and witness == (1, 0)


class TestMaxStaircaseProduct:
    def test_examples(self):
        assert max_staircase_product(minimalize([(2, 0), (0, 3)], 2), 5) == 6
        assert max_staircase_product(minimalize([], 1), 9) == 10
        assert max_staircase_product(minimalize([(1, 1)], 2), 10) == 11

    def test_budget_balances_product(self):
        # zero ideal: the optimum splits the degree budget evenly
        assert max_staircase_product(minimalize([], 2), 10) == 36
        assert max_staircase_product(minimalize([], 2), 11) == 42

    def test_against_enumeration(self, rng):
        for _ in range(50):
            n = rng.choice([1, 2, 3])
            ideal = bernoulli_ideal(rng, n, 6, 0.25)
            for budget in (0, 3, 7, 11):
                assert max_staircase_product(ideal, budget) == brute_max_product(ideal, budget)

    def test_monotone_in_budget_and_redundancy_invariant(self, rng):
        for _ in range(20):
            ideal = bernoulli_ideal(rng, 2, 8, 0.3)
            values = [max_staircase_product(ideal, d) for d in range(0, 14)]
            assert values == sorted(values)
            if not ideal.is_zero:
                g = ideal.generators[0]
                padded = list(ideal.generators) + [tuple(e + 1 for e in g)]
                assert max_staircase_product(minimalize(padded, 2), 9) == values[9]

    def test_tail_check(self):
        ideal = minimalize([(2, 0), (0, 3)], 2)
        ok, peak = tail_check(ideal, 6.0, 12)
        assert ok and peak == 6
        assert not tail_check(ideal, 5.9, 12)[0]


class TestStaircaseCorners:
    def test_two_generator_staircase(self):
        outer, inner = staircase_corners(minimalize([(2, 0), (0, 3)], 2))
        assert outer == [(0, 3), (2, 0)]
        assert inner == [(2, 3)]

    def test_three_generator_staircase(self):
        outer, inner = staircase_corners(minimalize([(3, 0), (1, 1), (0, 2)], 2))
        assert outer == [(0, 2), (1, 1), (3, 0)]
        assert inner == [(1, 2), (3, 1)]

    def test_single_generator(self):
        assert staircase_corners(minimalize([(4, 5)], 2))[1] == []

    def test_wrong_arity(self):
        with pytest.raises(ArityError):
            staircase_corners(minimalize([(1, 1, 1)], 3))

    def test_inner_corners_are_first_syzygy_witnesses(self, rng):
        # an inner corner (a, b) is the lcm of adjacent generators: it lies in
        # the ideal, the shifted point (a-1, b-1) is standard, and both of that
        # point's coordinate successors are members
        for _ in range(30):
            ideal = bernoulli_ideal(rng, 2, 8, 0.3)
            if ideal.is_zero:
                continue
            _, inner = staircase_corners(ideal)
            for a, b in inner:
                assert contains(ideal, (a, b))
                assert contains(ideal, (a - 1, b))
                assert contains(ideal, (a, b - 1))
                assert not contains(ideal, (a - 1, b - 1))
