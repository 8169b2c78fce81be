"""Tests for addspec.sequences -- prefixes, counting, rearrangements, verdicts."""

import numpy as np
import pytest
from addspec.growth.function import Power
from addspec.model import BijectionError, PreconditionError
from addspec.sequences.permutation import Explicit, PowerSwap, SwapRule, permutation_from_json
from addspec.sequences.permutation import rearrange, resolve, sort_rearrangement
from addspec.sequences.prefix import Complement, PredicateSet, SequencePrefix, counting
from addspec.sequences.prefix import density_estimate
from addspec.sequences.tauberian import tauberian_experiment
from addspec.sequences.verdict import asymptotic_verdict, limit_points
from addspec.sequences.verdict import rearrangement_growth_check

from tests.conftest import make_prefix, squares_with_zero


class TestPrefix:
    """SequencePrefix construction and counting."""

    def test_counting_naturals(self):
        """{1..100} has 10 elements in [0, 10]."""
        assert counting(make_prefix(range(1, 101)), 0, 10) == 10

    def test_counting_squares(self):
        """Ten positive squares up to 100."""
        assert counting(make_prefix(k * k for k in range(1, 50)), 0, 100) == 10

    def test_counting_empty_range(self):
        """{5} has nothing in [6, 10]."""
        assert counting(make_prefix([5]), 6, 10) == 0

    def test_counting_rejects_bad_range(self):
        """y > x or y < 0 is a precondition failure."""
        with pytest.raises(PreconditionError):
            counting(make_prefix([1, 2]), 5, 3)
        with pytest.raises(PreconditionError):
            counting(make_prefix([1, 2]), -1, 3)

    def test_counting_matches_brute_force(self):
        """count(y, x) agrees with a direct scan on random data."""
        rng = np.random.default_rng(5)
        values = sorted(set(int(v) for v in rng.integers(0, 1000, 200)))
        A = make_prefix(values)
        for y, x in rng.integers(0, 1000, (50, 2)):
            y, x = int(min(y, x)), int(max(y, x))
            assert counting(A, y, x) == sum(1 for v in values if y <= v <= x)

    def test_counting_additive(self):
        """A(y, x) = A(y, m) + A(m + 1, x) for y <= m < x."""
        rng = np.random.default_rng(6)
        A = make_prefix(sorted(set(int(v) for v in rng.integers(0, 5000, 800))))
        for y, m, x in np.sort(rng.integers(0, 5000, (200, 3)), axis=1):
            y, m, x = int(y), int(m), int(x)
            if m < x:
                assert counting(A, y, x) == counting(A, y, m) + counting(A, m + 1, x)

    def test_rejects_negative_and_empty(self):
        """Terms must be nonnegative and the prefix nonempty."""
        with pytest.raises(PreconditionError):
            make_prefix([1, -2])
        with pytest.raises(PreconditionError):
            make_prefix([])

    def test_strictly_increasing_flag(self):
        """The flag tracks the raw order, counting uses distinct values."""
        A = make_prefix([3, 1, 3, 2])
        assert A.strictly_increasing is False
        assert A.distinct_sorted() == (1, 2, 3)
        assert A.count(0, 10) == 3
        assert make_prefix([1, 2, 5]).strictly_increasing is True

    def test_large_integers_serialize_as_strings(self):
        """Terms beyond double range survive to_json intact."""
        A = make_prefix([3**200])
        assert A.to_json() == [str(3**200)]

    def test_complement(self):
        """Complement counts the integers missing from the prefix."""
        C = Complement(make_prefix([1, 4, 9]))
        assert 2 in C and 4 not in C and -1 not in C
        assert C.count(0, 10) == 8

    def test_predicate_set(self):
        """PredicateSet counts through its cumulative mask."""
        C = PredicateSet(lambda a: a % 3 == 0, 100)
        assert C.count(0, 99) == 34
        assert C.count(1, 2) == 0
        assert 9 in C
        with pytest.raises(PreconditionError):
            C.count(0, 101)


class TestPermutations:
    """Explicit, swap and power-swap permutations."""

    def test_explicit_swap(self):
        """Swapping indices 1 and 2 of {1,2,3,4}."""
        B = rearrange(make_prefix([1, 2, 3, 4]), Explicit((2, 1, 3, 4)))
        assert B.values == (2, 1, 3, 4)

    def test_identity(self):
        """The empty swap rule leaves A unchanged."""
        A = make_prefix([5, 7, 11])
        assert rearrange(A, SwapRule(())) == A

    def test_preserves_multiset(self):
        """Rearranging never changes the values, only their order."""
        rng = np.random.default_rng(3)
        A = make_prefix(int(v) for v in rng.integers(0, 100, 400))
        mapping = tuple(int(i) + 1 for i in rng.permutation(400))
        B = rearrange(A, Explicit(mapping))
        assert sorted(B.values) == sorted(A.values)
        assert B.values != A.values

    def test_powerswap(self):
        """a_sigma(2)=4, a_sigma(4)=2, a_sigma(8)=16, a_sigma(16)=8 for a_n = n."""
        B = rearrange(make_prefix(range(1, 2048)), PowerSwap())
        assert (B.term(2), B.term(4), B.term(8), B.term(16)) == (4, 2, 16, 8)
        assert B.term(512) == 1024 and B.term(1024) == 512
        assert B.term(3) == 3

    def test_powerswap_window_splitting_a_pair(self):
        """N = 2^10 - 1 would separate 512 from 1024."""
        with pytest.raises(BijectionError) as exc:
            resolve(PowerSwap(), 1023)
        assert exc.value.violation['suggested'] == [511, 2047]
        assert 'N=2047' in str(exc.value)

    def test_powerswap_window_not_below_power_of_two(self):
        """Window must be one less than a power of two."""
        with pytest.raises(BijectionError) as exc:
            resolve(PowerSwap(), 1000)
        assert exc.value.violation['suggested'] == [511, 2047]

    def test_explicit_not_bijective(self):
        """Repeated images are rejected."""
        with pytest.raises(BijectionError) as exc:
            resolve(Explicit((1, 1, 3)), 3)
        assert exc.value.violation['first_bad'] == 2

    def test_explicit_wrong_length(self):
        """Mapping length must equal the window."""
        with pytest.raises(BijectionError):
            resolve(Explicit((1, 2)), 3)

    def test_swap_outside_window(self):
        """Swap pairs must lie in 1..N."""
        with pytest.raises(BijectionError):
            resolve(SwapRule(((1, 9),)), 4)

    def test_swap_pairs_overlap(self):
        """Swap pairs must be disjoint."""
        with pytest.raises(BijectionError):
            resolve(SwapRule(((1, 2), (2, 3))), 4)

    def test_from_json(self):
        """JSON and the bare word 'powerswap' both parse."""
        assert permutation_from_json('powerswap') == PowerSwap()
        assert permutation_from_json('{"kind":"swap","pairs":[[1,2]]}') == SwapRule(((1, 2),))
        assert permutation_from_json({'kind': 'explicit', 'mapping': [2, 1]}) == Explicit((2, 1))
        with pytest.raises(PreconditionError):
            permutation_from_json('{"kind":"cycle"}')


class TestSortRearrangement:
    """Increasing rearrangement and its permutation."""

    def test_small(self):
        """{3,1,2} sorts via sigma = (2,3,1)."""
        B, sigma = sort_rearrangement(make_prefix([3, 1, 2]))
        assert B.values == (1, 2, 3)
        assert sigma == Explicit((2, 3, 1))

    def test_already_increasing(self):
        """Sorted input gives the identity permutation."""
        _, sigma = sort_rearrangement(make_prefix([1, 5, 9]))
        assert sigma.mapping == (1, 2, 3)

    def test_ties_are_stable(self):
        """Equal terms keep their original relative order."""
        _, sigma = sort_rearrangement(make_prefix([2, 1, 2, 1]))
        assert sigma.mapping == (2, 4, 1, 3)

    def test_sorted_noisy_squares(self):
        """100 sorted noisy k^2 prefixes stay within 0.12 of k^2 at N = 10^4."""
        report = tauberian_experiment(N=10_000, trials=100, noise=0.05, seed=1)
        assert report['all_hold'] is True
        assert report['max_sup_deviation'] <= 0.12
        short = tauberian_experiment(N=1000, trials=100, noise=0.05, seed=1)
        assert report['max_sup_deviation'] <= short['max_sup_deviation'] + 0.01

    def test_idempotent(self):
        """Sorting a sorted rearrangement changes nothing."""
        rng = np.random.default_rng(11)
        A = make_prefix(int(v) for v in rng.integers(0, 10_000, 500))
        B, _ = sort_rearrangement(A)
        C, sigma = sort_rearrangement(B)
        assert C == B
        assert sigma.mapping == tuple(range(1, 501))

    def test_tauberian_is_seeded(self):
        """Same seed, same deviations."""
        a = tauberian_experiment(N=500, trials=2, seed=9)
        b = tauberian_experiment(N=500, trials=2, seed=9)
        assert a['sup_deviations'] == b['sup_deviations']

    def test_tauberian_rejects_bad_noise(self):
        """Noise must lie in [0, 1)."""
        with pytest.raises(PreconditionError):
            tauberian_experiment(N=100, trials=1, noise=1.5)


class TestVerdict:
    """Asymptotic verdicts on the tail window."""

    def test_identity_sequence(self):
        """a_n = n against x holds with zero deviation."""
        v = asymptotic_verdict(make_prefix(range(1, 101)), Power(1, 1), 0.01)
        assert v.holds is True
        assert v.sup_deviation == 0.0
        assert (v.window_start, v.window_end) == (50, 100)

    def test_twice_squares(self):
        """2k^2 against 2x^2 holds at N = 10^4."""
        A = make_prefix(2 * k * k for k in range(1, 10_001))
        assert asymptotic_verdict(A, Power(2, 2), 0.01).holds is True

    def test_powerswap_limit_points(self):
        """The power-swap rearrangement of n fails with limit points 1/2, 1, 2."""
        B = rearrange(make_prefix(range(1, 2048)), PowerSwap())
        v = asymptotic_verdict(B, Power(1, 1), 0.4)
        assert v.holds is False
        means = [p['mean'] for p in v.limit_points]
        assert means == pytest.approx([0.5, 1.0, 2.0])

    def test_threshold_index(self):
        """threshold_index is the first index after the last violation."""
        A = make_prefix([50, 50, 50] + list(range(4, 31)))
        v = asymptotic_verdict(A, Power(1, 1), 0.01)
        assert v.threshold_index == 4
        assert v.holds is True

    def test_short_prefix(self):
        """Fewer than ten terms cannot support a verdict."""
        with pytest.raises(PreconditionError):
            asymptotic_verdict(make_prefix(range(1, 6)), Power(1, 1), 0.1)

    def test_limit_points_cluster(self):
        """Ratios within 5% share a cluster."""
        points = limit_points(np.array([1.0, 1.01, 1.02, 2.0, np.nan]))
        assert [p['count'] for p in points] == [3, 1]


class TestRearrangementGrowth:
    """Growth comparison between a sequence and a rearrangement."""

    def test_identity_rearrangement_is_consistent(self):
        """Both verdicts hold and f = g."""
        A = make_prefix(2 * k * k for k in range(1, 1001))
        report = rearrangement_growth_check(A, SwapRule(()), Power(2, 2), Power(2, 2), 0.01)
        assert report['both_hold'] is True
        assert report['tail_growth_gap'] == pytest.approx(0.0)
        assert report['consistent'] is True

    def test_different_growth_fails_one_verdict(self):
        """A ~ 2x^2 cannot also be ~ x^2; the check stays consistent."""
        A = make_prefix(2 * k * k for k in range(1, 1001))
        report = rearrangement_growth_check(A, SwapRule(()), Power(2, 2), Power(1, 2), 0.01)
        assert report['verdict_rearranged'].holds is False
        assert report['consistent'] is True
        assert report['bound'] == pytest.approx(0.0302)

    def test_adjacent_swaps_against_nearby_growth(self):
        """Swapping neighbours of 2k^2 still tracks 2.02 x^2; f and g stay within the bound."""
        A = make_prefix(2 * k * k for k in range(1, 1001))
        sigma = SwapRule(tuple((2 * j - 1, 2 * j) for j in range(1, 501)))
        report = rearrangement_growth_check(A, sigma, Power(2, 2), Power(2.02, 2), 0.02)
        assert report['verdict_A'].holds is True
        assert report['verdict_rearranged'].holds is True
        assert report['both_hold'] is True
        assert report['tail_growth_gap'] == pytest.approx(1 - 2 / 2.02)
        assert report['consistent'] is True


class TestDensity:
    """Empirical densities on the tail window."""

    def test_all_integers(self):
        """Every integer: density 1."""
        d = density_estimate(PredicateSet(lambda a: np.ones_like(a, dtype=bool), 10**6), 10**6)
        assert d.lower == pytest.approx(1.0, abs=1e-6)
        assert d.upper == pytest.approx(1.0, abs=1e-6)

    def test_even_numbers(self):
        """Evens: density one half."""
        d = density_estimate(PredicateSet(lambda a: a % 2 == 0, 10**6), 10**6)
        assert d.lower == pytest.approx(0.5, abs=1e-5)
        assert d.upper == pytest.approx(0.5, abs=1e-5)

    def test_squares_sparse(self):
        """Squares up to 10^6 have density below 0.002."""
        assert density_estimate(squares_with_zero(10**6), 10**6).upper <= 0.002

    def test_density_decreases(self):
        """Superlinear sequences thin out as x_max grows."""
        A = squares_with_zero(10**6)
        assert density_estimate(A, 10**6).upper < density_estimate(A, 10**4).upper

    def test_rejects_unsorted(self):
        """Density needs a strictly increasing sequence."""
        with pytest.raises(PreconditionError):
            density_estimate(SequencePrefix((3, 1, 2)), 10)
