"""Tests for addspec.equidist -- exact fractional parts, power relations, middle-zone scans."""

from fractions import Fraction
from math import gcd

import mpmath
import numpy as np
import pytest
from addspec.config import Limits
from addspec.equidist.fracpart import FracPartQuery, Ordering, floor_log, fracpart_compare
from addspec.equidist.relation import Irrational, PerfectPower, RationalLog
from addspec.equidist.relation import power_relation, rational_case_witness
from addspec.equidist.scan import exact_zone, impossibility_scan, theta_enclosure
from addspec.model import CapacityError, HypothesisError, PreconditionError


def _high_precision_frac(k, u, v):
    with mpmath.workprec(256):
        t = k * mpmath.log(u) / mpmath.log(v)
        return t - mpmath.floor(t)


class TestFracPart:
    """Exact comparisons of frac(k log_v u) with p/q."""

    def test_above_half(self):
        """frac(log2 3) > 1/2 since 3^2 > 2^3."""
        assert fracpart_compare(1, 3, 2, 1, 2) is Ordering.GT

    def test_below_three_quarters(self):
        """frac(log2 3) < 3/4 since 3^4 < 2^7."""
        assert fracpart_compare(1, 3, 2, 3, 4) is Ordering.LT

    def test_integer_ratio(self):
        """log2 4 = 2 has fractional part exactly 0."""
        for k in (1, 7, 50):
            assert fracpart_compare(k, 4, 2, 0, 1) is Ordering.EQ

    def test_agrees_with_high_precision(self):
        """Exact answers match a 256-bit evaluation away from ties."""
        for u, v in ((3, 2), (5, 3), (10, 7)):
            for k in range(1, 201):
                frac = _high_precision_frac(k, u, v)
                for p, q in ((1, 4), (1, 2), (3, 4)):
                    expected = Ordering.LT if frac < mpmath.mpf(p) / q else Ordering.GT
                    assert fracpart_compare(k, u, v, p, q) is expected

    def test_random_queries_match_high_precision(self):
        """10^4 random (k, u, v, p/q) queries agree with a 256-bit evaluation."""
        rng = np.random.default_rng(5)
        pairs = [(u, v) for v in range(2, 30) for u in range(v + 1, 31)
                 if power_relation(u, v) == Irrational()]
        with mpmath.workprec(256):
            ratios = {(u, v): mpmath.log(u) / mpmath.log(v) for u, v in pairs}
            for _ in range(10_000):
                u, v = pairs[int(rng.integers(len(pairs)))]
                k = int(rng.integers(1, 201))
                q = int(rng.integers(1, 13))
                p = int(rng.integers(0, q))
                t = k * ratios[u, v]
                frac = t - mpmath.floor(t)
                expected = Ordering.LT if frac < mpmath.mpf(p) / q else Ordering.GT
                assert fracpart_compare(k, u, v, p, q) is expected

    def test_floor_log(self):
        """floor(12 log2 3) = 19: 2^19 <= 3^12 < 2^20."""
        assert floor_log(12, 3, 2) == 19
        query = FracPartQuery.of(12, 3, 2)
        assert query.floor_n == 19
        assert query.bracket_holds() is True

    def test_power_bit_cap(self):
        """Powers beyond max_power_bits raise CapacityError."""
        with pytest.raises(CapacityError):
            fracpart_compare(100, 3, 2, 1, 2, Limits(max_power_bits=10))

    def test_bad_arguments(self):
        """u > v >= 2 and 0 <= p < q are required."""
        with pytest.raises(PreconditionError):
            fracpart_compare(1, 2, 3, 1, 2)
        with pytest.raises(PreconditionError):
            fracpart_compare(1, 3, 2, 2, 2)
        with pytest.raises(PreconditionError):
            fracpart_compare(0, 3, 2, 1, 2)


class TestPowerRelation:
    """Integer, rational and irrational logarithm ratios."""

    def test_examples(self):
        """(8,2), (8,4) and (6,2)."""
        assert power_relation(8, 2) == PerfectPower(3)
        assert power_relation(8, 4) == RationalLog(3, 2)
        assert power_relation(6, 2) == Irrational()

    def test_exhaustive_small_pairs(self):
        """Every pair 2 <= v < u <= 100 lands in exactly one verified case."""
        rational = []
        for v in range(2, 100):
            for u in range(v + 1, 101):
                relation = power_relation(u, v)
                if isinstance(relation, PerfectPower):
                    assert v**relation.r == u
                elif isinstance(relation, RationalLog):
                    r, s = relation.r, relation.s
                    assert s > 1 and gcd(r, s) == 1 and u**s == v**r
                    rational.append((u, v, r, s))
                else:
                    assert not any(u**s == v**r for s in range(1, 8) for r in range(1, 8))
        assert len(rational) == 9
        for u, v, r, s in rational + [(128, 32, 7, 5)]:
            assert rational_case_witness(u, v, r, s, 100)['distance'] == Fraction(1, s)

    def test_rejects_order(self):
        """u must exceed v."""
        with pytest.raises(PreconditionError):
            power_relation(2, 8)


class TestRationalWitness:
    """Residue classes bounded away from integers."""

    def test_eight_over_four(self):
        """log4 8^k = 3k/2: odd k sit exactly 1/2 from the integers."""
        report = rational_case_witness(8, 4, 3, 2, 10)
        assert report['ell'] == 1
        assert report['distance'] == Fraction(1, 2)
        assert report['exact_relation'] is True
        assert report['class_size'] == 5

    def test_thirty_two_over_eight(self):
        """log8 32^k = 5k/3: k = 2 mod 3 gives 1/3."""
        report = rational_case_witness(32, 8, 5, 3, 30)
        assert report['ell'] == 2
        assert report['distance'] == Fraction(1, 3)

    def test_perfect_power_case(self):
        """s = 1 belongs to the perfect-power case."""
        with pytest.raises(PreconditionError):
            rational_case_witness(8, 2, 3, 1, 10)

    def test_wrong_relation(self):
        """(r, s) must match the actual relation."""
        with pytest.raises(HypothesisError):
            rational_case_witness(8, 4, 2, 3, 10)


class TestScan:
    """Middle-zone scans for irrational log ratios."""

    def test_three_over_two_small(self):
        """Closest power pair below k = 20 is 3^12 against 2^19."""
        report = impossibility_scan(3, 2, 20)
        assert report.first_violation == 1
        assert report.min_gap_k == 12
        assert report.min_gap_n == 19
        assert report.min_gap_exact == Fraction(7153, 531441)
        assert report.min_relative_gap == pytest.approx(7153 / 531441, rel=1e-9)
        assert report.epsilon_star == pytest.approx(1 - 2**-0.25)

    def test_three_over_two_equidistributed(self):
        """About half of k <= 10^5 fall in the middle zone."""
        report = impossibility_scan(3, 2, 100_000)
        assert 0.48 <= report.hits_middle / report.K <= 0.52

    def test_five_over_three(self):
        """The middle zone is hit for 5 against 3 as well."""
        assert impossibility_scan(5, 3, 10_000).hits_middle >= 1

    def test_rational_pairs_rejected(self):
        """Scans need an irrational ratio."""
        with pytest.raises(HypothesisError):
            impossibility_scan(8, 4, 100)
        with pytest.raises(HypothesisError):
            impossibility_scan(8, 2, 100)

    def test_threads_agree(self):
        """Chunked parallel scans report the same statistics."""
        assert impossibility_scan(3, 2, 3000, threads=2) == impossibility_scan(3, 2, 3000)

    def test_trace_matches_exact_zones(self):
        """Every traced zone equals the exact classification."""
        rows = []
        impossibility_scan(3, 2, 60, trace=rows)
        assert [k for k, _, _ in rows] == list(range(1, 61))
        for k, n, zone in rows:
            assert zone == exact_zone(k, 3, 2)
            assert n == floor_log(k, 3, 2)

    def test_zones(self):
        """log2 3 = 1.585: k = 1 middle, k = 2 low, k = 3 high."""
        assert [exact_zone(k, 3, 2) for k in (1, 2, 3)] == ['middle', 'low', 'high']

    def test_theta_enclosure(self):
        """The fixed-point bracket contains log2 3."""
        lo, hi = theta_enclosure(3, 2, bits=64)
        with mpmath.workprec(200):
            theta = mpmath.log(3) / mpmath.log(2) * mpmath.mpf(2) ** 64
            assert lo < theta < hi

    def test_bad_k(self):
        """K must be positive."""
        with pytest.raises(PreconditionError):
            impossibility_scan(3, 2, 0)
