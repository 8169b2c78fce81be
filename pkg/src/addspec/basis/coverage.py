"""Window-basis verification, the counting inequalities, eigenvalue and thin-basis reports."""

import logging
import math

import numpy as np

from addspec.basis.sumset import iterated_sumset
from addspec.config import Limits
from addspec.model import CoverageReport, EigenvalueReport, PreconditionError
from addspec.sequences.prefix import SequencePrefix
from addspec.sequences.verdict import tail_window

logger = logging.getLogger('addspec')


def coverage_from_missing(h: int, X: int, missing: np.ndarray,
                          report_limit: int) -> CoverageReport:
    """Build a CoverageReport from the sorted missing values of hA in [0, X]."""
    count = int(missing.size)
    largest = int(missing[-1]) if count else None
    if largest is None:
        n0 = 0
    elif largest < X:
        n0 = largest + 1
    else:
        n0 = None
    return CoverageReport(
        h=h, x_max=X,
        missing=[int(m) for m in missing[:report_limit]],
        missing_count=count,
        largest_missing=largest,
        n0_window=n0,
        is_window_basis=n0 is not None and X - n0 >= X / 2)


def verify_basis(A: SequencePrefix, h: int, X: int,
                 limits: Limits | None = None) -> CoverageReport:
    """Coverage of [0, X] by hA; a window basis covers [n0, X] with n0 <= X/2."""
    limits = limits or Limits.from_env()
    bits = iterated_sumset(A.distinct_sorted(), h, X, limits)
    report = coverage_from_missing(h, X, bits.missing(), limits.report_limit)
    logger.debug('verify_basis h=%d X=%d missing=%d', h, X, report.missing_count)
    return report


def _require_window_basis(report: CoverageReport) -> int:
    if not report.is_window_basis:
        raise PreconditionError(
            f'coverage report for h={report.h} is not a window basis on [0, {report.x_max}]',
            n0_window=report.n0_window)
    return report.n0_window


def check_counting_inequality(A: SequencePrefix, h: int,
                              report: CoverageReport) -> bool:
    """x - n0 < C(A(0,x)+h-1, h) <= (A(0,x)+h-1)^h / h! for every x in [n0, X].

    A(0,x) is constant between consecutive elements while x - n0 grows, so
    checking the right end of every constant stretch covers every x.
    """
    n0 = _require_window_basis(report)
    X = report.x_max
    values = [a for a in A.distinct_sorted() if a <= X]
    ends = [a - 1 for a in values if a - 1 >= n0] + [X]
    fact = math.factorial(h)
    for x in sorted(set(ends)):
        c = A.count(0, x)
        binom = math.comb(c + h - 1, h)
        if not x - n0 < binom or binom * fact > (c + h - 1) ** h:
            logger.info('counting inequality fails at x=%d (A(0,x)=%d)', x, c)
            return False
    return True


def eigenvalue_report(A: SequencePrefix, h: int,
                      report: CoverageReport) -> EigenvalueReport:
    """alpha_hat = mean a_n/n^h on the tail of A, and a_n - n0 < (n+h-1)^h/h!
    (exact) for every a_n <= X."""
    n0 = _require_window_basis(report)
    values = A.distinct_sorted()
    start, end = tail_window(len(values))
    alpha_hat = float(np.mean(
        [values[n - 1] / n**h for n in range(start, end + 1)]))
    fact = math.factorial(h)
    ineq2 = all(
        (a - n0) * fact < (n + h - 1) ** h
        for n, a in enumerate(values, 1) if a <= report.x_max)
    return EigenvalueReport(
        h=h, alpha_hat=alpha_hat, bound=1 / fact,
        ineq1_ok=check_counting_inequality(A, h, report), ineq2_ok=ineq2)


def thin_basis_report(A: SequencePrefix, h: int) -> dict:
    """Measured c1 <= a_n/n^h <= c2 on the tail, and A(0,x)/x^(1/h) at x = a_N.

    A basis of order h has A(0,x) >= (h! x)^(1/h) asymptotically, so the
    counting ratio is set against (h!)^(1/h).
    """
    values = A.distinct_sorted()
    start, end = tail_window(len(values))
    ratios = [values[n - 1] / n**h for n in range(start, end + 1)]
    x = values[-1]
    counting = len(values) / x ** (1 / h) if x > 0 else math.inf
    floor = math.factorial(h) ** (1 / h)
    return {
        'h': h,
        'c1': min(ratios),
        'c2': max(ratios),
        'thin': min(ratios) > 0,
        'counting_ratio': counting,
        'counting_floor': floor,
        'window': [start, end],
        }
