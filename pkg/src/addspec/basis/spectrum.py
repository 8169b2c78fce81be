"""Eigenvalue dilution through a supersequence, and the downward-closure summary."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

from addspec.basis.coverage import coverage_from_missing
from addspec.basis.sumset import iterated_sumset
from addspec.config import Limits
from addspec.growth.function import Power
from addspec.model import CoverageReport, PreconditionError, to_jsonable
from addspec.sequences.prefix import SequencePrefix
from addspec.supersequence.build import DEFAULT_EPSILON0, SupersequenceResult
from addspec.supersequence.build import build_supersequence

logger = logging.getLogger('addspec')


@dataclass(frozen=True)
class DilutionOutcome:
    """B ~ beta x^h built over A ~ alpha x^h, with both coverages on [0, X]."""

    alpha: float
    beta: float
    result: SupersequenceResult
    coverage_A: CoverageReport
    coverage_B: CoverageReport
    contains: bool

    @property
    def succeeded(self) -> bool:
        return self.result.verdict.holds and self.contains

    def to_json(self) -> dict:
        return {
            'alpha': self.alpha,
            'beta': self.beta,
            'verdict': to_jsonable(self.result.verdict),
            'embedded_count': self.result.embedded_count,
            'filler_count': self.result.filler_count,
            'coverage_A': to_jsonable(self.coverage_A),
            'coverage_B': to_jsonable(self.coverage_B),
            'contains': self.contains,
            'succeeded': self.succeeded,
            }


def synthetic_seed(alpha: float, h: int, K: int, m: int) -> SequencePrefix:
    """{round(alpha k^h) : 1 <= k <= K} together with [0, m]."""
    if alpha <= 0 or h < 1 or K < 1 or m < 0:
        raise PreconditionError(
            'synthetic seed needs alpha > 0, h >= 1, K >= 1, m >= 0',
            alpha=alpha, h=h, K=K, m=m)
    values = {round(alpha * k**h) for k in range(1, K + 1)} | set(range(m + 1))
    return SequencePrefix(tuple(sorted(values)))


def dilute_eigenvalue(A: SequencePrefix, h: int, alpha: float, beta: float,
                      N: int, X: int, epsilon0: float = DEFAULT_EPSILON0,
                      limits: Limits | None = None) -> DilutionOutcome:
    """Supersequence of A against beta x^h; hB must contain hA on [0, X].

    Containment is measured against the embedded prefix of A.
    """
    if not 0 < beta < alpha:
        raise PreconditionError(
            f'dilution needs 0 < beta < alpha, got alpha={alpha}, beta={beta}',
            alpha=alpha, beta=beta)
    limits = limits or Limits.from_env()
    result = build_supersequence(
        A, Power(alpha, h), Power(beta, h), N, epsilon0=epsilon0)
    embedded = A.values[:result.embedded_count]
    sum_a = iterated_sumset(embedded, h, X, limits)
    sum_b = iterated_sumset(result.B.values, h, X, limits)
    cov_a = coverage_from_missing(h, X, sum_a.missing(), limits.report_limit)
    cov_b = coverage_from_missing(h, X, sum_b.missing(), limits.report_limit)
    contains = sum_b.issuperset(sum_a)
    logger.info('dilution alpha=%g beta=%g: verdict %s, containment %s',
                alpha, beta, result.verdict.holds, contains)
    return DilutionOutcome(alpha, beta, result, cov_a, cov_b, contains)


def spectrum_interval_report(
        h: int, samples: Sequence[tuple[float, Sequence[tuple[float, bool]]]]) -> dict:
    """Check that every tested beta below a successful alpha also succeeded.

    `samples` pairs each alpha with its (beta, succeeded) outcomes.
    """
    ceiling = 1 / math.factorial(h)
    rows = []
    gaps = []
    for alpha, outcomes in samples:
        outcomes = sorted(outcomes)
        for beta, ok in outcomes:
            if beta < alpha and not ok:
                gaps.append([alpha, beta])
        rows.append({
            'alpha': alpha,
            'betas': [beta for beta, _ in outcomes],
            'succeeded': [ok for _, ok in outcomes],
            'above_ceiling': alpha > ceiling,
            })
    return {
        'h': h,
        'ceiling': ceiling,
        'samples': rows,
        'downward_closed': (not gaps) if rows else None,
        'failures': gaps,
        }
