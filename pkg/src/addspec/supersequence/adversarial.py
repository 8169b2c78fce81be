"""Adversarial A ~ f with no supersequence B ~ g when g grows exponentially."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

from addspec.growth.function import GrowthFunction, Interpolated
from addspec.growth.interpolate import interpolate_above
from addspec.model import HypothesisError, PreconditionError
from addspec.sequences.prefix import SequencePrefix

logger = logging.getLogger('addspec')

DEFAULT_GAMMA = 0.1


@dataclass(frozen=True)
class AdversarialResult:
    f: Interpolated
    A: SequencePrefix
    witness: float
    witness_k: int
    half_step_inf: float
    upper_step_inf: float

    def to_json(self) -> dict:
        return {
            'f': self.f.to_json(),
            'A': self.A.to_json(),
            'witness': self.witness,
            'witness_k': self.witness_k,
            'half_step_inf': self.half_step_inf,
            'upper_step_inf': self.upper_step_inf,
            }


def nearest_miss(g: GrowthFunction, y: float) -> float:
    """inf over integers n of |y/g(n) - 1|, read off the two n bracketing g^-1(y)."""
    x = g.inverse(y)
    first = max(1, math.ceil(g.domain_start))
    candidates = {max(first, math.floor(x)), max(first, math.floor(x) + 1)}
    log_y = math.log(y)
    return min(abs(math.expm1(log_y - g.log_eval(n))) for n in candidates)


def adversarial_construction(g: GrowthFunction, m: Sequence[int],
                             gamma: float = DEFAULT_GAMMA) -> AdversarialResult:
    """lambda_k = g(m_k + 1/2), f through the knots (k, lambda_k), a_k = floor(f(k)).

    Needs g(m_k+1/2)/g(m_k) and g(m_k+1)/g(m_k+1/2) at least 1+gamma, and
    g(m_{k+1}+1/2) - g(m_k+1/2) >= 1, for every k; the first failing k is
    reported.
    """
    m = [int(x) for x in m]
    if len(m) < 2:
        raise PreconditionError('need at least two indices m_k', K=len(m))
    if any(b <= a for a, b in zip(m, m[1:])) or m[0] < g.domain_start:
        raise PreconditionError('m must be strictly increasing inside the domain of g')
    if gamma <= 0:
        raise PreconditionError(f'gamma must be positive, got {gamma}', gamma=gamma)

    half_steps, upper_steps, knots = [], [], []
    for k, mk in enumerate(m, 1):
        low, mid, high = g.log_eval(mk), g.log_eval(mk + 0.5), g.log_eval(mk + 1)
        half, upper = math.exp(mid - low), math.exp(high - mid)
        if half < 1 + gamma or upper < 1 + gamma:
            raise HypothesisError(
                f'g lacks exponential growth at k={k}: steps {half:.4g}, {upper:.4g}'
                f' below {1 + gamma}', k=k, half_step=half, upper_step=upper)
        half_steps.append(half)
        upper_steps.append(upper)
        knots.append((k, g.eval(mk + 0.5)))
    for k in range(1, len(knots)):
        if knots[k][1] - knots[k - 1][1] < 1:
            raise HypothesisError(
                f'lambda_{k + 1} - lambda_{k} < 1', k=k,
                gap=knots[k][1] - knots[k - 1][1])

    f = interpolate_above(g, knots)
    A = SequencePrefix(tuple(math.floor(lam) for _, lam in knots))
    if not A.strictly_increasing:
        raise HypothesisError('floor(f(k)) is not strictly increasing')
    misses = [nearest_miss(g, lam) for _, lam in knots]
    witness = min(misses)
    if witness <= 0:
        raise HypothesisError('some f(k) is hit by g at an integer', witness=witness)
    logger.debug('adversarial witness %.6g over %d knots', witness, len(knots))
    return AdversarialResult(
        f=f, A=A, witness=witness, witness_k=misses.index(witness) + 1,
        half_step_inf=min(half_steps), upper_step_inf=min(upper_steps))
