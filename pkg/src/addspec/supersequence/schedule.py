"""Embedding indices n_k = floor(g^-1 f(k)) and the tiered selection schedule."""

import logging
import math
from dataclasses import dataclass

from addspec.growth.function import GrowthFunction
from addspec.model import HypothesisError, PreconditionError
from addspec.sequences.prefix import IntegerSet

logger = logging.getLogger('addspec')

# Relative slack for float comparisons of theorem hypotheses.
HYPOTHESIS_SLACK = 1e-9


def floor_snap(t: float) -> int:
    """floor(t), treating values within rounding of an integer as that integer."""
    nearest = round(t)
    if abs(t - nearest) <= HYPOTHESIS_SLACK * max(1.0, abs(t)):
        return int(nearest)
    return math.floor(t)


def index_schedule(f: GrowthFunction, g: GrowthFunction, K: int) -> list[int]:
    """n_k = floor(g^-1 f(k)) for k = 1..K.

    Checks g(k) <= f(k) and g^-1 f(k+1) - g^-1 f(k) >= 1 on the integer
    grid; the first violating k is reported.
    """
    if K < 1:
        raise PreconditionError(f'K must be positive, got {K}', K=K)
    targets = []
    for k in range(1, K + 1):
        if g.log_eval(k) > f.log_eval(k) + HYPOTHESIS_SLACK:
            raise HypothesisError(
                f'g({k}) exceeds f({k})', x=k, g=g.eval(k), f=f.eval(k))
        targets.append(g.inverse(f.eval(k)))
    for k in range(1, K):
        spacing = targets[k] - targets[k - 1]
        if spacing < 1 - HYPOTHESIS_SLACK:
            raise HypothesisError(
                f'spacing g^-1 f({k + 1}) - g^-1 f({k}) = {spacing:.6g} < 1',
                x=k, spacing=spacing)
    indices = [floor_snap(t) for t in targets]
    for k in range(1, K):
        if indices[k] <= indices[k - 1]:
            raise HypothesisError(
                f'n_{k + 1} = {indices[k]} does not exceed n_{k} = {indices[k - 1]}',
                x=k)
    return indices


@dataclass(frozen=True)
class SelectionSchedule:
    """Tier thresholds N_1 < N_2 < ... and the tier of every index."""

    thresholds: tuple[int, ...]
    tiers: tuple[int, ...]

    def tier(self, n: int) -> int:
        """Tier t of index n (0 before N_1)."""
        return self.tiers[n - 1]


def tier_interval(g: GrowthFunction, n: int, t: int) -> tuple[int, int]:
    """Integer hull of [(1 - 1/t) g(n), (1 + 1/t) g(n)], kept positive."""
    gn = g.eval(n)
    lo = max(1, math.ceil((1 - 1 / t) * gn))
    hi = math.floor((1 + 1 / t) * gn)
    return lo, hi


def selection_schedule(C: IntegerSet, g: GrowthFunction,
                       N: int) -> SelectionSchedule:
    """Advance to tier t+1 at the first n > N_t with g(n)/n > t+1 and

    C((1 - 1/(t+1)) g(n), (1 + 1/(t+1)) g(n)) >= g(n)/(t+1).

    The condition is checked on the working window 1..N only.
    """
    thresholds: list[int] = []
    tiers: list[int] = []
    t = 0
    for n in range(1, N + 1):
        nxt = t + 1
        gn = g.eval(n)
        if gn / n > nxt:
            lo, hi = tier_interval(g, n, nxt)
            if C.count(lo, hi) >= gn / nxt:
                t = nxt
                thresholds.append(n)
                logger.debug('tier %d starts at n=%d', t, n)
        tiers.append(t)
    return SelectionSchedule(tuple(thresholds), tuple(tiers))
