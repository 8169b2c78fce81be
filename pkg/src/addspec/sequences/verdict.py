"""Finite-scale asymptotic verdicts a_n ~ f(n), limit points, rearrangement checks."""

import logging
import math

import mpmath
import numpy as np

from addspec.growth.function import GrowthFunction
from addspec.model import AsymptoticVerdict, CapacityError, PreconditionError
from addspec.sequences.permutation import PermutationSpec, rearrange
from addspec.sequences.prefix import SequencePrefix

logger = logging.getLogger('addspec')

MIN_VERDICT_LENGTH = 10
CLUSTER_GAP = 0.05
# Limit points are read off the top three octaves of the prefix.
CLUSTER_OCTAVES = 3

# Beyond this many bits an integer no longer converts to a double.
_FLOAT_BITS = 1000


def term_ratio(a: int, f: GrowthFunction, n: float) -> float:
    """a / f(n), in doubles when both fit, otherwise through mpmath."""
    if a.bit_length() <= _FLOAT_BITS:
        try:
            return a / f.eval(n)
        except CapacityError:
            pass
    return float(mpmath.mpf(a) / mpmath.exp(f.log_eval(n)))


def tail_window(N: int) -> tuple[int, int]:
    """The 1-based window [ceil(N/2), N]."""
    return (N + 1) // 2, N


def ratios_against(A: SequencePrefix, f: GrowthFunction) -> np.ndarray:
    """a_n / f(n) for n = 1..N; NaN where n lies below the domain of f."""
    out = np.full(len(A), np.nan)
    first = max(1, math.ceil(f.domain_start))
    last = min(len(A), math.floor(f.domain_end)) if math.isfinite(f.domain_end) else len(A)
    for n in range(first, last + 1):
        out[n - 1] = term_ratio(A.values[n - 1], f, n)
    return out


def limit_points(ratios: np.ndarray, gap: float = CLUSTER_GAP) -> list[dict]:
    """Group ratios into clusters separated by more than `gap` (relative)."""
    values = np.sort(ratios[np.isfinite(ratios)])
    if values.size == 0:
        return []
    clusters: list[list[float]] = [[float(values[0])]]
    for v in values[1:]:
        prev = clusters[-1][-1]
        if prev > 0 and v / prev <= 1 + gap or prev == v:
            clusters[-1].append(float(v))
        else:
            clusters.append([float(v)])
    return [{'mean': float(np.mean(c)), 'count': len(c)} for c in clusters]


def asymptotic_verdict(A: SequencePrefix, f: GrowthFunction,
                       epsilon: float) -> AsymptoticVerdict:
    """Measure sup |a_n/f(n) - 1| on the tail window [ceil(N/2), N].

    threshold_index is the least N0 with every deviation on [N0, N] within
    epsilon (N+1 if the last term already fails); holds iff the whole tail
    window is within epsilon.
    """
    N = len(A)
    if N < MIN_VERDICT_LENGTH:
        raise PreconditionError(
            f'verdict needs at least {MIN_VERDICT_LENGTH} terms, got {N}', N=N)
    if epsilon <= 0:
        raise PreconditionError(f'epsilon must be positive, got {epsilon}')
    ratios = ratios_against(A, f)
    dev = np.abs(ratios - 1.0)
    bad = ~(dev <= epsilon)
    if bad.any():
        threshold = int(np.flatnonzero(bad)[-1]) + 2
    else:
        threshold = 1
    start, end = tail_window(N)
    sup = float(np.max(dev[start - 1:end]))
    holds = bool(sup <= epsilon)
    points: list[dict] = []
    if not holds:
        lo = max(1, N >> CLUSTER_OCTAVES)
        points = limit_points(ratios[lo - 1:])
        logger.info('verdict fails: sup deviation %.4g > %.4g', sup, epsilon)
    return AsymptoticVerdict(
        epsilon=epsilon, threshold_index=threshold,
        window_start=start, window_end=end,
        sup_deviation=sup, holds=holds, limit_points=points)


def rearrangement_growth_check(A: SequencePrefix, sigma: PermutationSpec,
                               f: GrowthFunction, g: GrowthFunction,
                               epsilon: float) -> dict:
    """Compare f and g on the tail when A ~ f and its rearrangement ~ g.

    For asymptotically stable f and g both verdicts holding should force
    |f(n)/g(n) - 1| <= 3*eps + 2*eps**2 on the tail window.
    """
    verdict_a = asymptotic_verdict(A, f, epsilon)
    verdict_b = asymptotic_verdict(rearrange(A, sigma), g, epsilon)
    start, end = tail_window(len(A))
    gap = max(
        abs(math.expm1(f.log_eval(n) - g.log_eval(n)))
        for n in range(start, end + 1))
    bound = 3 * epsilon + 2 * epsilon**2
    both = verdict_a.holds and verdict_b.holds
    return {
        'verdict_A': verdict_a,
        'verdict_rearranged': verdict_b,
        'tail_growth_gap': gap,
        'bound': bound,
        'both_hold': both,
        'consistent': (not both) or gap <= bound,
        }
