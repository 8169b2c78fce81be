"""Greedy selection of a complement subsequence c_n ~ g(n)."""

import logging
import math

import numpy as np

from addspec.growth.function import GrowthFunction
from addspec.model import ExhaustionError, HypothesisError
from addspec.sequences.prefix import IntegerSet, SequencePrefix, density_estimate
from addspec.supersequence.schedule import SelectionSchedule, selection_schedule
from addspec.supersequence.schedule import tier_interval

logger = logging.getLogger('addspec')

DENSITY_GATE = 0.9


def check_superlinear(g: GrowthFunction, N: int) -> None:
    """g(n)/n must be non-decreasing on 1..N and end above 1."""
    n = np.arange(max(1, math.ceil(g.domain_start)), N + 1)
    if n.size < 2:
        return
    # log(g(x)/x), so exponential kinds stay finite
    logs = np.array([g.log_eval(float(x)) - math.log(x) for x in n])
    slack = 1e-12 * np.maximum(1.0, np.abs(logs[1:]))
    drops = np.flatnonzero(np.diff(logs) < -slack)
    if drops.size or logs[-1] <= logs[0] or logs[-1] <= 0:
        x = int(n[drops[0] + 1]) if drops.size else int(n[-1])
        raise HypothesisError(
            f'g is not superlinear on 1..{N}: g(x)/x fails to increase at x={x}',
            x=x, log_ratio=float(logs[x - n[0]]))


def check_density(C: IntegerSet, g: GrowthFunction, N: int,
                  gate: float = DENSITY_GATE) -> None:
    """Reject C when its density on [0, 2 g(N)] falls below the gate."""
    x_max = max(2, math.ceil(2 * g.eval(N)))
    estimate = density_estimate(C, x_max)
    if estimate.lower < gate:
        raise HypothesisError(
            f'complement density {estimate.lower:.4f} below {gate} on [0, {x_max}]',
            density=estimate.lower, x_max=x_max)


def _interval(g: GrowthFunction, schedule: SelectionSchedule,
              n: int) -> tuple[int, int]:
    t = schedule.tier(n)
    if t > 0:
        return tier_interval(g, n, t)
    first = schedule.thresholds[0] if schedule.thresholds else len(schedule.tiers)
    return 1, math.floor(2 * g.eval(first))


def greedy_select(C: IntegerSet, g: GrowthFunction, schedule: SelectionSchedule,
                  skip: frozenset[int] = frozenset()) -> dict[int, int]:
    """Pick c_n for every index not in `skip`: smallest unused member of C
    in the tier interval of n."""
    used: set[int] = set()
    chosen: dict[int, int] = {}
    for n in range(1, len(schedule.tiers) + 1):
        if n in skip:
            continue
        lo, hi = _interval(g, schedule, n)
        m = lo
        while m <= hi and (m in used or m not in C):
            m += 1
        if m > hi:
            raise ExhaustionError(
                f'no unused element of C in [{lo}, {hi}] for n={n}',
                n=n, t=schedule.tier(n), interval=[lo, hi])
        used.add(m)
        chosen[n] = m
    return chosen


def select_from_complement(C: IntegerSet, g: GrowthFunction, N: int,
                           gate: float = DENSITY_GATE) -> SequencePrefix:
    """Distinct c_1..c_N in C with c_n in the tier interval of n.

    C must have density at least `gate` near 2 g(N) and g must be superlinear.
    """
    check_superlinear(g, N)
    check_density(C, g, N, gate)
    schedule = selection_schedule(C, g, N)
    chosen = greedy_select(C, g, schedule)
    logger.debug('selected %d complement values, %d tiers',
                 len(chosen), len(schedule.thresholds))
    return SequencePrefix(tuple(chosen[n] for n in range(1, N + 1)))
