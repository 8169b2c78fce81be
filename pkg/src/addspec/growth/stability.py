"""Finite-scale checks of asymptotic stability and exponential growth."""

import logging
import math

import numpy as np

from addspec.growth.function import GrowthFunction
from addspec.model import DEFAULT_GRID_MAX, DEFAULT_TOLERANCE, GRID_RATIO
from addspec.model import PreconditionError, StabilityVerdict

logger = logging.getLogger('addspec')


def geometric_grid(start: float, stop: float,
                   ratio: float = GRID_RATIO) -> np.ndarray:
    """Points start, start*ratio, ... up to stop (stop always included)."""
    if stop <= start:
        return np.array([start])
    count = int(math.floor(math.log(stop / start) / math.log(ratio))) + 1
    grid = np.minimum(start * ratio ** np.arange(count, dtype=float), stop)
    if grid[-1] < stop:
        grid = np.append(grid, stop)
    return grid


def _shift_ratios(f: GrowthFunction, delta: float,
                  grid: np.ndarray) -> np.ndarray:
    """f(x+delta)/f(x) for each grid x, formed in log space."""
    logs = [f.log_eval(x + delta) - f.log_eval(x) for x in grid]
    return np.exp(np.array(logs))


def probe_stability(f: GrowthFunction, delta: float,
                    grid_max: float = DEFAULT_GRID_MAX,
                    tolerance: float = DEFAULT_TOLERANCE) -> StabilityVerdict:
    """Sample f(x+delta)/f(x) on a geometric grid; stable iff the tail sup is within 1+tolerance.

    The tail window is [grid_max/2, grid_max].
    """
    if delta <= 0:
        raise PreconditionError(f'delta must be positive, got {delta}', delta=delta)
    if tolerance <= 0:
        raise PreconditionError(
            f'tolerance must be positive, got {tolerance}', tolerance=tolerance)
    if grid_max < 10 * delta:
        raise PreconditionError(
            f'grid_max={grid_max} must be at least 10*delta', grid_max=grid_max)
    grid_max = min(grid_max, f.domain_end - delta)
    start = max(f.domain_start, 1.0)
    grid = geometric_grid(start, grid_max)
    ratios = _shift_ratios(f, delta, grid)
    tail = ratios[grid >= grid_max / 2]
    tail_sup = float(tail.max()) if tail.size else float(ratios[-1])
    stable = tail_sup <= 1 + tolerance
    logger.debug('stability %s delta=%s tail_sup=%.6g', f.kind, delta, tail_sup)
    return StabilityVerdict(
        delta=delta, grid_max=float(grid_max),
        sup_ratio=float(ratios.max()), tail_sup_ratio=tail_sup,
        tolerance=tolerance, stable=stable,
        trend=[(float(x), float(r)) for x, r in zip(grid, ratios)])


def probe_exponential_growth(g: GrowthFunction, delta: float = 1.0,
                             grid_max: float = DEFAULT_GRID_MAX,
                             margin: float = 0.1) -> dict:
    """Check liminf g(x+delta)/g(x) > 1 on the tail window, with a margin."""
    grid_max = min(grid_max, g.domain_end - delta)
    grid = geometric_grid(max(g.domain_start, 1.0), grid_max)
    ratios = _shift_ratios(g, delta, grid)
    tail = ratios[grid >= grid_max / 2]
    tail_inf = float(tail.min()) if tail.size else float(ratios[-1])
    return {
        'delta': delta,
        'tail_inf_ratio': tail_inf,
        'margin': margin,
        'exponential_growth': tail_inf >= 1 + margin,
        }
