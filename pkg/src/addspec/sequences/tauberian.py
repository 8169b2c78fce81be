"""Seeded sort-rearrangement experiment: noisy a_k ~ f(k), sorted, measured against f."""

import logging

import numpy as np

from addspec.growth.function import GrowthFunction, Power
from addspec.model import PreconditionError
from addspec.sequences.permutation import sort_rearrangement
from addspec.sequences.prefix import SequencePrefix
from addspec.sequences.verdict import asymptotic_verdict

logger = logging.getLogger('addspec')

DEFAULT_NOISE = 0.05
DEFAULT_EPSILON = 0.12


def noisy_sequence(f: GrowthFunction, N: int, noise: float,
                   rng: np.random.Generator) -> SequencePrefix:
    """a_k = round(f(k) (1 + zeta_k)) with zeta_k uniform on [-noise, noise]."""
    zeta = rng.uniform(-noise, noise, N)
    base = np.array([f.eval(k) for k in range(1, N + 1)])
    return SequencePrefix(tuple(int(v) for v in np.rint(base * (1 + zeta))))


def tauberian_experiment(N: int, trials: int, noise: float = DEFAULT_NOISE,
                         seed: int = 0, f: GrowthFunction | None = None,
                         epsilon: float = DEFAULT_EPSILON) -> dict:
    """Sort `trials` noisy prefixes and record each tail sup deviation against f."""
    if trials < 1:
        raise PreconditionError(f'trials must be positive, got {trials}', trials=trials)
    if not 0 <= noise < 1:
        raise PreconditionError(f'noise must lie in [0, 1), got {noise}', noise=noise)
    f = f or Power(1.0, 2.0)
    rng = np.random.default_rng(seed)
    sups = []
    for _ in range(trials):
        A = noisy_sequence(f, N, noise, rng)
        B, _sigma = sort_rearrangement(A)
        sups.append(asymptotic_verdict(B, f, epsilon).sup_deviation)
    logger.info('tauberian: %d trials, worst tail deviation %.4g', trials, max(sups))
    return {
        'N': N,
        'trials': trials,
        'noise': noise,
        'seed': seed,
        'epsilon': epsilon,
        'sup_deviations': sups,
        'max_sup_deviation': max(sups),
        'all_hold': max(sups) <= epsilon,
        }
