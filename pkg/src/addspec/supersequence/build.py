"""Supersequence assembly: embed A at n_k, fill the rest from the complement, sort."""

import logging
from dataclasses import dataclass

from addspec.growth.function import Exponential, GrowthFunction
from addspec.growth.stability import probe_stability
from addspec.model import AsymptoticVerdict, CollisionError, HypothesisError
from addspec.model import PreconditionError, to_jsonable
from addspec.sequences.prefix import Complement, SequencePrefix
from addspec.sequences.verdict import asymptotic_verdict
from addspec.supersequence.schedule import index_schedule, selection_schedule
from addspec.supersequence.select import DENSITY_GATE, check_density
from addspec.supersequence.select import check_superlinear, greedy_select

logger = logging.getLogger('addspec')

DEFAULT_EPSILON0 = 0.05


@dataclass(frozen=True)
class SupersequenceResult:
    """Strictly increasing B with b_{n_k} = a_k for the embedded prefix of A.

    `indices` are the scheduled positions floor(g^-1 f(k)) before sorting;
    `embedding` are the positions of a_k in the sorted B.
    """

    B: SequencePrefix
    embedding: tuple[int, ...]
    indices: tuple[int, ...]
    filler_count: int
    embedded_count: int
    verdict: AsymptoticVerdict

    def to_json(self) -> dict:
        return {
            'B': self.B.to_json(),
            'embedding': list(self.embedding),
            'indices': list(self.indices),
            'verdict': to_jsonable(self.verdict),
            'filler_count': self.filler_count,
            'embedded_count': self.embedded_count,
            }


def check_build_preconditions(A: SequencePrefix, f: GrowthFunction,
                              g: GrowthFunction, N: int,
                              epsilon0: float = DEFAULT_EPSILON0) -> None:
    """A ~ f on its tail, g asymptotically stable, g superlinear; first failure raises."""
    verdict = asymptotic_verdict(A, f, epsilon0)
    if not verdict.holds:
        raise HypothesisError(
            f'A does not track f: sup deviation {verdict.sup_deviation:.4g}'
            f' > {epsilon0}', sup_deviation=verdict.sup_deviation,
            epsilon=epsilon0)
    stability = probe_stability(g, 1.0)
    if not stability.stable:
        raise HypothesisError(
            f'g is not asymptotically stable: g(x+1)/g(x) -> {stability.tail_sup_ratio:.4g}',
            sup_ratio=stability.tail_sup_ratio)
    check_superlinear(g, N)


def build_supersequence(A: SequencePrefix, f: GrowthFunction, g: GrowthFunction,
                        N: int, epsilon0: float = DEFAULT_EPSILON0,
                        check_preconditions: bool = True,
                        gate: float = DENSITY_GATE) -> SupersequenceResult:
    """Build b_1 < ... < b_N with B ~ g containing a_1..a_K, K maximal with n_K <= N.

    With check_preconditions=False the stability, superlinearity and density
    checks are skipped; the spacing hypotheses of index_schedule still apply.
    """
    if not A.strictly_increasing:
        raise PreconditionError('A must be strictly increasing')
    if N < 1:
        raise PreconditionError(f'N must be positive, got {N}', N=N)
    if check_preconditions:
        check_build_preconditions(A, f, g, N, epsilon0)
    indices = index_schedule(f, g, len(A))
    K = sum(1 for n in indices if n <= N)
    if K == 0:
        raise HypothesisError(f'n_1 = {indices[0]} already exceeds N={N}', N=N)
    positions = {indices[k]: A.values[k] for k in range(K)}

    C = Complement(A)
    if check_preconditions:
        check_density(C, g, N, gate)
    schedule = selection_schedule(C, g, N)
    fillers = greedy_select(C, g, schedule, skip=frozenset(positions))

    merged = [positions.get(n, fillers.get(n)) for n in range(1, N + 1)]
    if len(set(merged)) != N:
        raise CollisionError('A meets the complement selection')
    B = SequencePrefix(tuple(sorted(merged)))
    rank = {b: i + 1 for i, b in enumerate(B.values)}
    embedding = tuple(rank[a] for a in A.values[:K])
    logger.info('supersequence: N=%d embedded=%d fillers=%d', N, K, N - K)
    return SupersequenceResult(
        B=B, embedding=embedding, indices=tuple(indices[:K]), filler_count=N - K,
        embedded_count=K, verdict=asymptotic_verdict(B, g, epsilon0))


def perfect_power_supersequence(u: int, v: int, r: int,
                                K: int) -> SupersequenceResult:
    """b_n = v^n with n_k = r*k, the supersequence of {u^k} when u = v^r."""
    if v < 2 or r < 1 or v**r != u:
        raise HypothesisError(f'{u} is not {v}^{r}', u=u, v=v, r=r)
    if K < 1:
        raise PreconditionError(f'K must be positive, got {K}', K=K)
    N = r * K
    B = SequencePrefix(tuple(v**n for n in range(1, N + 1)))
    embedding = tuple(r * k for k in range(1, K + 1))
    for k, n in enumerate(embedding, 1):
        if B.values[n - 1] != u**k:
            raise CollisionError(f'b_{n} differs from {u}^{k}')
    return SupersequenceResult(
        B=B, embedding=embedding, indices=embedding, filler_count=N - K,
        embedded_count=K,
        verdict=asymptotic_verdict(B, Exponential(float(v)), DEFAULT_EPSILON0))
