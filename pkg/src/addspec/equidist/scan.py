"""Middle-zone scan of frac(k log_v u) for k = 1..K.

Each zone decision uses a fixed-point enclosure of k*theta; an enclosure
touching 1/4, 3/4 or an integer falls back to fracpart_compare, so every
decision is exact.
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from addspec.config import Limits
from addspec.equidist.fracpart import Ordering, floor_log, fracpart_compare
from addspec.equidist.relation import Irrational, power_relation
from addspec.model import HypothesisError, PreconditionError, ScanReport

logger = logging.getLogger('addspec')

FIXED_POINT_BITS = 128
# Exact |v^n - u^k| / u^k is reported only while u^k stays this small.
EXACT_GAP_BITS = 4096
CHUNKS_PER_THREAD = 4


@dataclass
class _ChunkResult:
    hits: int = 0
    first_violation: int | None = None
    gap: float = math.inf
    gap_k: int = 0
    gap_n: int = 0
    fallbacks: int = 0
    rows: list[tuple[int, int, str]] = field(default_factory=list)


def theta_enclosure(u: int, v: int, bits: int = FIXED_POINT_BITS) -> tuple[int, int]:
    """(T_lo, T_hi) with T_lo / 2^bits < log_v u < T_hi / 2^bits."""
    with mpmath.workprec(bits + 64):
        t = int(mpmath.floor(mpmath.log(u) / mpmath.log(v) * mpmath.mpf(2) ** bits))
    return t - 1, t + 1


def exact_zone(k: int, u: int, v: int, limits: Limits | None = None) -> str:
    """'low' below 1/4, 'high' above 3/4, otherwise 'middle'."""
    if fracpart_compare(k, u, v, 1, 4, limits) is Ordering.LT:
        return 'low'
    if fracpart_compare(k, u, v, 3, 4, limits) is Ordering.GT:
        return 'high'
    return 'middle'


def _scan_chunk(u: int, v: int, enclosure: tuple[int, int], bits: int,
                start: int, stop: int, limits: Limits,
                trace: bool) -> _ChunkResult:
    t_lo, t_hi = enclosure
    one = 1 << bits
    quarter, three_quarters = one >> 2, 3 * (one >> 2)
    log_v = math.log(v)
    out = _ChunkResult()
    for k in range(start, stop):
        lo, hi = k * t_lo, k * t_hi
        n = lo >> bits
        r_lo, r_hi = lo - (n << bits), hi - (n << bits)
        if hi >> bits != n or r_lo <= quarter <= r_hi or r_lo <= three_quarters <= r_hi:
            out.fallbacks += 1
            n = floor_log(k, u, v)
            zone = exact_zone(k, u, v, limits)
        elif r_hi < quarter:
            zone = 'low'
        elif r_lo > three_quarters:
            zone = 'high'
        else:
            zone = 'middle'
        if zone == 'middle':
            out.hits += 1
            if out.first_violation is None:
                out.first_violation = k
        frac = min(max(((lo + hi) // 2 - (n << bits)) / one, 0.0), 1.0)
        below = -math.expm1(-frac * log_v)
        above = math.expm1((1 - frac) * log_v)
        if below < out.gap:
            out.gap, out.gap_k, out.gap_n = below, k, n
        if above < out.gap:
            out.gap, out.gap_k, out.gap_n = above, k, n + 1
        if trace:
            out.rows.append((k, n, zone))
    return out


def _chunks(K: int, threads: int) -> list[tuple[int, int]]:
    count = max(1, min(K, threads * CHUNKS_PER_THREAD))
    edges = [1 + K * i // count for i in range(count + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if b > a]


def impossibility_scan(u: int, v: int, K: int, threads: int = 1,
                       limits: Limits | None = None,
                       trace: list[tuple[int, int, str]] | None = None) -> ScanReport:
    """Count k <= K with frac(k log_v u) in [1/4, 3/4].

    Rows (k, floor_n, zone) are appended to `trace` when given. Pairs with a
    rational log relation are rejected.
    """
    if K < 1:
        raise PreconditionError(f'K must be positive, got {K}', K=K)
    if threads < 1:
        raise PreconditionError(f'threads must be >= 1, got {threads}', threads=threads)
    relation = power_relation(u, v)
    if not isinstance(relation, Irrational):
        raise HypothesisError(
            f'log_{v} {u} is rational ({relation.kind}); the scan needs an irrational ratio',
            relation=relation.to_json())
    limits = limits or Limits.from_env()
    enclosure = theta_enclosure(u, v)
    want_trace = trace is not None
    spans = _chunks(K, threads)
    args = [(u, v, enclosure, FIXED_POINT_BITS, a, b, limits, want_trace)
            for a, b in spans]
    logger.debug('scan u=%d v=%d K=%d in %d chunks', u, v, K, len(spans))
    if threads == 1:
        parts = [_scan_chunk(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(_scan_chunk, *zip(*args)))

    hits = sum(p.hits for p in parts)
    firsts = [p.first_violation for p in parts if p.first_violation is not None]
    best = min(parts, key=lambda p: (p.gap, p.gap_k))
    if want_trace:
        for p in parts:
            trace.extend(p.rows)
    exact = None
    if best.gap_k * math.log2(u) <= EXACT_GAP_BITS:
        power = u**best.gap_k
        exact = Fraction(abs(v**best.gap_n - power), power)
    return ScanReport(
        u=u, v=v, K=K, hits_middle=hits,
        first_violation=min(firsts) if firsts else None,
        epsilon_star=min(1 - v ** -0.25, 0.5),
        min_relative_gap=best.gap, min_gap_k=best.gap_k, min_gap_n=best.gap_n,
        min_gap_exact=exact,
        exact_fallbacks=sum(p.fallbacks for p in parts))
