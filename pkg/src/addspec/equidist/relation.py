"""Classify log u / log v as integer, rational or irrational; the rational-case witness."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from sympy import mod_inverse, perfect_power

from addspec.model import HypothesisError, PreconditionError

logger = logging.getLogger('addspec')


@dataclass(frozen=True)
class PerfectPower:
    """u = v^r."""

    r: int

    kind = 'perfect_power'

    def to_json(self) -> dict:
        return {'kind': self.kind, 'r': self.r}


@dataclass(frozen=True)
class RationalLog:
    """u^s = v^r with gcd(r, s) = 1 and s > 1."""

    r: int
    s: int

    kind = 'rational_log'

    def to_json(self) -> dict:
        return {'kind': self.kind, 'r': self.r, 's': self.s}


@dataclass(frozen=True)
class Irrational:
    kind = 'irrational'

    def to_json(self) -> dict:
        return {'kind': self.kind}


PowerRelation = PerfectPower | RationalLog | Irrational


def primitive_root(n: int) -> tuple[int, int]:
    """(w, e) with n = w^e and w not itself a perfect power."""
    found = perfect_power(n)
    if not found:
        return n, 1
    w, e = found
    return int(w), int(e)


def power_relation(u: int, v: int) -> PowerRelation:
    """u = w^a and v = w^b for a common w give log_v u = a/b; otherwise irrational."""
    if not u > v >= 2:
        raise PreconditionError(f'need u > v >= 2, got u={u}, v={v}', u=u, v=v)
    wu, a = primitive_root(u)
    wv, b = primitive_root(v)
    if wu != wv:
        return Irrational()
    d = gcd(a, b)
    r, s = a // d, b // d
    if s == 1:
        return PerfectPower(r)
    return RationalLog(r, s)


def rational_case_witness(u: int, v: int, r: int, s: int, K: int) -> dict:
    """Residue class k = ell (mod s), ell*r = 1 (mod s), on which k log_v u
    stays exactly 1/s away from the integers."""
    if s < 2:
        raise PreconditionError(
            f's={s}: a rational log with s=1 is the perfect-power case', s=s)
    relation = power_relation(u, v)
    if relation != RationalLog(r, s):
        raise HypothesisError(
            f'log_{v} {u} is not {r}/{s} in lowest terms', u=u, v=v, r=r, s=s)
    if K < 1:
        raise PreconditionError(f'K must be positive, got {K}', K=K)
    ell = int(mod_inverse(r, s))
    klass = list(range(ell, K + 1, s))
    distances = set()
    for k in klass:
        frac = Fraction(k * r % s, s)
        distances.add(min(frac, 1 - frac))
    distance = min(distances) if distances else None
    logger.debug('rational witness ell=%d over %d indices', ell, len(klass))
    return {
        'u': u,
        'v': v,
        'r': r,
        's': s,
        'ell': ell,
        'exact_relation': u**s == v**r,
        'class_size': len(klass),
        'distance': distance,
        'epsilon_bound': 1 - v ** (-1 / s),
        }
