"""Exact comparisons of the fractional part of k*log_v(u) against rationals."""

import enum
import logging
import math
from dataclasses import dataclass

from addspec.config import Limits
from addspec.model import CapacityError, PreconditionError

logger = logging.getLogger('addspec')


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def _check_bits(base: int, exponent: int, limits: Limits) -> None:
    if limits.max_power_bits is None:
        return
    bits = exponent * base.bit_length()
    if bits > limits.max_power_bits:
        raise CapacityError(
            f'{base}^{exponent} needs about {bits} bits, cap is {limits.max_power_bits}',
            bits=bits, max_power_bits=limits.max_power_bits)


def floor_log(k: int, u: int, v: int, power: int | None = None) -> int:
    """floor(k * log_v u), seeded from floats and corrected by exact comparisons."""
    if power is None:
        power = u**k
    n = math.floor(k * math.log(u) / math.log(v))
    low = v**n
    while low > power:
        n -= 1
        low //= v
    high = low * v
    while high <= power:
        n += 1
        high *= v
    return n


@dataclass(frozen=True)
class FracPartQuery:
    """u^k bracketed between consecutive powers of v."""

    k: int
    u: int
    v: int
    floor_n: int

    @classmethod
    def of(cls, k: int, u: int, v: int,
           limits: Limits | None = None) -> 'FracPartQuery':
        _check_pair(k, u, v)
        _check_bits(u, k, limits or Limits.from_env())
        return cls(k, u, v, floor_log(k, u, v))

    def bracket_holds(self) -> bool:
        """v^floor_n <= u^k < v^(floor_n+1), checked exactly."""
        power = self.u**self.k
        return self.v**self.floor_n <= power < self.v ** (self.floor_n + 1)


def _check_pair(k: int, u: int, v: int) -> None:
    if k < 1:
        raise PreconditionError(f'k must be positive, got {k}', k=k)
    if not u > v >= 2:
        raise PreconditionError(f'need u > v >= 2, got u={u}, v={v}', u=u, v=v)


def fracpart_compare(k: int, u: int, v: int, p: int, q: int,
                     limits: Limits | None = None) -> Ordering:
    """Compare frac(k log_v u) with p/q via the sign of u^(kq) - v^(nq+p)."""
    _check_pair(k, u, v)
    if not 0 <= p < q:
        raise PreconditionError(f'need 0 <= p < q, got p={p}, q={q}', p=p, q=q)
    limits = limits or Limits.from_env()
    _check_bits(u, k * q, limits)
    power = u**k
    n = floor_log(k, u, v, power)
    lhs = power**q
    rhs = v ** (n * q + p)
    if lhs < rhs:
        return Ordering.LT
    if lhs > rhs:
        return Ordering.GT
    return Ordering.EQ
