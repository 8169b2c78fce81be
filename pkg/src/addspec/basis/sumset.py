"""h-fold sumsets over [0, X] as shift-OR on a single big-integer bit-vector."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from addspec.config import Limits
from addspec.model import CapacityError, PreconditionError

logger = logging.getLogger('addspec')


@dataclass(frozen=True)
class SumsetBits:
    """Bit i of `bits` is set iff i is in the set, for 0 <= i <= x_max."""

    bits: int
    x_max: int

    def __contains__(self, m: int) -> bool:
        return 0 <= m <= self.x_max and bool(self.bits >> m & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def to_bytes(self) -> bytes:
        """Raw little-endian bitmap: bit i is bit i % 8 of byte i // 8."""
        return self.bits.to_bytes(self.x_max // 8 + 1, 'little')

    def unpack(self) -> np.ndarray:
        """Boolean array of length x_max + 1."""
        raw = np.frombuffer(self.to_bytes(), dtype=np.uint8)
        return np.unpackbits(raw, bitorder='little')[:self.x_max + 1].astype(bool)

    def missing(self) -> np.ndarray:
        """Sorted integers in [0, x_max] not in the set."""
        return np.flatnonzero(~self.unpack())

    def issuperset(self, other: 'SumsetBits') -> bool:
        """Bitwise containment on the common window."""
        mask = (1 << (min(self.x_max, other.x_max) + 1)) - 1
        return other.bits & mask & ~self.bits == 0

    @classmethod
    def from_bytes(cls, data: bytes, x_max: int) -> 'SumsetBits':
        mask = (1 << (x_max + 1)) - 1
        return cls(int.from_bytes(data, 'little') & mask, x_max)

    @classmethod
    def of(cls, values: Iterable[int], x_max: int) -> 'SumsetBits':
        bits = 0
        for a in values:
            if 0 <= a <= x_max:
                bits |= 1 << a
        return cls(bits, x_max)


def iterated_sumset(A: Iterable[int], h: int, X: int,
                    limits: Limits | None = None) -> SumsetBits:
    """hA intersected with [0, X]: h-1 rounds of S <- OR_a (S << a).

    Values of A above X are ignored.
    """
    if h < 1:
        raise PreconditionError(f'order h must be at least 1, got {h}', h=h)
    if X < 1:
        raise PreconditionError(f'X must be at least 1, got {X}', X=X)
    limits = limits or Limits.from_env()
    if X + 1 > limits.max_bits:
        raise CapacityError(
            f'bit-vector of {X + 1} bits exceeds the cap of {limits.max_bits}',
            bits=X + 1, max_bits=limits.max_bits)
    elements = sorted({int(a) for a in A if 0 <= a <= X})
    base = SumsetBits.of(elements, X)
    mask = (1 << (X + 1)) - 1
    current = base.bits
    for round_ in range(1, h):
        acc = 0
        for a in elements:
            acc |= current << a
        current = acc & mask
        logger.debug('sumset round %d: %d elements set', round_ + 1, current.bit_count())
    return SumsetBits(current, X)
