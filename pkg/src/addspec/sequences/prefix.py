"""Finite sequence prefixes, integer-set views, counting functions and densities."""

import bisect
import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np

from addspec.growth.stability import geometric_grid
from addspec.model import DensityEstimate, PreconditionError

logger = logging.getLogger('addspec')


class IntegerSet(Protocol):
    """A set of nonnegative integers with a counting function."""

    def __contains__(self, m: int) -> bool: ...

    def count(self, y: int, x: int) -> int: ...


@dataclass(frozen=True)
class SequencePrefix:
    """The prefix a_1..a_N of a sequence of nonnegative integers."""

    values: tuple[int, ...]
    strictly_increasing: bool = field(init=False)
    _sorted: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _members: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        values = tuple(int(v) for v in self.values)
        if not values:
            raise PreconditionError('a sequence prefix needs at least one term')
        if min(values) < 0:
            raise PreconditionError(
                f'terms must be nonnegative, got {min(values)}', value=min(values))
        increasing = all(a < b for a, b in zip(values, values[1:]))
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'strictly_increasing', increasing)
        object.__setattr__(
            self, '_sorted', values if increasing else tuple(sorted(set(values))))
        object.__setattr__(self, '_members', frozenset(values))

    def __len__(self) -> int:
        return len(self.values)

    def __contains__(self, m: int) -> bool:
        return m in self._members

    def term(self, n: int) -> int:
        """Return a_n (1-based)."""
        return self.values[n - 1]

    def count(self, y: int, x: int) -> int:
        """Number of distinct values in [y, x]."""
        if x < y:
            return 0
        return (bisect.bisect_right(self._sorted, x)
                - bisect.bisect_left(self._sorted, y))

    def distinct_sorted(self) -> tuple[int, ...]:
        return self._sorted

    def to_json(self) -> list[str]:
        """Decimal strings, safe for integers of any size."""
        return [str(v) for v in self.values]

    @classmethod
    def of(cls, values: Iterable[int]) -> 'SequencePrefix':
        return cls(tuple(values))


@dataclass(frozen=True)
class Complement:
    """N_0 minus the values of a sequence prefix."""

    excluded: SequencePrefix

    def __contains__(self, m: int) -> bool:
        return m >= 0 and m not in self.excluded

    def count(self, y: int, x: int) -> int:
        y = max(y, 0)
        if x < y:
            return 0
        return (x - y + 1) - self.excluded.count(y, x)


@dataclass(frozen=True)
class PredicateSet:
    """Integers in [0, x_max] accepted by a vectorized numpy predicate."""

    predicate: Callable[[np.ndarray], np.ndarray]
    x_max: int
    _mask: np.ndarray = field(init=False, repr=False, compare=False)
    _cumulative: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        mask = np.asarray(
            self.predicate(np.arange(self.x_max + 1, dtype=np.int64)), dtype=bool)
        object.__setattr__(self, '_mask', mask)
        object.__setattr__(self, '_cumulative', np.cumsum(mask, dtype=np.int64))

    def _check(self, x: int) -> None:
        if x > self.x_max:
            raise PreconditionError(
                f'query {x} beyond predicate range [0, {self.x_max}]',
                x=x, x_max=self.x_max)

    def __contains__(self, m: int) -> bool:
        self._check(m)
        return m >= 0 and bool(self._mask[m])

    def count(self, y: int, x: int) -> int:
        self._check(x)
        y = max(y, 0)
        if x < y:
            return 0
        below = int(self._cumulative[y - 1]) if y > 0 else 0
        return int(self._cumulative[x]) - below


def counting(A: IntegerSet, y: int, x: int) -> int:
    """The counting function A(y, x): elements of A in [y, x]."""
    if y < 0 or x < y:
        raise PreconditionError(
            f'counting needs 0 <= y <= x, got y={y}, x={x}', y=y, x=x)
    return A.count(y, x)


def density_estimate(C: IntegerSet, x_max: int) -> DensityEstimate:
    """Min and max of C(0,x)/(x+1) over a geometric grid in [x_max/2, x_max]."""
    if isinstance(C, SequencePrefix) and not C.strictly_increasing:
        raise PreconditionError('density_estimate needs a strictly increasing sequence')
    if x_max < 2:
        raise PreconditionError(f'x_max must be at least 2, got {x_max}', x_max=x_max)
    grid = np.unique(np.floor(geometric_grid(x_max / 2, x_max)).astype(np.int64))
    ratios = [C.count(0, int(x)) / (int(x) + 1) for x in grid]
    return DensityEstimate(x_max=x_max, lower=min(ratios), upper=max(ratios))
