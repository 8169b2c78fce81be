"""Shared fixtures and sequence factories for addspec tests."""

import pytest
from addspec.config import Limits
from addspec.sequences.prefix import SequencePrefix


@pytest.fixture
def limits():
    """Limits independent of the ADDSPEC_* environment."""
    return Limits()


@pytest.fixture
def write_sequence(tmp_path):
    """Write integers one per line and return the file path."""
    def _write(values, name='a.txt') -> str:
        path = tmp_path / name
        path.write_text('\n'.join(str(v) for v in values) + '\n')
        return str(path)
    return _write


def make_prefix(values) -> SequencePrefix:
    """Factory for SequencePrefix instances."""
    return SequencePrefix(tuple(values))


def squares_with_zero(x_max: int) -> SequencePrefix:
    """{0, 1, 4, 9, ...} up to x_max."""
    values = []
    k = 0
    while k * k <= x_max:
        values.append(k * k)
        k += 1
    return make_prefix(values)


def triangular_with_zero(x_max: int) -> SequencePrefix:
    """{0, 1, 3, 6, ...} up to x_max."""
    values = []
    k = 0
    while k * (k + 1) // 2 <= x_max:
        values.append(k * (k + 1) // 2)
        k += 1
    return make_prefix(values)


def twice_squares(K: int) -> SequencePrefix:
    """{2k^2 : 1 <= k <= K}."""
    return make_prefix(2 * k * k for k in range(1, K + 1))
