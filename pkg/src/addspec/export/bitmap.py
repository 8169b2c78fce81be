"""Raw little-endian bitmap files for sumset cross-checks."""

import logging
import pathlib

from addspec.basis.sumset import SumsetBits
from addspec.model import PreconditionError

logger = logging.getLogger('addspec')


def write_bitmap(path: str, bits: SumsetBits) -> int:
    """Write bit i of the set as bit i % 8 of byte i // 8; returns bytes written."""
    data = bits.to_bytes()
    pathlib.Path(path).write_bytes(data)
    logger.debug('bitmap %s: %d bytes for [0, %d]', path, len(data), bits.x_max)
    return len(data)


def read_bitmap(path: str, x_max: int) -> SumsetBits:
    """Read a bitmap written by write_bitmap."""
    data = pathlib.Path(path).read_bytes()
    if len(data) != x_max // 8 + 1:
        raise PreconditionError(
            f'bitmap {path} has {len(data)} bytes, expected {x_max // 8 + 1}',
            path=path, size=len(data))
    return SumsetBits.from_bytes(data, x_max)
