"""CSV traces: a header row, then one row per record with integers as decimal strings."""

import csv
import logging
from collections.abc import Iterable, Sequence

logger = logging.getLogger('addspec')


def write_trace(path: str, header: Sequence[str],
                rows: Iterable[Sequence[object]]) -> int:
    """Write a CSV trace and return the number of data rows."""
    count = 0
    with open(path, 'w', newline='') as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([str(v) for v in row])
            count += 1
    logger.debug('trace %s: %d rows', path, count)
    return count


def read_trace(path: str) -> tuple[list[str], list[list[str]]]:
    """Read back a trace as (header, rows) of strings."""
    with open(path, newline='') as fh:
        reader = csv.reader(fh)
        header = next(reader, [])
        return header, list(reader)
