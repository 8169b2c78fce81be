"""Sequence files: whitespace-separated integers, or a JSON list of integers or decimal strings."""

import json
import logging
import pathlib

from addspec.model import PreconditionError
from addspec.sequences.prefix import SequencePrefix

logger = logging.getLogger('addspec')


def parse_sequence(text: str) -> SequencePrefix:
    """Parse a sequence from file contents."""
    text = text.strip()
    if text.startswith('['):
        try:
            items = json.loads(text)
        except json.JSONDecodeError as e:
            raise PreconditionError(f'invalid JSON sequence: {e}') from None
    else:
        body = ' '.join(line.split('#', 1)[0] for line in text.splitlines())
        items = body.replace(',', ' ').split()
    try:
        values = [int(x) for x in items]
    except (TypeError, ValueError) as e:
        raise PreconditionError(f'sequence terms must be integers: {e}') from None
    return SequencePrefix(tuple(values))


def load_sequence(path: str) -> SequencePrefix:
    """Read a sequence file."""
    p = pathlib.Path(path)
    if not p.is_file():
        raise PreconditionError(f'sequence file not found: {path}', path=path)
    A = parse_sequence(p.read_text())
    logger.debug('loaded %d terms from %s', len(A), path)
    return A


def save_sequence(path: str, A: SequencePrefix, as_json: bool = False) -> None:
    """Write one term per line, or a JSON list of decimal strings."""
    p = pathlib.Path(path)
    if as_json:
        p.write_text(json.dumps(A.to_json()) + '\n')
    else:
        p.write_text('\n'.join(A.to_json()) + '\n')
