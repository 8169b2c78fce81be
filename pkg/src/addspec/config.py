"""Environment limits and experiment config files."""

import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from addspec.model import PreconditionError

logger = logging.getLogger('addspec')

DEFAULT_MAX_BITS = 2**30
DEFAULT_REPORT_LIMIT = 1000

CONFIG_KEYS = {
    'subcommand', 'parameters', 'output_path', 'trace_path', 'seed', 'threads',
    }


def _env_int(name: str, default: int | None) -> int | None:
    """Read a positive integer from the environment."""
    raw = os.environ.get(name, '').strip()
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError(
            f'{name} must be an integer, got {raw!r}', variable=name) from None
    if value <= 0:
        raise PreconditionError(
            f'{name} must be positive, got {value}', variable=name)
    return value


@dataclass(frozen=True)
class Limits:
    """Size caps for the bit-vector kernel and exact power comparisons."""

    max_bits: int = DEFAULT_MAX_BITS
    max_power_bits: int | None = None
    report_limit: int = DEFAULT_REPORT_LIMIT

    @classmethod
    def from_env(cls) -> 'Limits':
        """Build limits from ADDSPEC_* environment variables."""
        return cls(
            max_bits=_env_int('ADDSPEC_MAX_BITS', DEFAULT_MAX_BITS),
            max_power_bits=_env_int('ADDSPEC_MAX_POWER_BITS', None),
            report_limit=_env_int('ADDSPEC_REPORT_LIMIT', DEFAULT_REPORT_LIMIT))


@dataclass
class ExperimentConfig:
    """One reproducible experiment: a subcommand plus its parameters."""

    subcommand: str = ''
    parameters: dict[str, object] = field(default_factory=dict)
    output_path: str | None = None
    trace_path: str | None = None
    seed: int = 0
    threads: int = 1

    def validate(self, known: dict[str, set[str]]) -> None:
        """Reject unknown subcommands and parameter keys.

        `known` maps each subcommand name to the parameter names it accepts.
        """
        if self.subcommand not in known:
            raise PreconditionError(
                f'unknown subcommand {self.subcommand!r};'
                f' valid: {", ".join(sorted(known))}',
                subcommand=self.subcommand)
        unknown = sorted(set(self.parameters) - known[self.subcommand])
        if unknown:
            raise PreconditionError(
                f'unknown parameters for {self.subcommand}: {", ".join(unknown)}',
                parameters=unknown)
        if self.threads < 1:
            raise PreconditionError(
                f'threads must be >= 1, got {self.threads}', threads=self.threads)


def load_config(path: str) -> ExperimentConfig:
    """Load an ExperimentConfig from a JSON file."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise PreconditionError(f'invalid JSON config {path}: {e}', path=path) from None
    if not isinstance(data, dict):
        raise PreconditionError(
            f'config {path} must hold a JSON object', path=path)
    unknown = sorted(set(data) - CONFIG_KEYS)
    if unknown:
        raise PreconditionError(
            f'unknown config keys: {", ".join(unknown)}', keys=unknown)
    params = data.get('parameters', {})
    if not isinstance(params, dict):
        raise PreconditionError('parameters must be a JSON object', path=path)
    return ExperimentConfig(
        subcommand=str(data.get('subcommand', '')),
        parameters=params,
        output_path=data.get('output_path'),
        trace_path=data.get('trace_path'),
        seed=int(data.get('seed', 0)),
        threads=int(data.get('threads', 1)))
