"""Tests for addspec.config -- environment limits and experiment configs."""

import json

import pytest
from addspec.config import DEFAULT_MAX_BITS, DEFAULT_REPORT_LIMIT, ExperimentConfig
from addspec.config import Limits, load_config
from addspec.model import PreconditionError

KNOWN = {'sumset': {'input', 'h', 'x_max'}, 'stability': {'growth', 'delta'}}


@pytest.fixture
def clean_env(monkeypatch):
    for name in ('ADDSPEC_MAX_BITS', 'ADDSPEC_MAX_POWER_BITS', 'ADDSPEC_REPORT_LIMIT'):
        monkeypatch.delenv(name, raising=False)
    return monkeypatch


def _write(tmp_path, data):
    path = tmp_path / 'experiment.json'
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


class TestLimits:
    """Limits.from_env."""

    def test_defaults(self, clean_env):
        """No variables set: documented defaults."""
        limits = Limits.from_env()
        assert limits.max_bits == DEFAULT_MAX_BITS
        assert limits.max_power_bits is None
        assert limits.report_limit == DEFAULT_REPORT_LIMIT

    def test_overrides(self, clean_env):
        """Each variable overrides its field."""
        clean_env.setenv('ADDSPEC_MAX_BITS', '4096')
        clean_env.setenv('ADDSPEC_MAX_POWER_BITS', '512')
        clean_env.setenv('ADDSPEC_REPORT_LIMIT', ' 20 ')
        assert Limits.from_env() == Limits(max_bits=4096, max_power_bits=512, report_limit=20)

    def test_not_an_integer(self, clean_env):
        """Garbage names the variable."""
        clean_env.setenv('ADDSPEC_MAX_BITS', 'lots')
        with pytest.raises(PreconditionError) as exc:
            Limits.from_env()
        assert exc.value.violation['variable'] == 'ADDSPEC_MAX_BITS'

    def test_not_positive(self, clean_env):
        """Zero is rejected."""
        clean_env.setenv('ADDSPEC_REPORT_LIMIT', '0')
        with pytest.raises(PreconditionError):
            Limits.from_env()


class TestLoadConfig:
    """JSON experiment configs."""

    def test_full_config(self, tmp_path):
        """All keys are read."""
        path = _write(tmp_path, {
            'subcommand': 'sumset', 'parameters': {'h': 2, 'x_max': 100},
            'output_path': 'out.json', 'trace_path': 't.csv', 'seed': 3, 'threads': 2})
        config = load_config(path)
        assert config.subcommand == 'sumset'
        assert config.parameters == {'h': 2, 'x_max': 100}
        assert (config.output_path, config.trace_path) == ('out.json', 't.csv')
        assert (config.seed, config.threads) == (3, 2)

    def test_defaults(self, tmp_path):
        """Missing keys take defaults."""
        config = load_config(_write(tmp_path, {'subcommand': 'stability'}))
        assert config.parameters == {}
        assert config.seed == 0 and config.threads == 1
        assert config.output_path is None

    def test_unknown_key(self, tmp_path):
        """Typos in top-level keys are rejected."""
        with pytest.raises(PreconditionError) as exc:
            load_config(_write(tmp_path, {'subcommand': 'sumset', 'thread': 4}))
        assert exc.value.violation['keys'] == ['thread']

    def test_invalid_json(self, tmp_path):
        """Malformed JSON is a precondition failure."""
        with pytest.raises(PreconditionError):
            load_config(_write(tmp_path, '{"subcommand": '))

    def test_not_an_object(self, tmp_path):
        """A top-level list is rejected."""
        with pytest.raises(PreconditionError):
            load_config(_write(tmp_path, '[1, 2]'))

    def test_parameters_not_an_object(self, tmp_path):
        """parameters must be a mapping."""
        with pytest.raises(PreconditionError):
            load_config(_write(tmp_path, {'subcommand': 'sumset', 'parameters': [1]}))


class TestValidate:
    """ExperimentConfig.validate."""

    def test_valid(self):
        """Known subcommand and parameters pass."""
        ExperimentConfig('sumset', {'h': 2}).validate(KNOWN)

    def test_unknown_subcommand(self):
        """The subcommand must exist."""
        with pytest.raises(PreconditionError) as exc:
            ExperimentConfig('nope').validate(KNOWN)
        assert exc.value.violation['subcommand'] == 'nope'

    def test_unknown_parameter(self):
        """Parameters are checked against the subcommand."""
        with pytest.raises(PreconditionError) as exc:
            ExperimentConfig('sumset', {'h': 2, 'delta': 1}).validate(KNOWN)
        assert exc.value.violation['parameters'] == ['delta']

    def test_threads(self):
        """threads must be at least 1."""
        with pytest.raises(PreconditionError):
            ExperimentConfig('sumset', threads=0).validate(KNOWN)
