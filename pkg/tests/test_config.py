"""
Configuration, Validation and Metrics Tests for mmm_calc
"""

import logging
from concurrent.futures import ThreadPoolExecutor

import pytest

from mmm_calc.config import Config, ConfigValidationError
from mmm_calc.metrics import MetricsCollector
from mmm_calc.utils import format_duration, render_csv, render_json
from mmm_calc.validation import InputValidator, ValidationError

ENV_NAMES = ('MMM_LOG_LEVEL', 'MMM_SOFT_LIMIT', 'MMM_VERIFY_WORKERS', 'MMM_METRICS_FILE', 'MMM_RANDOM_SEED')


@pytest.fixture
def config(monkeypatch):
    for name in ENV_NAMES:
        monkeypatch.delenv(name, raising=False)
    return Config()


class TestConfig:
    """Test environment-driven configuration"""

    def test_defaults(self, config):
        """Defaults when nothing is set"""
        assert config.get_all_config() == {
            'log_level': 'WARNING',
            'soft_limit': 30,
            'verify_workers': 1,
            'metrics_file': None,
            'random_seed': 20240101,
        }

    def test_overrides(self, config, monkeypatch):
        """Environment values win"""
        monkeypatch.setenv('MMM_LOG_LEVEL', 'debug')
        monkeypatch.setenv('MMM_SOFT_LIMIT', '12')
        monkeypatch.setenv('MMM_VERIFY_WORKERS', '4')
        monkeypatch.setenv('MMM_METRICS_FILE', '/tmp/mmm.prom')
        assert config.get_log_level() == logging.DEBUG
        assert config.get_soft_limit() == 12
        assert config.get_verify_workers() == 4
        assert config.get_metrics_file() == '/tmp/mmm.prom'

    def test_invalid_values(self, config, monkeypatch):
        """Bad values raise ConfigValidationError naming the variable"""
        monkeypatch.setenv('MMM_LOG_LEVEL', 'LOUD')
        with pytest.raises(ConfigValidationError) as exc_info:
            config.get_log_level()
        assert exc_info.value.field == 'MMM_LOG_LEVEL'

        monkeypatch.setenv('MMM_SOFT_LIMIT', '0')
        with pytest.raises(ConfigValidationError):
            config.get_soft_limit()

        monkeypatch.setenv('MMM_VERIFY_WORKERS', 'two')
        with pytest.raises(ConfigValidationError) as exc_info:
            config.get_verify_workers()
        assert 'not an integer' in str(exc_info.value)

    def test_blank_means_default(self, config, monkeypatch):
        """Empty strings fall back to defaults"""
        monkeypatch.setenv('MMM_SOFT_LIMIT', '  ')
        monkeypatch.setenv('MMM_METRICS_FILE', '')
        assert config.get_soft_limit() == 30
        assert config.get_metrics_file() is None


class TestInputValidator:
    """Test parameter validation"""

    def test_positive_int(self):
        """Integers at or above the minimum pass through"""
        assert InputValidator.validate_positive_int('n', 3) == 3
        assert InputValidator.validate_positive_int('i', 0, minimum=0) == 0

    def test_positive_int_rejects(self):
        """Below minimum, bools, floats and strings"""
        for value in [0, -2, True, 2.0, "3", None]:
            with pytest.raises(ValidationError) as exc_info:
                InputValidator.validate_positive_int('n', value)
            assert exc_info.value.field == 'n'

    def test_choice(self):
        """Only listed values pass"""
        assert InputValidator.validate_choice('flavor', 'chern', ['pontryagin', 'chern']) == 'chern'
        with pytest.raises(ValidationError):
            InputValidator.validate_choice('flavor', 'hodge', ['pontryagin', 'chern'])

    def test_integer_value(self):
        """Ints and decimal strings"""
        assert InputValidator.validate_integer_value('v', -7) == -7
        assert InputValidator.validate_integer_value('v', " 123456789012345678901234567890 ") == \
            123456789012345678901234567890
        assert InputValidator.validate_integer_value('v', "-4") == -4
        for value in [1.0, False, "1e3", "", "0x10", None]:
            with pytest.raises(ValidationError):
                InputValidator.validate_integer_value('v', value)


class TestMetricsCollector:
    """Test the Prometheus collector"""

    def test_summary(self):
        """Checks and errors are tallied"""
        metrics = MetricsCollector()
        metrics.record_check('shift', True, 0.01)
        metrics.record_check('shift', True, 0.02)
        metrics.record_check('unique', False, 0.5)
        metrics.increment_errors('ValidationError')
        metrics.record_polynomial_size(11)
        metrics.record_polynomial_size(3)
        summary = metrics.get_summary()
        assert summary['checks_passed'] == 2
        assert summary['checks_failed'] == 1
        assert summary['error_breakdown'] == {'ValidationError': 1}
        assert summary['largest_polynomial_terms'] == 11

    def test_concurrent_recording(self):
        """No increments are lost when worker threads record checks"""
        metrics = MetricsCollector()

        def record(index):
            metrics.record_check('shift', index % 4 != 0, 0.001)
            metrics.increment_errors('StructureError')

        with ThreadPoolExecutor(max_workers=8) as pool:
            list(pool.map(record, range(400)))
        summary = metrics.get_summary()
        assert summary['checks_passed'] == 300
        assert summary['checks_failed'] == 100
        assert summary['error_breakdown'] == {'StructureError': 400}

    def test_exposition(self):
        """Metric names appear in the text format"""
        metrics = MetricsCollector()
        metrics.increment_command('newton')
        text = metrics.get_prometheus_metrics().decode('utf-8')
        assert 'mmm_commands_total{command="newton"} 1.0' in text
        assert 'mmm_polynomial_terms' in text

    def test_export(self, tmp_path):
        """Export writes a file and reports success"""
        metrics = MetricsCollector()
        path = tmp_path / 'out.prom'
        assert metrics.export(str(path))
        assert path.exists()
        assert not metrics.export(str(tmp_path / 'missing' / 'out.prom'))


class TestUtils:
    """Test output helpers"""

    def test_format_duration(self):
        """Milliseconds, seconds and minutes"""
        assert format_duration(0.0123) == "12.3ms"
        assert format_duration(2.5) == "2.50s"
        assert format_duration(125) == "2m 5s"

    def test_render_json(self):
        """Compact and order preserving"""
        assert render_json({'b': 1, 'a': [1, 2]}) == '{"b":1,"a":[1,2]}'

    def test_render_csv(self):
        """Header first, no trailing newline"""
        assert render_csv(('a', 'b'), [(1, 'x,y')]) == 'a,b\n1,"x,y"'
