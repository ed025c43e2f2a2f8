"""Tests for configuration loading."""
import pytest

from nicholsbench.core.config import WorkbenchConfig, load_config, parse_config
from nicholsbench.core.errors import ConfigurationError


class TestParseConfig:
    """Test parse_config."""

    def test_defaults(self):
        """Test that an empty mapping gives every default."""
        config = parse_config(None)
        assert config.engine.cutoff == 8
        assert config.engine.root_cap == 500
        assert config.engine.workers == 1
        assert config.engine.constant_order_scan == 64
        assert config.field.transcendental == "t"
        assert config.catalog.M == 3
        assert config.catalog.L == 2
        assert config.logging.level == "INFO"
        assert config.output.save_results is False

    def test_overrides(self):
        """Test nested overrides."""
        config = parse_config({"engine": {"cutoff": 6, "workers": 4}, "catalog": {"M": 5}})
        assert config.engine.cutoff == 6
        assert config.engine.workers == 4
        assert config.catalog.M == 5
        assert config.catalog.L == 2

    def test_level_case(self):
        """Test that logging levels are case-insensitive."""
        assert parse_config({"logging": {"level": "debug"}}).logging.level == "DEBUG"

    @pytest.mark.parametrize(
        "data",
        [
            {"engine": {"cutoff": 0}},
            {"engine": {"workers": 0}},
            {"catalog": {"M": 2}},
            {"catalog": {"L": 1}},
            {"field": {"transcendental": "z"}},
            {"field": {"transcendental": "2t"}},
            {"logging": {"level": "LOUD"}},
            {"engine": {"speed": 1}},
            {"extra": {}},
        ],
    )
    def test_invalid(self, data):
        """Test that invalid values and unknown keys are rejected."""
        with pytest.raises(ConfigurationError):
            parse_config(data)

    def test_to_dict(self):
        """Test the dump covers every section."""
        data = WorkbenchConfig().to_dict()
        assert set(data) == {"engine", "field", "catalog", "logging", "output"}


class TestLoadConfig:
    """Test load_config."""

    def test_yaml_file(self, tmp_path):
        """Test reading a YAML file."""
        path = tmp_path / "config.yaml"
        path.write_text("engine:\n  cutoff: 5\nfield:\n  transcendental: u\n")
        config = load_config(path)
        assert config.engine.cutoff == 5
        assert config.field.transcendental == "u"

    def test_empty_file(self, tmp_path):
        """Test that an empty file gives the defaults."""
        path = tmp_path / "empty.yaml"
        path.write_text("")
        assert load_config(path) == WorkbenchConfig()

    def test_missing_file(self, tmp_path):
        """Test an unreadable path."""
        with pytest.raises(ConfigurationError):
            load_config(tmp_path / "missing.yaml")

    def test_invalid_yaml(self, tmp_path):
        """Test malformed YAML."""
        path = tmp_path / "bad.yaml"
        path.write_text("engine: [cutoff\n")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_top_level_list(self, tmp_path):
        """Test that the top level must be a mapping."""
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigurationError):
            load_config(path)
