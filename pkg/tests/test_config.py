"""Tests for the solver configuration module."""

import pytest
import tempfile
import yaml
from pathlib import Path

from memetic_pso_sat.config import (
    DEFAULT_MAX_ITERATIONS,
    DEFAULT_POPULATION_SIZE,
    DEFAULT_SEED_POOL_SIZE,
    LocalSearchConfig,
    PivotRule,
    PsoParams,
    SolverConfig,
    create_example_config,
)
from memetic_pso_sat.exceptions import ConfigurationError


class TestPsoParams:
    """Test suite for PsoParams."""

    def test_defaults(self):
        params = PsoParams()
        assert (params.omega, params.c1, params.c2, params.v_max) == (1.0, 2.0, 2.0, 4.0)

    def test_non_positive_vmax(self):
        with pytest.raises(ConfigurationError, match="v_max must be positive"):
            PsoParams(v_max=0.0)

    def test_negative_coefficient(self):
        with pytest.raises(ConfigurationError, match="c2 must be non-negative"):
            PsoParams(c2=-0.5)


class TestLocalSearchConfig:
    """Test suite for LocalSearchConfig."""

    def test_pivot_from_string(self):
        assert LocalSearchConfig(pivot="greedy").pivot is PivotRule.GREEDY_ASCENT

    def test_unknown_pivot(self):
        with pytest.raises(ConfigurationError, match="Unknown pivot rule"):
            LocalSearchConfig(pivot="random-walk")

    def test_depth_defaults_to_variable_count(self):
        config = LocalSearchConfig()
        assert config.depth_for(36) == 36
        assert config.depth_for(0) == 1
        assert LocalSearchConfig(max_depth=5).depth_for(36) == 5

    def test_invalid_depth(self):
        with pytest.raises(ConfigurationError, match="max_depth"):
            LocalSearchConfig(max_depth=0)


class TestSolverConfig:
    """Test suite for SolverConfig class."""

    def test_config_creation_with_defaults(self):
        """Test the default run configuration."""
        config = SolverConfig()

        assert config.population_size == DEFAULT_POPULATION_SIZE == 100
        assert config.seed_pool_size == DEFAULT_SEED_POOL_SIZE == 1000
        assert config.max_iterations == DEFAULT_MAX_ITERATIONS
        assert config.target_fitness is None
        assert config.random_seed == 0
        assert config.ls.pivot is PivotRule.STEEPEST_ASCENT
        assert config.ls.enabled

    @pytest.mark.parametrize(
        "kwargs, message",
        [
            ({"population_size": 0}, "population_size"),
            ({"population_size": 50, "seed_pool_size": 49}, "seed_pool_size"),
            ({"max_iterations": 0}, "max_iterations"),
            ({"target_fitness": -1}, "target_fitness"),
            ({"random_seed": -1}, "random_seed"),
            ({"random_seed": 2**64}, "random_seed"),
        ],
    )
    def test_invalid_values(self, kwargs, message):
        with pytest.raises(ConfigurationError, match=message):
            SolverConfig(**kwargs)

    def test_pool_equal_to_population(self):
        config = SolverConfig(population_size=20, seed_pool_size=20)
        assert config.seed_pool_size == config.population_size

    def test_target_for(self):
        assert SolverConfig().target_for(91) == 91
        assert SolverConfig(target_fitness=80).target_for(91) == 80
        with pytest.raises(ConfigurationError, match="exceeds the clause count"):
            SolverConfig(target_fitness=92).target_for(91)

    def test_from_dict_minimal_config(self):
        """Test that missing keys take their defaults."""
        config = SolverConfig.from_dict({"max_iterations": 50})

        assert config.max_iterations == 50
        assert config.pso == PsoParams()
        assert config.ls == LocalSearchConfig()

    def test_from_dict_with_sections(self):
        config_dict = {
            "pso": {"omega": 0.9, "v_max": 6.0},
            "ls": {"pivot": "greedy", "max_depth": 10},
            "population_size": 20,
            "seed_pool_size": 200,
            "random_seed": 17,
        }

        config = SolverConfig.from_dict(config_dict)

        assert config.pso == PsoParams(omega=0.9, v_max=6.0)
        assert config.ls == LocalSearchConfig(pivot=PivotRule.GREEDY_ASCENT, max_depth=10)
        assert config.population_size == 20
        assert config.random_seed == 17

    def test_from_dict_unknown_keys(self):
        with pytest.raises(ConfigurationError, match="Unknown SolverConfig fields"):
            SolverConfig.from_dict({"generations": 10})
        with pytest.raises(ConfigurationError, match="Unknown PsoParams fields"):
            SolverConfig.from_dict({"pso": {"inertia": 1.0}})

    def test_from_dict_invalid_section(self):
        with pytest.raises(ConfigurationError, match="must be a mapping"):
            SolverConfig.from_dict({"ls": "steepest"})

    def test_from_dict_not_a_mapping(self):
        with pytest.raises(ConfigurationError):
            SolverConfig.from_dict([1, 2, 3])

    def test_dict_round_trip(self):
        config = SolverConfig(
            pso=PsoParams(c1=1.5),
            ls=LocalSearchConfig(pivot="greedy", enabled=False),
            target_fitness=40,
            random_seed=3,
        )
        data = config.to_dict()
        assert data["ls"]["pivot"] == "greedy"
        assert SolverConfig.from_dict(data) == config

    def test_from_file_yaml(self):
        """Test loading config from a YAML file."""
        config_data = {
            "pso": {"c1": 1.0, "c2": 3.0},
            "ls": {"pivot": "steepest"},
            "max_iterations": 150,
        }

        with tempfile.NamedTemporaryFile(mode='w', suffix='.yaml', delete=False) as f:
            yaml.dump(config_data, f)
            temp_path = f.name

        try:
            config = SolverConfig.from_yaml_file(temp_path)

            assert config.pso.c1 == 1.0
            assert config.pso.c2 == 3.0
            assert config.max_iterations == 150
        finally:
            Path(temp_path).unlink()

    def test_from_file_empty_yaml(self, tmp_path):
        path = tmp_path / "empty.yaml"
        path.write_text("", encoding="utf-8")
        assert SolverConfig.from_yaml_file(path) == SolverConfig()

    def test_from_file_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError, match="Configuration file not found"):
            SolverConfig.from_yaml_file(tmp_path / "absent.yaml")

    def test_from_file_invalid_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("pso: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigurationError, match="Invalid YAML"):
            SolverConfig.from_yaml_file(path)

    def test_to_yaml_file(self):
        """Test writing config to YAML and reading the raw data back."""
        config = SolverConfig(population_size=30, seed_pool_size=300)

        with tempfile.NamedTemporaryFile(mode='w', suffix='.yaml', delete=False) as f:
            temp_path = f.name

        try:
            config.to_yaml_file(temp_path)

            with open(temp_path, 'r') as f:
                result = yaml.safe_load(f)

            assert result["population_size"] == 30
            assert result["seed_pool_size"] == 300
            assert result["ls"] == {"pivot": "steepest", "max_depth": None, "enabled": True}
            assert result["pso"] == {"omega": 1.0, "c1": 2.0, "c2": 2.0, "v_max": 4.0}
            assert SolverConfig.from_yaml_file(temp_path) == config
        finally:
            Path(temp_path).unlink()


class TestCreateExampleConfig:
    """Test the example configuration writer."""

    def test_writes_defaults(self, tmp_path):
        path = tmp_path / "nested" / "solver.yaml"
        create_example_config(path)
        assert path.exists()
        assert SolverConfig.from_yaml_file(path) == SolverConfig()
