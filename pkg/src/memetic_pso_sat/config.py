"""Configuration management for the memetic PSO solver."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

import yaml

from .exceptions import ConfigurationError

DEFAULT_POPULATION_SIZE = 100
DEFAULT_SEED_POOL_SIZE = 1000
DEFAULT_MAX_ITERATIONS = 200


@dataclass(frozen=True)
class PsoParams:
    """Binary PSO coefficients.

    Attributes:
        omega: Inertia weight applied to the previous velocity
        c1: Cognitive coefficient (pull towards the personal best)
        c2: Social coefficient (pull towards the global best)
        v_max: Componentwise velocity bound

    """

    omega: float = 1.0
    c1: float = 2.0
    c2: float = 2.0
    v_max: float = 4.0

    def __post_init__(self) -> None:
        """Validate coefficient ranges.

        Raises:
            ConfigurationError: If v_max is not positive or any coefficient is negative

        """
        if self.v_max <= 0:
            raise ConfigurationError(f"v_max must be positive, got {self.v_max}")
        for name in ("omega", "c1", "c2"):
            value = getattr(self, name)
            if value < 0:
                raise ConfigurationError(f"{name} must be non-negative, got {value}")


class PivotRule(str, Enum):
    """Local-search acceptance policy."""

    GREEDY_ASCENT = "greedy"
    STEEPEST_ASCENT = "steepest"


@dataclass(frozen=True)
class LocalSearchConfig:
    """Bit-flip local search settings.

    Attributes:
        pivot: Move to the first improving neighbor or to the best one
        max_depth: Bound on accepted moves; None means the formula's variable count
        enabled: False turns the solver into plain binary PSO

    """

    pivot: PivotRule = PivotRule.STEEPEST_ASCENT
    max_depth: Optional[int] = None
    enabled: bool = True

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "pivot", PivotRule(self.pivot))
        except ValueError:
            raise ConfigurationError(
                f"Unknown pivot rule {self.pivot!r}, expected one of {[rule.value for rule in PivotRule]}",
            ) from None
        if self.max_depth is not None and self.max_depth < 1:
            raise ConfigurationError(f"max_depth must be at least 1, got {self.max_depth}")

    def depth_for(self, variable_count: int) -> int:
        """Effective depth bound for a formula with ``variable_count`` variables."""
        if self.max_depth is not None:
            return self.max_depth
        return max(1, variable_count)


@dataclass(frozen=True)
class SolverConfig:
    """Full configuration of one memetic PSO run.

    Attributes:
        pso: Kinematics coefficients
        ls: Local search settings
        population_size: Particles kept in the swarm
        seed_pool_size: Random candidates generated before keeping the best
        max_iterations: Iteration budget after seeding
        target_fitness: Stop once gbest reaches this many clauses (None = all)
        random_seed: Master seed for every random stream of the run

    """

    pso: PsoParams = field(default_factory=PsoParams)
    ls: LocalSearchConfig = field(default_factory=LocalSearchConfig)
    population_size: int = DEFAULT_POPULATION_SIZE
    seed_pool_size: int = DEFAULT_SEED_POOL_SIZE
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    target_fitness: Optional[int] = None
    random_seed: int = 0

    def __post_init__(self) -> None:
        """Validate sizes and budgets.

        Raises:
            ConfigurationError: If a size or budget is out of range

        """
        if self.population_size < 1:
            raise ConfigurationError(f"population_size must be positive, got {self.population_size}")
        if self.seed_pool_size < self.population_size:
            raise ConfigurationError(
                f"seed_pool_size ({self.seed_pool_size}) must be at least "
                f"population_size ({self.population_size})",
            )
        if self.max_iterations < 1:
            raise ConfigurationError(f"max_iterations must be at least 1, got {self.max_iterations}")
        if self.target_fitness is not None and self.target_fitness < 0:
            raise ConfigurationError(f"target_fitness must be non-negative, got {self.target_fitness}")
        if not 0 <= self.random_seed < 2**64:
            raise ConfigurationError(f"random_seed must fit in 64 unsigned bits, got {self.random_seed}")

    def target_for(self, clause_count: int) -> int:
        """Resolve the stopping fitness for a formula with ``clause_count`` clauses.

        Raises:
            ConfigurationError: If the target exceeds the clause count

        """
        if self.target_fitness is None:
            return clause_count
        if self.target_fitness > clause_count:
            raise ConfigurationError(
                f"target_fitness {self.target_fitness} exceeds the clause count {clause_count}",
            )
        return self.target_fitness

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["ls"]["pivot"] = self.ls.pivot.value
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SolverConfig:
        """Create SolverConfig from a dictionary.

        Missing keys take their defaults.

        Args:
            data: Dictionary with optional ``pso`` and ``ls`` sections and
                top-level size, budget and seed fields

        Returns:
            SolverConfig instance

        Raises:
            ConfigurationError: If keys are unknown or values are invalid

        """
        if not isinstance(data, dict):
            raise ConfigurationError("Solver configuration must be a mapping")
        try:
            pso = PsoParams(**_section(data.get("pso"), PsoParams))
            ls = LocalSearchConfig(**_section(data.get("ls"), LocalSearchConfig))
            top_level = {key: value for key, value in data.items() if key not in ("pso", "ls")}
            _reject_unknown(top_level, cls)
            return cls(pso=pso, ls=ls, **top_level)
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigurationError):
                raise
            raise ConfigurationError(f"Invalid configuration data: {e}") from e

    @classmethod
    def from_yaml_file(cls, file_path: Union[str, Path]) -> SolverConfig:
        """Load configuration from a YAML file.

        Raises:
            FileNotFoundError: If the file doesn't exist
            ConfigurationError: If the YAML is malformed or holds invalid values

        """
        file_path = Path(file_path)

        if not file_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {file_path}")

        try:
            with file_path.open("r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid YAML format in {file_path}: {e}") from e

        return cls.from_dict(data or {})

    def to_yaml_file(self, file_path: Union[str, Path]) -> None:
        file_path = Path(file_path)
        file_path.parent.mkdir(parents=True, exist_ok=True)

        with file_path.open("w", encoding="utf-8") as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, sort_keys=True)


def _section(data: Any, section_type: type) -> dict[str, Any]:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"Section for {section_type.__name__} must be a mapping")
    _reject_unknown(data, section_type)
    return dict(data)


def _reject_unknown(data: dict[str, Any], target: type) -> None:
    known = {f.name for f in fields(target)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigurationError(f"Unknown {target.__name__} fields: {unknown}")


def create_example_config(file_path: Union[str, Path]) -> None:
    """Write a configuration file holding every default value.

    Args:
        file_path: Path where to create the example file

    """
    SolverConfig().to_yaml_file(file_path)
