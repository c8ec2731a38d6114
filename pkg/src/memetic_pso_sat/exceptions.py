"""Exception types raised by the solver package."""

from __future__ import annotations


class InvalidAssignmentError(ValueError):
    """An assignment does not fit the formula it is evaluated against."""


class ConfigurationError(ValueError):
    """A solver, swarm or instance configuration value is out of range."""


class OracleRefusalError(ValueError):
    """The brute-force oracle was asked to enumerate too many variables."""


class DimacsParseError(ValueError):
    """Malformed DIMACS CNF input.

    Attributes:
        line_number: 1-based line where the problem was detected

    """

    def __init__(self, message: str, line_number: int) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class SoundnessError(RuntimeError):
    """A run report failed re-verification against its formula."""
