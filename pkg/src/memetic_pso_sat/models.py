"""Data models for CNF formulas, assignments and solver run reports."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Any, Iterable, Optional

import numpy as np
import numpy.typing as npt

from .exceptions import InvalidAssignmentError

# One bit per variable, 0 = false, 1 = true.
Assignment = npt.NDArray[np.uint8]


@dataclass(frozen=True)
class Literal:
    """A boolean variable or its negation. Variable indices are 0-based."""

    variable_index: int
    negated: bool = False

    def __post_init__(self) -> None:
        if self.variable_index < 0:
            raise ValueError(f"Variable index must be non-negative, got {self.variable_index}")

    @classmethod
    def from_dimacs(cls, value: int) -> Literal:
        """Convert a signed DIMACS literal (1-based, negative = negated)."""
        if value == 0:
            raise ValueError("0 terminates a DIMACS clause and is not a literal")
        return cls(variable_index=abs(value) - 1, negated=value < 0)

    def to_dimacs(self) -> int:
        number = self.variable_index + 1
        return -number if self.negated else number

    def is_true(self, bit: int) -> bool:
        return bool(bit) != self.negated


@dataclass(frozen=True)
class Clause:
    """A disjunction of one or more distinct literals."""

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise ValueError("A clause needs at least one literal")
        if len(set(self.literals)) != len(self.literals):
            raise ValueError(f"Duplicate literal in clause {self.to_dimacs()}")

    @classmethod
    def from_dimacs(cls, values: Iterable[int]) -> Clause:
        """Build a clause from signed integers, dropping repeated literals.

        Complementary pairs (x and -x) are kept; such a clause is a tautology.
        """
        literals = dict.fromkeys(Literal.from_dimacs(value) for value in values)
        return cls(tuple(literals))

    def to_dimacs(self) -> list[int]:
        return [literal.to_dimacs() for literal in self.literals]

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(literal.variable_index for literal in self.literals)

    @property
    def is_tautology(self) -> bool:
        """True if some variable appears with both polarities."""
        return len(set(self.variables)) < len(self.literals)

    @property
    def is_strict_3sat(self) -> bool:
        return len(self.literals) == 3 and len(set(self.variables)) == 3

    def is_satisfied_by(self, bits: Iterable[int]) -> bool:
        values = list(bits)
        return any(literal.is_true(values[literal.variable_index]) for literal in self.literals)


@dataclass(frozen=True)
class CnfFormula:
    """A conjunction of clauses over ``variable_count`` boolean variables.

    Clause order is stable; clause indices appear in reports.

    Attributes:
        variable_count: Number of variables n
        clauses: The m clauses of the formula

    """

    variable_count: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(self.clauses))
        if self.variable_count < 0:
            raise ValueError(f"Variable count must be non-negative, got {self.variable_count}")
        for index, clause in enumerate(self.clauses):
            for literal in clause.literals:
                if literal.variable_index >= self.variable_count:
                    raise ValueError(
                        f"Clause {index} uses variable {literal.variable_index}, "
                        f"but the formula has only {self.variable_count} variables",
                    )

    @classmethod
    def from_ints(cls, variable_count: int, clauses: Iterable[Iterable[int]]) -> CnfFormula:
        """Create a formula from DIMACS-style signed integer clauses.

        Example:
            ``CnfFormula.from_ints(2, [[1, -2], [2]])`` is (x1 or not x2) and x2.

        """
        return cls(
            variable_count=variable_count,
            clauses=tuple(Clause.from_dimacs(clause) for clause in clauses),
        )

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    @property
    def clause_to_variable_ratio(self) -> float:
        if self.variable_count == 0:
            return 0.0
        return self.clause_count / self.variable_count

    @cached_property
    def literal_table(
        self,
    ) -> tuple[npt.NDArray[np.intp], npt.NDArray[np.bool_], npt.NDArray[np.bool_]]:
        """Padded ``(m, width)`` arrays: variable indices, negation flags, validity mask."""
        width = max((len(clause.literals) for clause in self.clauses), default=0)
        variables = np.zeros((self.clause_count, width), dtype=np.intp)
        negated = np.zeros((self.clause_count, width), dtype=bool)
        mask = np.zeros((self.clause_count, width), dtype=bool)
        for row, clause in enumerate(self.clauses):
            for col, literal in enumerate(clause.literals):
                variables[row, col] = literal.variable_index
                negated[row, col] = literal.negated
                mask[row, col] = True
        return variables, negated, mask


def as_assignment(bits: Any, variable_count: Optional[int] = None) -> Assignment:
    """Validate ``bits`` as a 0/1 vector and return a uint8 copy.

    Raises:
        InvalidAssignmentError: If the vector is not 1-D, holds values other
            than 0/1, or its length differs from ``variable_count``

    """
    array = np.asarray(bits)
    if array.ndim != 1:
        raise InvalidAssignmentError(f"Assignment must be a 1-D bit vector, got shape {array.shape}")
    if variable_count is not None and array.shape[0] != variable_count:
        raise InvalidAssignmentError(
            f"Assignment has {array.shape[0]} bits, formula has {variable_count} variables",
        )
    if array.size and not np.isin(array, (0, 1)).all():
        raise InvalidAssignmentError("Assignment bits must be 0 or 1")
    return array.astype(np.uint8)


def _clause_truth(formula: CnfFormula, bits_matrix: npt.NDArray[np.bool_]) -> npt.NDArray[np.bool_]:
    """Truth value of every clause (columns) under every assignment (rows)."""
    variables, negated, mask = formula.literal_table
    values = bits_matrix[:, variables] != negated
    return (values & mask).any(axis=2)


def evaluate(formula: CnfFormula, assignment: Any) -> int:
    """Count the clauses of ``formula`` made true by ``assignment``.

    Raises:
        InvalidAssignmentError: If the assignment length differs from n

    """
    bits = as_assignment(assignment, formula.variable_count).astype(bool)
    return int(_clause_truth(formula, bits[np.newaxis, :]).sum())


def evaluate_many(formula: CnfFormula, bits_matrix: Any) -> npt.NDArray[np.int64]:
    """Evaluate each row of a ``(k, n)`` 0/1 matrix; returns k fitness values."""
    matrix = np.asarray(bits_matrix)
    if matrix.ndim != 2 or matrix.shape[1] != formula.variable_count:
        raise InvalidAssignmentError(
            f"Expected a (k, {formula.variable_count}) bit matrix, got shape {matrix.shape}",
        )
    return _clause_truth(formula, matrix.astype(bool)).sum(axis=1).astype(np.int64)


def unsatisfied_clauses(formula: CnfFormula, assignment: Any) -> list[int]:
    """Indices of the clauses false under ``assignment``, ascending."""
    bits = as_assignment(assignment, formula.variable_count).astype(bool)
    truth = _clause_truth(formula, bits[np.newaxis, :])[0]
    return [int(index) for index in np.flatnonzero(~truth)]


class RunStatus(str, Enum):
    """Outcome of a single solver run."""

    SATISFIED = "satisfied"
    TARGET_REACHED = "target_reached"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass(frozen=True)
class RunReport:
    """Result of one solver run.

    Attributes:
        status: Why the run stopped
        best_assignment: Global best position, one 0/1 entry per variable
        best_fitness: Clauses satisfied by ``best_assignment``
        clause_count: m of the solved formula
        iterations_used: PSO iterations executed after seeding
        fitness_trace: ``(iteration, gbest_fitness)`` pairs, iteration 0 first
        wall_time: Solve time in seconds (parsing excluded)
        seed: Master random seed of the run

    """

    status: RunStatus
    best_assignment: tuple[int, ...]
    best_fitness: int
    clause_count: int
    iterations_used: int
    fitness_trace: tuple[tuple[int, int], ...]
    wall_time: float
    seed: int

    @property
    def false_clause_count(self) -> int:
        return self.clause_count - self.best_fitness

    @property
    def is_satisfied(self) -> bool:
        return self.status is RunStatus.SATISFIED

    def to_dict(self, include_trace: bool = True) -> dict[str, Any]:
        data: dict[str, Any] = {
            "status": self.status.value,
            "best_fitness": self.best_fitness,
            "clause_count": self.clause_count,
            "false_clause_count": self.false_clause_count,
            "iterations_used": self.iterations_used,
            "wall_time": self.wall_time,
            "seed": self.seed,
            "best_assignment": "".join(str(bit) for bit in self.best_assignment),
        }
        if include_trace:
            data["fitness_trace"] = [list(entry) for entry in self.fitness_trace]
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunReport:
        try:
            return cls(
                status=RunStatus(data["status"]),
                best_assignment=tuple(int(bit) for bit in data["best_assignment"]),
                best_fitness=int(data["best_fitness"]),
                clause_count=int(data["clause_count"]),
                iterations_used=int(data["iterations_used"]),
                fitness_trace=tuple(
                    (int(iteration), int(fitness))
                    for iteration, fitness in data.get("fitness_trace", [])
                ),
                wall_time=float(data["wall_time"]),
                seed=int(data["seed"]),
            )
        except KeyError as e:
            raise ValueError(f"Missing required field: {e}") from e
