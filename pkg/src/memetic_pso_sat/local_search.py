"""Single-bit-flip hill climbing over assignments.

Scoring is incremental: every clause keeps a count of its true literals,
and the fitness gain of flipping variable v is

    (clauses with no true literal that contain v)
  - (clauses whose only true literal is v's literal).

Clauses containing a variable with both polarities are always true; they
are excluded from scoring and counted as satisfied.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
import numpy.typing as npt

from .config import LocalSearchConfig, PivotRule
from .models import Assignment, CnfFormula, as_assignment

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalSearchOutcome:
    """Result of one local search.

    Attributes:
        assignment: Final position
        fitness: Clauses satisfied by ``assignment``
        start_fitness: Clauses satisfied by the starting position
        moves: Improving flips accepted
        depth_exhausted: True if the search stopped on the depth bound

    """

    assignment: Assignment
    fitness: int
    start_fitness: int
    moves: int
    depth_exhausted: bool


def neighbors(assignment: Any) -> list[Assignment]:
    """All assignments at Hamming distance 1, the k-th flipping bit k."""
    bits = as_assignment(assignment)
    result = []
    for index in range(bits.shape[0]):
        neighbor = bits.copy()
        neighbor[index] ^= 1
        result.append(neighbor)
    return result


class LocalSearch:
    """Hill climber bound to one formula.

    Literal occurrences are indexed once, so a solver can refine many
    particles against the same formula cheaply. Instances hold no per-run
    state and can be shared.
    """

    def __init__(self, formula: CnfFormula, config: LocalSearchConfig) -> None:
        self.formula = formula
        self.config = config
        self.max_depth = config.depth_for(formula.variable_count)

        clause_ids: list[int] = []
        variable_ids: list[int] = []
        negations: list[bool] = []
        tautologies = np.zeros(formula.clause_count, dtype=bool)
        for index, clause in enumerate(formula.clauses):
            if clause.is_tautology:
                tautologies[index] = True
                continue
            for literal in clause.literals:
                clause_ids.append(index)
                variable_ids.append(literal.variable_index)
                negations.append(literal.negated)

        self._occ_clause = np.asarray(clause_ids, dtype=np.intp)
        self._occ_variable = np.asarray(variable_ids, dtype=np.intp)
        self._occ_negated = np.asarray(negations, dtype=bool)
        self._tautologies = tautologies

        # Per-variable slices into the occurrence arrays, for flip updates.
        order = np.argsort(self._occ_variable, kind="stable")
        bounds = np.searchsorted(
            self._occ_variable[order], np.arange(formula.variable_count + 1),
        )
        self._by_variable = [
            (self._occ_clause[order[lo:hi]], self._occ_negated[order[lo:hi]])
            for lo, hi in zip(bounds[:-1], bounds[1:])
        ]

    def true_literal_counts(self, bits: npt.NDArray[np.bool_]) -> npt.NDArray[np.int64]:
        """True literals per clause; tautologies pinned to 1."""
        literal_true = bits[self._occ_variable] != self._occ_negated
        counts = np.bincount(
            self._occ_clause, weights=literal_true, minlength=self.formula.clause_count,
        ).astype(np.int64)
        counts[self._tautologies] = 1
        return counts

    def flip_gains(
        self, bits: npt.NDArray[np.bool_], counts: npt.NDArray[np.int64],
    ) -> npt.NDArray[np.int64]:
        """Fitness change of flipping each variable, given current true-literal counts."""
        literal_true = bits[self._occ_variable] != self._occ_negated
        clause_counts = counts[self._occ_clause]
        delta = (clause_counts == 0).astype(np.int64) - (literal_true & (clause_counts == 1))
        return np.bincount(
            self._occ_variable, weights=delta, minlength=self.formula.variable_count,
        ).astype(np.int64)

    def run(self, start: Any) -> LocalSearchOutcome:
        """Climb from ``start`` until no strict improvement, depth bound, or all clauses true.

        Raises:
            InvalidAssignmentError: If ``start`` does not match the formula

        """
        bits = as_assignment(start, self.formula.variable_count).astype(bool)
        counts = self.true_literal_counts(bits)
        clause_count = self.formula.clause_count
        fitness = int(np.count_nonzero(counts))
        start_fitness = fitness
        greedy = self.config.pivot is PivotRule.GREEDY_ASCENT

        moves = 0
        while moves < self.max_depth and fitness < clause_count:
            gains = self.flip_gains(bits, counts)
            if greedy:
                improving = np.flatnonzero(gains > 0)
                if improving.size == 0:
                    break
                variable = int(improving[0])
            else:
                variable = int(np.argmax(gains))
                if gains[variable] <= 0:
                    break

            bits[variable] = not bits[variable]
            clauses, negated = self._by_variable[variable]
            counts[clauses] += np.where(negated != bits[variable], 1, -1)
            fitness += int(gains[variable])
            moves += 1

        return LocalSearchOutcome(
            assignment=bits.astype(np.uint8),
            fitness=fitness,
            start_fitness=start_fitness,
            moves=moves,
            depth_exhausted=moves >= self.max_depth and fitness < clause_count,
        )


def local_search(
    formula: CnfFormula,
    start: Any,
    cfg: LocalSearchConfig,
) -> tuple[Assignment, int]:
    """Refine ``start`` by bit-flip hill climbing; returns (assignment, fitness)."""
    outcome = LocalSearch(formula, cfg).run(start)
    return outcome.assignment, outcome.fitness
