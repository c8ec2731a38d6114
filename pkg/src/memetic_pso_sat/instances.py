"""Random 3-SAT instance generation and an exhaustive oracle for small formulas."""

from __future__ import annotations

import logging
import multiprocessing as mp
from dataclasses import dataclass
from functools import partial
from typing import Optional

import numpy as np

from .exceptions import ConfigurationError, OracleRefusalError
from .models import Assignment, Clause, CnfFormula, Literal, evaluate_many

logger = logging.getLogger(__name__)

MAX_ORACLE_VARIABLES = 24
ORACLE_BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class RandomInstanceSpec:
    """Fixed-clause-length random 3-SAT instance parameters."""

    variable_count: int
    clause_count: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.variable_count < 3:
            raise ConfigurationError(
                f"A 3-SAT instance needs at least 3 variables, got {self.variable_count}",
            )
        if self.clause_count < 0:
            raise ConfigurationError(f"Clause count must be non-negative, got {self.clause_count}")
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError(f"Seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(frozen=True)
class OracleResult:
    """Exact MAX-SAT optimum of a small formula.

    Attributes:
        max_fitness: Largest number of simultaneously satisfiable clauses
        witness: Lexicographically smallest assignment reaching it
        satisfiable: True if every clause can be satisfied

    """

    max_fitness: int
    witness: Assignment
    satisfiable: bool


def generate(spec: RandomInstanceSpec) -> CnfFormula:
    """Draw a random 3-SAT formula.

    Every clause picks 3 distinct variables uniformly without replacement and
    negates each with probability 1/2. Repeated clauses are allowed.
    """
    rng = np.random.default_rng(spec.seed)
    clauses = []
    for _ in range(spec.clause_count):
        variables = rng.choice(spec.variable_count, size=3, replace=False)
        signs = rng.integers(0, 2, size=3)
        clauses.append(
            Clause(
                tuple(
                    Literal(variable_index=int(variable), negated=bool(sign))
                    for variable, sign in zip(variables, signs)
                ),
            ),
        )
    return CnfFormula(variable_count=spec.variable_count, clauses=tuple(clauses))


def instance_comments(spec: RandomInstanceSpec) -> list[str]:
    """DIMACS comment lines that make a generated file reproducible."""
    return [
        "random 3-SAT, fixed clause length model",
        f"variables={spec.variable_count} clauses={spec.clause_count} seed={spec.seed}",
    ]


def _enumerate_block(bounds: tuple[int, int], formula: CnfFormula) -> tuple[int, int]:
    """Best fitness in a range of assignment codes and the smallest code reaching it.

    Code c maps variable 0 to the most significant bit, so ascending codes
    are lexicographically ascending bit vectors.
    """
    start, stop = bounds
    variable_count = formula.variable_count
    codes = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(variable_count - 1, -1, -1, dtype=np.int64)
    bits = ((codes[:, np.newaxis] >> shifts) & 1).astype(np.uint8)
    fitnesses = evaluate_many(formula, bits)
    best = int(np.argmax(fitnesses))
    return int(fitnesses[best]), start + best


def brute_force(formula: CnfFormula, workers: Optional[int] = None) -> OracleResult:
    """Enumerate all 2^n assignments and return the exact optimum.

    Args:
        formula: Formula with at most 24 variables; clauses of any width
        workers: Processes to spread the enumeration over (None or 1 = serial)

    Raises:
        OracleRefusalError: If the formula has more than 24 variables

    """
    variable_count = formula.variable_count
    if variable_count > MAX_ORACLE_VARIABLES:
        raise OracleRefusalError(
            f"Brute force is limited to {MAX_ORACLE_VARIABLES} variables, "
            f"formula has {variable_count}",
        )

    total = 1 << variable_count
    blocks = [
        (start, min(start + ORACLE_BLOCK_SIZE, total))
        for start in range(0, total, ORACLE_BLOCK_SIZE)
    ]
    logger.info(f"Enumerating {total:,} assignments in {len(blocks)} blocks")

    evaluate_func = partial(_enumerate_block, formula=formula)
    if workers is not None and workers > 1 and len(blocks) > 1:
        with mp.Pool(processes=workers) as pool:
            results = pool.map(evaluate_func, blocks)
    else:
        results = [evaluate_func(block) for block in blocks]

    # Highest fitness first, then smallest code; independent of block order.
    max_fitness, code = min(results, key=lambda result: (-result[0], result[1]))
    shifts = np.arange(variable_count - 1, -1, -1, dtype=np.int64)
    witness = ((np.int64(code) >> shifts) & 1).astype(np.uint8)

    return OracleResult(
        max_fitness=max_fitness,
        witness=witness,
        satisfiable=max_fitness == formula.clause_count,
    )
