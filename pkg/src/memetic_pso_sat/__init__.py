"""Memetic PSO SAT solver.

A binary particle swarm with heuristic seeding and per-iteration bit-flip
local search for SAT and MAX-SAT, plus DIMACS I/O, random 3-SAT generation,
an exhaustive oracle for small formulas and a benchmark harness.
"""

__version__ = "0.1.0"

from .config import LocalSearchConfig, PivotRule, PsoParams, SolverConfig
from .models import CnfFormula, RunReport, RunStatus, evaluate, unsatisfied_clauses
from .solver import MemeticPsoSolver, solve, verify_report

__all__ = [
    "CnfFormula",
    "LocalSearchConfig",
    "MemeticPsoSolver",
    "PivotRule",
    "PsoParams",
    "RunReport",
    "RunStatus",
    "SolverConfig",
    "evaluate",
    "solve",
    "unsatisfied_clauses",
    "verify_report",
]
