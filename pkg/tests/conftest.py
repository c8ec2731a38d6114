"""Shared fixtures for the solver tests."""

import pytest

from memetic_pso_sat.models import CnfFormula

# (p1 v p2 v -p3) ^ (-p1 v p2 v p3) ^ (-p1 v -p2 v p3) ^ (p1 v -p3 v p4)
EXAMPLE_DIMACS = "p cnf 4 4\n1 2 -3 0\n-1 2 3 0\n-1 -2 3 0\n1 -3 4 0\n"


@pytest.fixture
def example_formula() -> CnfFormula:
    """Four variables, four clauses, satisfiable."""
    return CnfFormula.from_ints(4, [[1, 2, -3], [-1, 2, 3], [-1, -2, 3], [1, -3, 4]])


@pytest.fixture
def example_cnf_file(tmp_path):
    path = tmp_path / "example.cnf"
    path.write_text(EXAMPLE_DIMACS, encoding="utf-8")
    return path


@pytest.fixture
def contradiction() -> CnfFormula:
    """(x1) ^ (-x1): at most one clause can hold."""
    return CnfFormula.from_ints(1, [[1], [-1]])
