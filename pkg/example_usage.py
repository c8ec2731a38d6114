#!/usr/bin/env python3
"""
Example script demonstrating the memetic PSO SAT solver API.

This script shows how to use the memetic-pso-sat package programmatically.
"""

from memetic_pso_sat import LocalSearchConfig, MemeticPsoSolver, SolverConfig, verify_report
from memetic_pso_sat.bench import render_report, run_suite
from memetic_pso_sat.instances import RandomInstanceSpec, brute_force, generate


def main():
    """Demonstrate the memetic PSO solver."""
    print("Memetic PSO SAT - Example Usage")
    print("=" * 50)

    # Example 1: Solve a random instance with the defaults
    print("\n1. Basic Usage:")
    formula = generate(RandomInstanceSpec(variable_count=50, clause_count=200, seed=1))
    report = MemeticPsoSolver().solve(formula)

    print(f"Variables: {formula.variable_count}, clauses: {formula.clause_count}")
    print(f"Status: {report.status.value}")
    print(f"Best fitness: {report.best_fitness}/{report.clause_count}")
    print(f"Iterations: {report.iterations_used}")
    print(f"Verified: {verify_report(formula, report)}")

    # Example 2: Greedy local search and a smaller swarm, checked against the oracle
    print("\n2. Custom Configuration:")
    small = generate(RandomInstanceSpec(variable_count=16, clause_count=80, seed=2))
    config = SolverConfig(
        ls=LocalSearchConfig(pivot="greedy"),
        population_size=20,
        seed_pool_size=200,
        max_iterations=50,
        random_seed=7,
    )
    small_report = MemeticPsoSolver(config).solve(small)
    optimum = brute_force(small)

    print(f"Solver best: {small_report.best_fitness}/{small.clause_count}")
    print(f"Exact optimum: {optimum.max_fitness}/{small.clause_count}")

    # Example 3: A small benchmark suite
    print("\n3. Benchmark Suite:")
    instances = [
        (f"uf20-{seed}", generate(RandomInstanceSpec(variable_count=20, clause_count=91, seed=seed)))
        for seed in range(3)
    ]
    suite = run_suite(instances, config, runs_per_instance=5, base_seed=0)
    print(render_report(suite))


if __name__ == "__main__":
    main()
