"""Memetic binary PSO solver for SAT / MAX-SAT."""

from __future__ import annotations

import csv
import logging
import time
from pathlib import Path
from typing import Callable, Optional, Union

import numpy as np
import numpy.typing as npt

from .config import PsoParams, SolverConfig
from .exceptions import ConfigurationError, InvalidAssignmentError
from .local_search import LocalSearch
from .models import CnfFormula, RunReport, RunStatus, evaluate, evaluate_many
from .swarm import (
    GlobalBest,
    Particle,
    initial_velocity,
    refresh_bests,
    update_position,
    update_velocity,
)

# Set up logging
logger = logging.getLogger(__name__)

# (iteration, particle index, fitness before refinement, fitness after)
RefinementHook = Callable[[int, int, int, int], None]


def random_streams(seed: int, count: int) -> list[np.random.Generator]:
    """Derive ``count`` independent Philox streams from one master seed.

    Stream 0 drives seeding; stream i + 1 belongs to particle i.
    """
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.Generator(np.random.Philox(child)) for child in children]


def select_top(fitnesses: npt.ArrayLike, keep: int) -> npt.NDArray[np.intp]:
    """Indices of the ``keep`` highest fitness values (stable on ties)."""
    values = np.asarray(fitnesses)
    if keep > values.shape[0]:
        raise ConfigurationError(f"Cannot keep {keep} of {values.shape[0]} candidates")
    return np.argsort(-values, kind="stable")[:keep]


def seed_population(
    formula: CnfFormula,
    pool_size: int,
    keep: int,
    rng: np.random.Generator,
    params: Optional[PsoParams] = None,
) -> list[Particle]:
    """Generate ``pool_size`` random assignments and keep the ``keep`` fittest as particles.

    Each kept particle starts with its personal best at its own position and
    a velocity drawn uniformly from ``[-v_max, v_max]``.

    Raises:
        ConfigurationError: If ``keep`` is below 1 or above ``pool_size``

    """
    if keep < 1 or keep > pool_size:
        raise ConfigurationError(f"Need 1 <= keep <= pool_size, got keep={keep}, pool_size={pool_size}")
    params = params or PsoParams()

    pool = rng.integers(0, 2, size=(pool_size, formula.variable_count), dtype=np.uint8)
    fitnesses = evaluate_many(formula, pool)
    kept = select_top(fitnesses, keep)

    logger.debug(
        f"Seeded {keep} of {pool_size} candidates: kept fitness "
        f"{int(fitnesses[kept].min())}..{int(fitnesses[kept].max())}, "
        f"pool mean {float(fitnesses.mean()):.2f}",
    )

    particles = []
    for index in kept:
        position = pool[index].copy()
        fitness = int(fitnesses[index])
        particles.append(
            Particle(
                position=position,
                velocity=initial_velocity(formula.variable_count, params, rng),
                personal_best_position=position,
                personal_best_fitness=fitness,
                fitness=fitness,
            ),
        )
    return particles


class MemeticPsoSolver:
    """Binary PSO with heuristic seeding and per-iteration local search."""

    def __init__(
        self,
        config: Optional[SolverConfig] = None,
        refinement_hook: Optional[RefinementHook] = None,
    ) -> None:
        """Initialize the solver.

        Args:
            config: Solver configuration, defaults when omitted
            refinement_hook: Called after every local-search refinement with
                (iteration, particle index, fitness before, fitness after)
        """
        self.config = config or SolverConfig()
        self.refinement_hook = refinement_hook

    def solve(self, formula: CnfFormula) -> RunReport:
        """Run the memetic PSO on ``formula`` until satisfied, target reached or budget spent.

        Args:
            formula: Formula to maximize satisfied clauses of

        Returns:
            RunReport for the run; identical for identical (formula, config)
            apart from ``wall_time``
        """
        config = self.config
        clause_count = formula.clause_count
        target = config.target_for(clause_count)
        started = time.perf_counter()

        logger.info(
            f"Solving formula with {formula.variable_count} variables and {clause_count} clauses "
            f"(population {config.population_size}, pool {config.seed_pool_size}, "
            f"budget {config.max_iterations}, seed {config.random_seed})",
        )

        streams = random_streams(config.random_seed, config.population_size + 1)
        particles = seed_population(
            formula,
            config.seed_pool_size,
            config.population_size,
            streams[0],
            config.pso,
        )
        gbest = GlobalBest.from_particles(particles)
        trace = [(0, gbest.fitness)]

        refiner = LocalSearch(formula, config.ls) if config.ls.enabled else None
        iteration = 0

        while gbest.fitness < target and iteration < config.max_iterations:
            iteration += 1
            moves = 0
            for index, particle in enumerate(particles):
                rng = streams[index + 1]
                particle.velocity = update_velocity(particle, gbest, config.pso, rng)
                particle.position = update_position(particle.velocity, rng)
                if refiner is None:
                    particle.fitness = evaluate(formula, particle.position)
                    continue
                outcome = refiner.run(particle.position)
                moves += outcome.moves
                particle.position = outcome.assignment
                particle.fitness = outcome.fitness
                if self.refinement_hook is not None:
                    self.refinement_hook(iteration, index, outcome.start_fitness, outcome.fitness)

            # gbest is reduced once per iteration, after every particle has moved
            for index, particle in enumerate(particles):
                particles[index], gbest = refresh_bests(particle, gbest, formula, particle.fitness)
            trace.append((iteration, gbest.fitness))
            logger.debug(f"Iteration {iteration}: gbest {gbest.fitness}/{clause_count}, {moves} local moves")

        wall_time = time.perf_counter() - started

        if gbest.fitness == clause_count:
            status = RunStatus.SATISFIED
        elif gbest.fitness >= target:
            status = RunStatus.TARGET_REACHED
        else:
            status = RunStatus.BUDGET_EXHAUSTED

        logger.info(
            f"Run finished: {status.value}, {clause_count - gbest.fitness} false clauses "
            f"after {iteration} iterations ({wall_time:.3f} s)",
        )

        return RunReport(
            status=status,
            best_assignment=tuple(int(bit) for bit in gbest.position),
            best_fitness=gbest.fitness,
            clause_count=clause_count,
            iterations_used=iteration,
            fitness_trace=tuple(trace),
            wall_time=wall_time,
            seed=config.random_seed,
        )


def solve(formula: CnfFormula, cfg: Optional[SolverConfig] = None) -> RunReport:
    return MemeticPsoSolver(cfg).solve(formula)


def verify_report(formula: CnfFormula, report: RunReport) -> bool:
    """Re-check a report: fitness matches the assignment, SATISFIED means all clauses true."""
    try:
        fitness = evaluate(formula, np.asarray(report.best_assignment, dtype=np.uint8))
    except InvalidAssignmentError:
        return False
    if fitness != report.best_fitness:
        return False
    return report.status is not RunStatus.SATISFIED or report.best_fitness == formula.clause_count


def write_trace(file_path: Union[str, Path], report: RunReport) -> None:
    """Write the gbest trace as CSV with header ``iteration,gbest_fitness``."""
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with file_path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["iteration", "gbest_fitness"])
        writer.writerows(report.fitness_trace)
