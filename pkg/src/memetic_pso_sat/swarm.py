"""Particle state and binary PSO kinematics.

Velocities are real vectors clamped to ``[-v_max, v_max]``; positions are
bit vectors redrawn each iteration with probability ``sigmoid(velocity)``
per bit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Any, Optional, Sequence, Union

import numpy as np
import numpy.typing as npt

from .config import PsoParams
from .models import Assignment, CnfFormula, evaluate

FloatArray = npt.NDArray[np.float64]


@dataclass
class Particle:
    """One candidate assignment moving through the search space.

    Attributes:
        position: Current bit vector
        velocity: Real-valued velocity, one component per variable
        personal_best_position: Best position this particle has visited
        personal_best_fitness: Fitness of ``personal_best_position``
        fitness: Fitness of ``position`` (None until evaluated)

    """

    position: Assignment
    velocity: FloatArray
    personal_best_position: Assignment
    personal_best_fitness: int
    fitness: Optional[int] = None

    @property
    def dimensions(self) -> int:
        return int(self.position.shape[0])


@dataclass(frozen=True)
class GlobalBest:
    """Best position found by any particle of the swarm."""

    position: Assignment
    fitness: int

    @classmethod
    def from_particles(cls, particles: Sequence[Particle]) -> GlobalBest:
        """The first particle holding the highest personal-best fitness."""
        if not particles:
            raise ValueError("Cannot take the global best of an empty swarm")
        leader = max(particles, key=lambda particle: particle.personal_best_fitness)
        return cls(position=leader.personal_best_position, fitness=leader.personal_best_fitness)


def clamp_velocity(v: Union[float, npt.ArrayLike], v_max: float) -> Any:
    """Limit velocity to ``[-v_max, v_max]``; scalars in, float out."""
    clamped = np.clip(v, -v_max, v_max)
    if np.ndim(clamped) == 0:
        return float(clamped)
    return clamped


def sigmoid(v: Union[float, npt.ArrayLike]) -> Any:
    """Logistic transfer ``1 / (1 + exp(-v))``, overflow-safe for any finite v."""
    values = np.asarray(v, dtype=np.float64)
    decay = np.exp(-np.abs(values))
    result = np.where(values >= 0, 1.0 / (1.0 + decay), decay / (1.0 + decay))
    if result.ndim == 0:
        return float(result)
    return result


def initial_velocity(dimensions: int, params: PsoParams, rng: np.random.Generator) -> FloatArray:
    """Uniform draw from ``[-v_max, v_max]`` per component."""
    return rng.uniform(-params.v_max, params.v_max, size=dimensions)


def update_velocity(
    particle: Particle,
    gbest: GlobalBest,
    params: PsoParams,
    rng: np.random.Generator,
) -> FloatArray:
    """New clamped velocity pulled towards the personal and global bests.

    Per dimension d, with fresh draws R_d and r_d from U[0, 1]:
    ``g(omega*v_d + c1*R_d*(pbest_d - x_d) + c2*r_d*(gbest_d - x_d))``.
    Bits enter the differences as 0.0/1.0.
    """
    dimensions = particle.dimensions
    if not (
        particle.velocity.shape[0]
        == particle.personal_best_position.shape[0]
        == gbest.position.shape[0]
        == dimensions
    ):
        raise ValueError("Particle, personal best and global best dimensions disagree")

    position = particle.position.astype(np.float64)
    cognitive_draws = rng.random(dimensions)
    social_draws = rng.random(dimensions)

    raw = (
        params.omega * particle.velocity
        + params.c1 * cognitive_draws * (particle.personal_best_position - position)
        + params.c2 * social_draws * (gbest.position - position)
    )
    return np.clip(raw, -params.v_max, params.v_max)


def update_position(velocity: FloatArray, rng: np.random.Generator) -> Assignment:
    """Set each bit iff a fresh uniform draw is strictly below ``sigmoid(v_d)``."""
    draws = rng.random(velocity.shape[0])
    return (draws < sigmoid(velocity)).astype(np.uint8)


def refresh_bests(
    particle: Particle,
    gbest: GlobalBest,
    formula: CnfFormula,
    fitness: Optional[int] = None,
) -> tuple[Particle, GlobalBest]:
    """Promote the current position to personal and global best on strict improvement.

    Ties keep the incumbent. ``fitness`` may pass an already known fitness of
    the current position; otherwise it is evaluated against ``formula``.

    Returns:
        The (possibly replaced) particle and global best

    """
    if fitness is None:
        fitness = evaluate(formula, particle.position)
    if particle.fitness != fitness:
        particle = replace(particle, fitness=fitness)

    if fitness > particle.personal_best_fitness:
        particle = replace(
            particle,
            personal_best_position=particle.position,
            personal_best_fitness=fitness,
        )
    if particle.personal_best_fitness > gbest.fitness:
        gbest = GlobalBest(
            position=particle.personal_best_position,
            fitness=particle.personal_best_fitness,
        )
    return particle, gbest
