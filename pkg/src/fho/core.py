"""The hunter population loop.

Each sweep visits hunters in list order. The hunter that is the food source
when the sweep starts stays put; every other hunter moves by

    x + w * r * v * D + (1 - v) * L

where ``v`` is its visibility of the food, ``r`` a uniform vector, ``D`` the
drift direction and ``L`` a scaled Lévy vector. The food source is replaced
as soon as a moved hunter strictly beats it.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import ParameterError, RunError
from .geometry import RADII_MODES, SearchSpace, VisibilityRadii, default_radii, visibility
from .problems import Problem
from .stochastic import BETA_MAX, LevyParams, RngStream, levy_steps, make_levy_params

DRIFT_SIGNS = ("toward-food", "literal-eq6")


@dataclass(frozen=True)
class FhoConfig:
    w: float = 2.0
    beta: float = 0.8
    radii_mode: str = "practical"
    radii: Optional[VisibilityRadii] = None
    step_scale: float = 0.01
    alpha: float = 1.0  # acceleration factor; the fuzzy update does not use it
    drift_sign: str = "toward-food"
    population: int = 30
    max_iterations: int = 500
    seed: int = 0

    def __post_init__(self):
        if not self.w > 0:
            raise ParameterError(f"w must be > 0, got {self.w}")
        if not (0.0 < self.beta <= BETA_MAX):
            raise ParameterError(f"beta must lie in (0, 2], got {self.beta}")
        if self.radii_mode not in RADII_MODES:
            raise ParameterError(f"radii_mode must be one of {RADII_MODES}, got {self.radii_mode!r}")
        if not self.step_scale > 0:
            raise ParameterError(f"step_scale must be > 0, got {self.step_scale}")
        if self.drift_sign not in DRIFT_SIGNS:
            raise ParameterError(f"drift_sign must be one of {DRIFT_SIGNS}, got {self.drift_sign!r}")
        if self.population < 2:
            raise ParameterError(f"population must be >= 2, got {self.population}")
        if self.max_iterations < 1:
            raise ParameterError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not (0 <= self.seed < 2**64):
            raise ParameterError(f"seed must be a 64-bit unsigned integer, got {self.seed}")

    def radii_for(self, space: SearchSpace) -> VisibilityRadii:
        return self.radii if self.radii is not None else default_radii(space, self.radii_mode)


class Hunter(NamedTuple):
    position: np.ndarray
    fitness: float


@dataclass
class Population:
    positions: np.ndarray
    fitness: np.ndarray
    food: int
    iteration: int = 0

    @property
    def hunters(self) -> list[Hunter]:
        return [Hunter(p, float(f)) for p, f in zip(self.positions, self.fitness)]

    @property
    def food_position(self) -> np.ndarray:
        return self.positions[self.food]

    @property
    def food_fitness(self) -> float:
        return float(self.fitness[self.food])


@dataclass
class RunResult:
    best_position: np.ndarray
    best_fitness: float
    history: np.ndarray
    evaluations: int
    seed: int
    replicate: Optional[int] = None
    initial_best: float = field(default=math.inf)


def _evaluate(problem: Problem, x: np.ndarray) -> float:
    value = problem.objective(x)
    if math.isnan(value):
        raise RunError(f"objective {problem.name} returned NaN at {x.tolist()}")
    return float(value)


def initialize(problem: Problem, config: FhoConfig, rng: RngStream) -> Population:
    space = problem.space
    u = rng.uniform((config.population, space.n))
    positions = space.lower + u * space.width
    # rounding in lower + u * width can land a hair past upper
    np.minimum(positions, space.upper, out=positions)
    fitness = np.array([_evaluate(problem, x) for x in positions])
    return Population(positions, fitness, int(np.argmin(fitness)))


def update_hunter(
    position,
    food,
    config: FhoConfig,
    radii: VisibilityRadii,
    space: SearchSpace,
    rng: Optional[RngStream] = None,
    *,
    r: Optional[np.ndarray] = None,
    levy: Optional[np.ndarray] = None,
    params: Optional[LevyParams] = None,
) -> np.ndarray:
    """New position for one hunter.

    ``r`` (uniform vector) and ``levy`` (already scaled Lévy vector) are drawn
    from ``rng`` when not supplied.
    """
    x = np.asarray(position, dtype=float)
    food = np.asarray(food, dtype=float)
    toward = food - x
    dist = math.sqrt(float(np.dot(toward, toward)))
    v = visibility(dist, radii)
    new = x.copy()
    if v > 0.0:
        if r is None:
            r = rng.uniform(x.size)
        drift = toward if config.drift_sign == "toward-food" else -toward
        new += (config.w * v) * r * drift
    if v < 1.0:
        if levy is None:
            params = params or make_levy_params(config.beta)
            levy = config.step_scale * space.width * levy_steps(rng, params, x.size)
        new += (1.0 - v) * levy
    np.clip(new, space.lower, space.upper, out=new)
    if not np.all(np.isfinite(new)):
        raise RunError(f"non-finite position after update: {new.tolist()}")
    return new


def run(
    problem: Problem,
    config: FhoConfig,
    rng: Optional[RngStream] = None,
    callback: Optional[Callable[[Population], None]] = None,
) -> RunResult:
    """One optimisation run. ``callback`` sees the population after every sweep."""
    rng = rng if rng is not None else RngStream(config.seed)
    space = problem.space
    n, pop = space.n, config.population
    radii = config.radii_for(space)
    params = make_levy_params(config.beta)
    step = config.step_scale * space.width
    toward = config.drift_sign == "toward-food"
    w = config.w
    lower, upper = space.lower, space.upper
    r_full, r_zero = radii.r_full, radii.r_zero
    ramp = r_zero - r_full

    population = initialize(problem, config, rng)
    positions, fitness = population.positions, population.fitness
    food = population.food
    evaluations = pop
    initial_best = float(fitness[food])
    history = np.empty(config.max_iterations)

    with np.errstate(over="ignore", invalid="ignore"):
        for t in range(config.max_iterations):
            # one batch of draws per sweep; rows belonging to the frozen food hunter go unused
            uniforms = rng.uniform((pop, n))
            levy = levy_steps(rng, params, (pop, n)) * step
            frozen = food
            for i in range(pop):
                if i == frozen:
                    continue
                x = positions[i]
                diff = positions[food] - x
                dist = math.sqrt(diff.dot(diff))
                if dist <= r_full:
                    v = 1.0
                elif dist >= r_zero:
                    v = 0.0
                else:
                    v = (r_zero - dist) / ramp
                if not toward:
                    diff = -diff
                if v == 1.0:
                    new = x + (w * uniforms[i]) * diff
                elif v == 0.0:
                    new = x + levy[i]
                else:
                    new = x + (w * v) * uniforms[i] * diff + (1.0 - v) * levy[i]
                np.clip(new, lower, upper, out=new)
                if not np.isfinite(new).all():
                    raise RunError(f"non-finite position after update of hunter {i}: {new.tolist()}")
                f = _evaluate(problem, new)
                evaluations += 1
                positions[i] = new
                fitness[i] = f
                if f < fitness[food]:
                    food = i
            history[t] = fitness[food]
            population.food = food
            population.iteration = t + 1
            if callback is not None:
                callback(population)

    return RunResult(
        best_position=positions[food].copy(),
        best_fitness=float(fitness[food]),
        history=history,
        evaluations=evaluations,
        seed=config.seed,
        initial_best=initial_best,
    )


def _run_replicate(problem: Problem, config: FhoConfig, index: int) -> RunResult:
    result = run(problem, config, RngStream(config.seed).child(index))
    result.replicate = index
    return result


def run_replicated(problem: Problem, config: FhoConfig, replicates: int, workers: int = 1) -> list[RunResult]:
    """Independent runs; replicate ``k`` uses child stream ``k`` of ``config.seed``."""
    if replicates < 1:
        raise ParameterError(f"replicates must be >= 1, got {replicates}")
    indices = range(replicates)
    if workers <= 1 or replicates == 1:
        return [_run_replicate(problem, config, k) for k in indices]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_run_replicate, problem, config, k) for k in indices]
        return [f.result() for f in futures]
