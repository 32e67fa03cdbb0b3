"""Benchmark functions, engineering design problems and penalty transforms.

Constraints follow the ``g(x) <= 0`` convention throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import CatalogError, ParameterError
from .geometry import SearchSpace

Objective = Callable[[np.ndarray], float]

FEASIBILITY_TOL = 1e-6


@dataclass(frozen=True)
class Problem:
    name: str
    space: SearchSpace
    objective: Objective
    constraints: tuple[Objective, ...] = ()
    equalities: tuple[Objective, ...] = ()
    known_optimum: Optional[float] = None
    known_argmin: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return self.space.n

    def __call__(self, x) -> float:
        return self.objective(np.asarray(x, dtype=float))

    def constraint_values(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.array([g(x) for g in self.constraints], dtype=float)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "dimension": self.n,
            "lower": self.space.lower.tolist(),
            "upper": self.space.upper.tolist(),
            "constraints": len(self.constraints),
            "known_optimum": self.known_optimum,
        }


# --- classical benchmarks ---------------------------------------------------

def sphere(x):
    return float(np.dot(x, x))


def schwefel_2_22(x):
    a = np.abs(x)
    return float(a.sum() + np.prod(a))


def schwefel_1_2(x):
    c = np.cumsum(x)
    return float(np.dot(c, c))


def rosenbrock(x):
    head, tail = x[:-1], x[1:]
    return float(np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2))


def max_abs(x):
    return float(np.max(np.abs(x)))


def schwefel_2_26(x):
    return float(-np.dot(x, np.sin(np.sqrt(np.abs(x)))))


def rastrigin(x):
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def griewank(x):
    i = np.arange(1, x.size + 1)
    return float(np.dot(x, x) / 4000.0 - np.prod(np.cos(x / np.sqrt(i))) + 1.0)


def shifted_sphere(x):
    y = x + 0.5
    return float(np.dot(y, y))


def ackley(x):
    n = x.size
    return float(
        -20.0 * math.exp(-0.2 * math.sqrt(np.dot(x, x) / n))
        - math.exp(np.sum(np.cos(2.0 * np.pi * x)) / n)
        + 20.0
        + math.e
    )


def eggcrate(x):
    s = np.sin(x)
    return float(np.dot(x, x) + 25.0 * np.dot(s, s))


# name -> (objective, bound, known minimum per dimension, argmin coordinate)
_BENCHMARKS = {
    "f1": (sphere, 100.0, 0.0, 0.0),
    "f2": (schwefel_2_22, 10.0, 0.0, 0.0),
    "f3": (schwefel_1_2, 100.0, 0.0, 0.0),
    "f4": (rosenbrock, 30.0, 0.0, 1.0),
    "f5": (max_abs, 100.0, 0.0, 0.0),
    "f6": (schwefel_2_26, 500.0, -418.9829, 420.9687),
    "f7": (rastrigin, 5.12, 0.0, 0.0),
    "f8": (griewank, 600.0, 0.0, 0.0),
    "f9": (shifted_sphere, 100.0, 0.0, -0.5),
    "f10": (ackley, 32.0, 0.0, 0.0),
}

BENCHMARK_NAMES = tuple(_BENCHMARKS)


def benchmark(name: str, n: int = 30) -> Problem:
    if name == "eggcrate":
        return Problem(
            "eggcrate", SearchSpace.cube(-5.0, 5.0, 2), eggcrate,
            known_optimum=0.0, known_argmin=np.zeros(2),
        )
    if name not in _BENCHMARKS:
        raise CatalogError(f"unknown benchmark {name!r}; valid names: {', '.join(BENCHMARK_NAMES + ('eggcrate',))}")
    if n < 2:
        raise ParameterError(f"benchmark dimension must be >= 2, got {n}")
    fn, bound, fmin, xstar = _BENCHMARKS[name]
    return Problem(
        name, SearchSpace.cube(-bound, bound, n), fn,
        known_optimum=fmin * n if name == "f6" else fmin,
        known_argmin=np.full(n, xstar),
    )


# --- engineering problems ---------------------------------------------------

def _cantilever_weight(x):
    return 0.06224 * float(np.sum(x))


_CANTILEVER_COEF = np.array([61.0, 37.0, 19.0, 7.0, 1.0])


def _cantilever_g(x):
    return float(np.sum(_CANTILEVER_COEF / x**3) - 1.0)


def cantilever() -> Problem:
    return Problem(
        "cantilever", SearchSpace.cube(0.01, 100.0, 5), _cantilever_weight,
        constraints=(_cantilever_g,),
    )


def _vessel_cost(x):
    ts, th, r, length = x
    return float(0.6224 * ts * r * length + 1.7781 * th * r * r
                 + 3.1661 * ts * ts * length + 19.84 * ts * ts * r)


def _vessel_g1(x):
    return float(-x[0] + 0.0193 * x[2])


def _vessel_g2(x):
    return float(-x[1] + 0.00954 * x[2])


def _vessel_g3(x):
    r, length = x[2], x[3]
    return float(-math.pi * r * r * length - 4.0 / 3.0 * math.pi * r**3 + 1296000.0)


def _vessel_g4(x):
    return float(x[3] - 240.0)


def pressure_vessel() -> Problem:
    return Problem(
        "pressure-vessel",
        SearchSpace(np.array([0.0, 0.0, 10.0, 10.0]), np.array([99.0, 99.0, 200.0, 200.0])),
        _vessel_cost,
        constraints=(_vessel_g1, _vessel_g2, _vessel_g3, _vessel_g4),
    )


def _spring_weight(x):
    d, coil, turns = x
    return float((turns + 2.0) * coil * d * d)


def _spring_g1(x):
    d, coil, turns = x
    return float(1.0 - coil**3 * turns / (71785.0 * d**4))


def _spring_g2(x):
    d, coil, _ = x
    return float((4.0 * coil**2 - d * coil) / (12566.0 * (coil * d**3 - d**4))
                 + 1.0 / (5108.0 * d**2) - 1.0)


def _spring_g3(x):
    d, coil, turns = x
    return float(1.0 - 140.45 * d / (coil**2 * turns))


def _spring_g4(x):
    return float((x[0] + x[1]) / 1.5 - 1.0)


def spring() -> Problem:
    """Tension/compression spring; variables are (wire d, coil D, active turns N)."""
    return Problem(
        "spring",
        SearchSpace(np.array([0.05, 0.25, 2.0]), np.array([2.0, 1.3, 15.0])),
        _spring_weight,
        constraints=(_spring_g1, _spring_g2, _spring_g3, _spring_g4),
    )


ENGINEERING = {
    "cantilever": cantilever,
    "pressure-vessel": pressure_vessel,
    "spring": spring,
}
ALIASES = {"vessel": "pressure-vessel"}
CATALOG_NAMES = BENCHMARK_NAMES + ("eggcrate",) + tuple(ENGINEERING)


def get_problem(name: str, n: Optional[int] = None) -> Problem:
    """Look up any catalog entry. ``n`` applies only to f1..f10."""
    name = ALIASES.get(name, name)
    if name in ENGINEERING:
        return ENGINEERING[name]()
    if name == "eggcrate":
        return benchmark(name)
    if name in _BENCHMARKS:
        return benchmark(name, 30 if n is None else n)
    raise CatalogError(f"unknown problem {name!r}; valid names: {', '.join(CATALOG_NAMES)}")


def catalog() -> list[dict]:
    return [get_problem(name).describe() for name in CATALOG_NAMES]


# --- penalties ----------------------------------------------------------------

PENALTY_KINDS = ("additive", "feasibility-count")


@dataclass(frozen=True)
class PenaltyStrategy:
    kind: str = "additive"
    weights: Optional[Sequence[float]] = None
    equality_weights: Optional[Sequence[float]] = None
    K: float = 1e9

    def __post_init__(self):
        if self.kind not in PENALTY_KINDS:
            raise ParameterError(f"penalty kind must be one of {PENALTY_KINDS}, got {self.kind!r}")
        for w in (self.weights or ()), (self.equality_weights or ()):
            if any(not (wi > 0) for wi in w):
                raise ParameterError("penalty weights must be strictly positive")
        if not self.K > 0:
            raise ParameterError(f"K must be positive, got {self.K}")


DEFAULT_PENALTY = {
    "cantilever": PenaltyStrategy("additive"),
    "pressure-vessel": PenaltyStrategy("feasibility-count"),
    "spring": PenaltyStrategy("feasibility-count"),
}


def _per_constraint(weights, count: int, what: str) -> np.ndarray:
    if weights is None:
        return np.ones(count)
    w = np.asarray(weights, dtype=float)
    if w.size == 1:
        return np.full(count, float(w[0]))
    if w.size != count:
        raise ParameterError(f"expected 1 or {count} {what} weights, got {w.size}")
    return w


@dataclass(frozen=True)
class _Additive:
    base: Problem
    weights: np.ndarray
    eq_weights: np.ndarray

    def __call__(self, x):
        value = self.base.objective(x)
        for r, g in zip(self.weights, self.base.constraints):
            value += r * max(g(x), 0.0)
        for c, h in zip(self.eq_weights, self.base.equalities):
            value += c * abs(h(x))
        return value


@dataclass(frozen=True)
class _FeasibilityCount:
    base: Problem
    K: float

    def __call__(self, x):
        g = [gi(x) <= 0.0 for gi in self.base.constraints]
        # equalities count as satisfied only when met exactly
        g += [hj(x) == 0.0 for hj in self.base.equalities]
        satisfied = sum(g)
        if satisfied == len(g):
            return self.base.objective(x)
        return self.K - satisfied * (self.K / len(g))


def penalize(problem: Problem, strategy: PenaltyStrategy) -> Problem:
    """Unconstrained reformulation of ``problem`` under ``strategy``."""
    if not problem.constraints and not problem.equalities:
        return problem
    if strategy.kind == "additive":
        fn = _Additive(
            problem,
            _per_constraint(strategy.weights, len(problem.constraints), "inequality"),
            _per_constraint(strategy.equality_weights, len(problem.equalities), "equality"),
        )
    else:
        fn = _FeasibilityCount(problem, strategy.K)
    return replace(problem, objective=fn, constraints=(), equalities=())


@dataclass
class ConstraintReport:
    values: list[float] = field(default_factory=list)
    max_violation: float = 0.0
    feasible: bool = True
    tolerance: float = FEASIBILITY_TOL

    def as_dict(self) -> dict:
        return {
            "values": self.values,
            "max_violation": self.max_violation,
            "feasible": self.feasible,
            "tolerance": self.tolerance,
        }


def constraint_report(problem: Problem, x, tol: float = FEASIBILITY_TOL) -> ConstraintReport:
    values = problem.constraint_values(x)
    if values.size == 0:
        return ConstraintReport([], 0.0, True, tol)
    worst = float(values.max())
    return ConstraintReport(values.tolist(), worst, worst <= tol, tol)
