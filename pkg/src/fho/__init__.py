"""Fuzzy Hunter Optimizer: a Lévy-walk metaheuristic with fuzzy visibility."""

from .core import FhoConfig, Population, RunResult, initialize, run, run_replicated, update_hunter
from .errors import CatalogError, ParameterError, RunError
from .geometry import SearchSpace, VisibilityRadii, clamp_to_box, default_radii, diameter, visibility
from .problems import (
    PenaltyStrategy,
    Problem,
    benchmark,
    cantilever,
    catalog,
    constraint_report,
    get_problem,
    penalize,
    pressure_vessel,
    spring,
)
from .stochastic import RngStream, levy_step, levy_vector, make_levy_params, uniform_vector

__version__ = "0.1.0"
