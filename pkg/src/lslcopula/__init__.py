"""Dependence measures of lower semilinear copulas.

Closed-form Kendall's tau, Spearman's rho, Spearman's footrule and
Chatterjee's xi from the copula diagonal, the exact pairwise regions these
measures fill, and rank-based Monte Carlo estimators to check them against.
"""

from .config import diagonal_from_config, diagonal_to_config, load_diagonal
from .copula import (
    LowerSemilinearCopula,
    SampleBatch,
    conditional_cdf,
    eval_copula,
    eval_mo_copula,
    sample,
)
from .diagonal import (
    Diagonal,
    comonotone,
    independence,
    make_family,
    mix,
    random_diagonal,
    validate,
)
from .errors import AccuracyError, DomainError
from .estimators import estimate_all, ranks
from .markov import markov_diagonal, xi_via_markov
from .measures import MeasureVector, analytic_measures, concordance, measure_vector, xi_closed
from .quadrature import integrate
from .regions import area, bounds, contains, simulate_cloud

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "Diagonal",
    "DomainError",
    "LowerSemilinearCopula",
    "MeasureVector",
    "SampleBatch",
    "analytic_measures",
    "area",
    "bounds",
    "comonotone",
    "concordance",
    "conditional_cdf",
    "contains",
    "diagonal_from_config",
    "diagonal_to_config",
    "estimate_all",
    "eval_copula",
    "eval_mo_copula",
    "independence",
    "integrate",
    "load_diagonal",
    "make_family",
    "markov_diagonal",
    "measure_vector",
    "mix",
    "random_diagonal",
    "ranks",
    "sample",
    "simulate_cloud",
    "validate",
    "xi_closed",
    "xi_via_markov",
]
