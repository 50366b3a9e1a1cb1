"""Exact attainable regions of measure pairs for lower semilinear copulas.

==========  ===========================  ==========================
pair        lower(x)                     upper(x)
==========  ===========================  ==========================
tau_rho     x                            1 - (1 - x)**1.5
tau_phi     x                            x**0.75
phi_rho     x**(4/3)                     1 - (1 - x)**1.5
tau_xi      2 x**2 / (1 + x)             x
==========  ===========================  ==========================
"""

from dataclasses import dataclass
from math import log

import numpy as np

from ._csv import write_csv
from .diagonal import random_diagonal
from .errors import DomainError
from .measures import measure_vector
from .quadrature import DEFAULT_TOL, integrate

DEFAULT_SLACK = 1e-9


@dataclass(frozen=True)
class RegionSpec:
    pair: str
    x_name: str
    y_name: str
    lower: object
    upper: object
    area: float


def _one_minus_pow(x):
    return 1.0 - (1.0 - x) ** 1.5


REGIONS = {
    "tau_rho": RegionSpec("tau_rho", "tau", "rho", lambda x: x, _one_minus_pow, 1 / 10),
    "tau_phi": RegionSpec("tau_phi", "tau", "phi", lambda x: x, lambda x: x**0.75, 1 / 14),
    "phi_rho": RegionSpec("phi_rho", "phi", "rho", lambda x: x ** (4 / 3), _one_minus_pow, 6 / 35),
    "tau_xi": RegionSpec("tau_xi", "tau", "xi", lambda x: 2 * x * x / (1 + x), lambda x: x,
                         1.5 - 2 * log(2)),
}
PAIRS = tuple(REGIONS)


def region(pair):
    try:
        return REGIONS[pair]
    except KeyError:
        raise DomainError(f"unknown pair {pair!r}; expected one of {list(PAIRS)}") from None


def _unit(x):
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0) or np.any(x > 1):
        raise DomainError("x must lie in [0, 1]")
    return x


def bounds(pair, x):
    """``(lower(x), upper(x))`` of the region for ``pair``."""
    spec = region(pair)
    x = _unit(x)
    lo, hi = spec.lower(x), spec.upper(x)
    if np.ndim(lo) == 0:
        return float(lo), float(hi)
    return lo, hi


def contains(pair, x, y, slack=DEFAULT_SLACK):
    """Whether ``lower(x) - slack <= y <= upper(x) + slack``.

    ``x`` is clipped into ``[0, 1]`` first so that quadrature noise just
    outside the unit interval does not raise.
    """
    spec = region(pair)
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    y = np.asarray(y, dtype=float)
    inside = (spec.lower(x) - slack <= y) & (y <= spec.upper(x) + slack)
    return bool(inside) if inside.ndim == 0 else inside


def contains_all(mv, slack=DEFAULT_SLACK):
    """Pairs whose region does not contain the measure vector ``mv``."""
    return [p for p, (x, y) in mv.pairs().items() if not contains(p, x, y, slack)]


def area(pair, tol=1e-12):
    """``(analytic, numeric)`` area of the region inside the unit square."""
    spec = region(pair)
    numeric = integrate(lambda x: spec.upper(x) - spec.lower(x), (0.0, 1.0), tol)
    return spec.area, numeric


def boundary_grid(pair, n=1001):
    x = np.linspace(0.0, 1.0, n)
    lo, hi = bounds(pair, x)
    return np.column_stack([x, lo, hi])


def write_boundary_csv(path_or_file, pair, n=1001):
    write_csv(path_or_file, ["x", "lower", "upper"], boundary_grid(pair, n))


def point_seed(seed, index):
    """Seed for cloud point ``index``: child ``index`` of ``SeedSequence(seed)``."""
    return np.random.SeedSequence(seed, spawn_key=(index,))


def simulate_cloud(n, seed, max_pieces=8, tol=DEFAULT_TOL, generator=random_diagonal, start=0):
    """Measure vectors of ``n`` random diagonals, in index order.

    Point ``i`` only depends on ``(seed, i)``, so any chunking or parallel
    schedule reproduces the same cloud; ``start`` offsets the indices for
    such chunks. ``generator(seed, max_pieces)`` can be swapped out, e.g.
    for a fixed diagonal.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    return [measure_vector(generator(point_seed(seed, i), max_pieces), tol)
            for i in range(start, start + n)]


def cloud_violations(cloud, slack=DEFAULT_SLACK):
    """``(index, pair)`` for every cloud point outside some pairwise region."""
    return [(i, p) for i, mv in enumerate(cloud) for p in contains_all(mv, slack)]


def write_cloud_csv(path_or_file, cloud):
    write_csv(path_or_file, ["tau", "rho", "phi", "xi"], [tuple(mv) for mv in cloud])
