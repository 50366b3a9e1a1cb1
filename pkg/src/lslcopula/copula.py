"""Lower semilinear copulas, Marshall-Olkin copulas and sampling.

``S(u, v) = v * delta(u) / u`` for ``v <= u`` and ``u * delta(v) / v``
otherwise. Conditional on ``U = u`` the law of ``V`` is linear below ``u``,
has an atom of mass ``(2 delta(u) - u delta'(u)) / u`` at ``v = u`` and
follows ``delta(v) / v`` above it; :func:`sample` inverts the three parts
separately.
"""

from dataclasses import dataclass

import numpy as np

from ._csv import read_csv, write_csv
from .diagonal import Diagonal
from .errors import DomainError

BISECTION_TOL = 1e-12
BISECTION_MAX_ITER = 200


def _unit(x, name):
    x = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(x < 0.0) or np.any(x > 1.0):
        raise DomainError(f"{name} must lie in [0, 1]")
    return x


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


@dataclass(frozen=True)
class LowerSemilinearCopula:
    diagonal: Diagonal

    def __call__(self, u, v):
        return eval_copula(self, u, v)

    def conditional_cdf(self, u, v):
        return conditional_cdf(self, u, v)

    def sample(self, n, seed):
        return sample(self, n, seed)


def eval_copula(c, u, v):
    """Evaluate ``S_delta(u, v)``; vectorized over broadcastable ``u``, ``v``."""
    u, v = np.broadcast_arrays(_unit(u, "u"), _unit(v, "v"))
    d = c.diagonal
    lower = v <= u
    return _out(np.where(lower, v * d._ratio(u), u * d._ratio(v)))


def eval_mo_copula(alpha, beta, u, v):
    """Marshall-Olkin copula ``min(u**(1-alpha) * v, u * v**(1-beta))``.

    numpy's ``0**0 == 1`` supplies the ``alpha = 0`` / ``beta = 0`` limit.
    """
    for name, p in (("alpha", alpha), ("beta", beta)):
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"{name}={p} outside [0, 1]")
    u, v = _unit(u, "u"), _unit(v, "v")
    return _out(np.minimum(np.power(u, 1.0 - alpha) * v, u * np.power(v, 1.0 - beta)))


def _conditional_parts(d, u):
    # slope of the linear branch below u, and G_u just below / at u
    du, dpu = d._value(u), d._slope(u)
    slope = np.maximum(u * dpu - du, 0.0) / (u * u)
    return slope, slope * u, du / u


def conditional_cdf(c, u, v):
    """``G_u(v) = P(V <= v | U = u)``, the partial derivative of ``S`` in ``u``.

    ``u`` must lie in the open interval; ``G_u`` jumps at ``v = u``.
    """
    u, v = np.broadcast_arrays(_unit(u, "u"), _unit(v, "v"))
    if np.any((u == 0.0) | (u == 1.0)):
        raise DomainError("conditional_cdf needs u in (0, 1)")
    d = c.diagonal
    slope, _, _ = _conditional_parts(d, u)
    return _out(np.where(v < u, v * slope, d._ratio(v)))


def atom_mass(c, u):
    """Mass of the conditional law of ``V`` at ``v = u``."""
    u = _unit(u, "u")
    _, below, at = _conditional_parts(c.diagonal, u)
    return _out(at - below)


def uniform_block(seed, start, stop, width=4):
    """Uniforms for indices ``start..stop-1``, one row of ``width`` per index.

    Row ``i`` depends only on ``(seed, i)``: a Philox stream keyed by
    ``seed`` is advanced to counter ``i`` (each counter yields four doubles),
    so any partition of the index range reproduces the same rows.
    """
    if width > 4:
        raise DomainError("at most four uniforms per index")
    seed = int(seed)
    if seed < 0:
        raise DomainError("seed must be non-negative")
    bg = np.random.Philox(key=seed)
    bg.advance(start)
    return np.random.Generator(bg).random((stop - start, 4))[:, :width]


def _inverse_upper(d, u, w):
    """Left-continuous inverse ``inf{v >= u : delta(v)/v >= w}`` by bisection."""
    lo, hi = u.copy(), np.ones_like(u)
    active = np.arange(u.size)
    for _ in range(BISECTION_MAX_ITER):
        if active.size == 0:
            break
        mid = 0.5 * (lo[active] + hi[active])
        hit = d._ratio(mid) >= w[active]
        hi[active] = np.where(hit, mid, hi[active])
        lo[active] = np.where(hit, lo[active], mid)
        active = active[hi[active] - lo[active] > BISECTION_TOL]
    return hi


def conditional_quantile(c, u, w):
    """Generalized inverse of ``G_u`` at levels ``w`` in ``[0, 1)``."""
    u = np.atleast_1d(_unit(u, "u")).astype(float)
    w = np.atleast_1d(_unit(w, "w")).astype(float)
    u, w = np.broadcast_arrays(u, w)
    u, w = u.copy(), w.copy()
    if np.any((u == 0.0) | (u == 1.0)):
        raise DomainError("conditional_quantile needs u in (0, 1)")
    d = c.diagonal
    slope, below, at = _conditional_parts(d, u)
    v = u.copy()
    linear = w < below
    v[linear] = w[linear] / slope[linear]
    upper = w > at
    if np.any(upper):
        v[upper] = _inverse_upper(d, u[upper], w[upper])
    return v


@dataclass(frozen=True, eq=False)
class SampleBatch:
    u: np.ndarray
    v: np.ndarray
    seed: int

    def __len__(self):
        return self.u.size

    def to_csv(self, path_or_file):
        write_csv(path_or_file, ["u", "v"], np.column_stack([self.u, self.v]))

    @classmethod
    def from_csv(cls, path, seed=-1):
        rows = read_csv(path, ["u", "v"])
        return cls(rows[:, 0].copy(), rows[:, 1].copy(), seed)


def sample(c, n, seed, start=0):
    """Draw ``n`` pairs from ``S_delta`` by conditional inversion.

    Pair ``i`` uses the uniforms of :func:`uniform_block` at index
    ``start + i``: the first becomes ``u`` (moved off 0 if it is exactly 0),
    the second is pushed through the conditional quantile.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    block = uniform_block(seed, start, start + n, width=2)
    u = np.maximum(block[:, 0], np.finfo(float).tiny)
    v = conditional_quantile(c, u, block[:, 1])
    return SampleBatch(u, v, int(seed))
