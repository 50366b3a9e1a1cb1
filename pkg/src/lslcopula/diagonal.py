"""Copula diagonals admissible for lower semilinear copulas.

A diagonal ``delta`` must satisfy ``delta(0) = 0``, ``delta(1) = 1``,
``t**2 <= delta(t) <= t``, ``delta(t)/t`` non-decreasing and
``delta(t)/t**2`` non-increasing. Equivalently
``delta(t) <= t * delta'(t) <= 2 * delta(t)`` almost everywhere.

Every diagonal here is an immutable, vectorized callable. Derivatives use a
fixed version: the right derivative on ``[0, 1)`` and the left derivative at
``t = 1``.
"""

import inspect
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

VALIDATION_TOL = 1e-12
DEFAULT_GRID = 10_000
# smallest interior knot; below it powers of t lose precision (subnormals)
MIN_KNOT = np.finfo(float).tiny


def _as_unit_array(t):
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t < 0.0) or np.any(t > 1.0):
        raise DomainError("diagonal argument must lie in [0, 1]")
    return t


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


class Diagonal:
    """Base class: subclasses supply ``_value``, ``_slope`` and ``knots``.

    ``_value`` and ``_slope`` accept float arrays already known to lie in
    ``[0, 1]``; the public ``__call__`` and ``deriv`` check the domain.
    """

    kind: str
    knots: np.ndarray
    params: dict

    def __call__(self, t):
        t = _as_unit_array(t)
        return _scalar_or_array(self._value(t))

    def deriv(self, t):
        t = _as_unit_array(t)
        return _scalar_or_array(self._slope(t))

    def ratio(self, t):
        """``delta(t) / t`` with the limit ``delta'(0+)`` at ``t = 0``."""
        t = _as_unit_array(t)
        return _scalar_or_array(self._ratio(t))

    def _ratio(self, t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        return np.where(t > 0, self._value(safe) / safe, self._slope(np.zeros_like(t)))

    def _ratio_slope(self, t):
        """``(delta(t) / t)'`` for ``t > 0``; subclasses avoid the cancellation."""
        return (self._slope(t) - self._ratio(t)) / t

    def _value(self, t):
        raise NotImplementedError

    def _slope(self, t):
        raise NotImplementedError

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.params.items() if k != "components")
        return f"{type(self).__name__}(kind={self.kind!r}, {args})"


@dataclass(frozen=True, eq=False, repr=False)
class PowerPiecewiseDiagonal(Diagonal):
    """``delta(t) = c_i * t**e_i`` on ``(t_{i-1}, t_i]``.

    Coefficients follow from continuity and ``delta(1) = 1``, working
    backwards from the last piece. Any exponent path in ``[1, 2]`` yields an
    admissible diagonal; ``check=False`` skips that range test so that
    inadmissible shapes can be built for negative tests.
    """

    knots: np.ndarray
    exponents: np.ndarray
    kind: str = "piecewise"
    params: dict = field(default_factory=dict)
    check: bool = True
    log_coefficients: np.ndarray = field(init=False)

    @property
    def coefficients(self):
        return np.exp(self.log_coefficients)

    def __post_init__(self):
        knots = np.array(self.knots, dtype=float)
        exps = np.array(self.exponents, dtype=float)
        if knots.ndim != 1 or knots.size < 2:
            raise DomainError("piecewise diagonal needs at least two knots")
        if knots[0] != 0.0 or knots[-1] != 1.0:
            raise DomainError("knots must start at 0 and end at 1")
        if np.any(np.diff(knots) <= 0):
            raise DomainError("knots must be strictly increasing (no zero-length pieces)")
        if knots.size > 2 and knots[1] < MIN_KNOT:
            raise DomainError(f"interior knots must be at least {MIN_KNOT:g}")
        if exps.shape != (knots.size - 1,):
            raise DomainError(
                f"expected {knots.size - 1} exponents for {knots.size} knots, got {exps.size}")
        if not np.all(np.isfinite(exps)):
            raise DomainError("exponents must be finite")
        if self.check and (np.any(exps < 1.0) or np.any(exps > 2.0)):
            raise DomainError(f"exponents must lie in [1, 2], got {exps.tolist()}")
        # log c_i = log c_{i+1} + (e_{i+1} - e_i) * log t_i, with c_m = 1
        inner = np.log(knots[1:-1])
        steps = (exps[1:] - exps[:-1]) * inner
        logc = np.append(np.cumsum(steps[::-1])[::-1], 0.0)
        for arr in (knots, exps, logc):
            arr.setflags(write=False)
        object.__setattr__(self, "knots", knots)
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "log_coefficients", logc)
        if not self.params:
            object.__setattr__(self, "params", {
                "knots": knots.tolist(), "exponents": exps.tolist()})

    def piece_index(self, t, side="value"):
        """Index of the piece used for evaluation (``(t_{i-1}, t_i]``) or for
        the right derivative (``[t_{i-1}, t_i)``, last piece closed)."""
        m = self.exponents.size
        s = "left" if side == "value" else "right"
        return np.clip(np.searchsorted(self.knots, t, side=s) - 1, 0, m - 1)

    # pieces are evaluated as exp(log c + e log t): tiny knots make c
    # overflow or underflow even when c * t**e is representable

    def _power(self, t, shift, side):
        i = self.piece_index(t, side)
        e = self.exponents[i] - shift
        safe = np.where(t > 0, t, 1.0)
        out = np.exp(self.log_coefficients[i] + e * np.log(safe))
        # at t = 0 only a zero exponent survives (0**0 == 1)
        at_zero = np.exp(np.where(e == 0.0, self.log_coefficients[i], -np.inf))
        return np.where(t > 0, out, at_zero), e

    def _value(self, t):
        return self._power(t, 0.0, "value")[0]

    def _slope(self, t):
        y, e = self._power(t, 1.0, "slope")
        return (e + 1.0) * y

    def _ratio(self, t):
        t = np.asarray(t, dtype=float)
        return np.where(t > 0, self._power(t, 1.0, "value")[0], self._slope(np.zeros_like(t)))

    def _ratio_slope(self, t):
        y, e = self._power(t, 2.0, "slope")
        return (e + 1.0) * y


@dataclass(frozen=True, eq=False, repr=False)
class FrechetDiagonal(Diagonal):
    """``alpha * t + (1 - alpha) * t**2``: diagonal of ``alpha*M + (1-alpha)*Pi``."""

    alpha: float
    kind: str = "frechet"
    knots: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0]))

    @property
    def params(self):
        return {"alpha": self.alpha}

    def _value(self, t):
        return self.alpha * t + (1.0 - self.alpha) * t * t

    def _slope(self, t):
        return self.alpha + 2.0 * (1.0 - self.alpha) * t

    def _ratio(self, t):
        return self.alpha + (1.0 - self.alpha) * np.asarray(t, dtype=float)

    def _ratio_slope(self, t):
        return np.full_like(t, 1.0 - self.alpha)


@dataclass(frozen=True, eq=False, repr=False)
class MOProductDiagonal(Diagonal):
    """Diagonal of the Markov product ``M^T * M`` of a Marshall-Olkin copula.

    With ``q = beta * (1 - 2 alpha) / alpha`` the diagonal is
    ``t**2 * (1 - alpha**2 * (t**q - 1) / (1 - 2 alpha))``, which reduces to
    ``t**2`` for ``alpha = 0`` and to ``t**2 * (1 - beta/2 * log t)`` for
    ``alpha = 1/2``. The ``expm1`` form avoids cancellation near ``alpha = 1/2``.
    """

    alpha: float
    beta: float
    kind: str = "mo_product"
    knots: np.ndarray = field(default_factory=lambda: np.array([0.0, 1.0]))

    def __post_init__(self):
        # large q puts a layer of width ~1/q at t = 1; graded breakpoints at
        # t = exp(-2**j / q) let adaptive panels resolve it
        if self._branch() == "power":
            with np.errstate(over="ignore"):
                q = np.float64(self.beta) * (1.0 - 2.0 * self.alpha) / self.alpha
            if 8.0 < q < np.inf:
                # x = 2**j / q for 2**j between 1e-17 q and 256 q
                scale = np.exp2(np.floor(np.log2(q)) - np.log2(q))
                x = scale * np.exp2(np.arange(-57.0, 9.0))
                t = np.exp(-x)
                inner = np.unique(t[(t > 0.0) & (t < 1.0)])
                object.__setattr__(self, "knots", np.concatenate([[0.0], inner, [1.0]]))

    @property
    def params(self):
        return {"alpha": self.alpha, "beta": self.beta}

    def _branch(self):
        a, b = self.alpha, self.beta
        if a == 0.0 or b == 0.0:
            return "independence"
        if a == 0.5:
            return "log"
        return "power"

    def _shape(self, t):
        # g(t) = delta(t) / t**2 and t * g'(t), for t > 0
        a, b = self.alpha, self.beta
        branch = self._branch()
        if branch == "independence":
            return np.ones_like(t), np.zeros_like(t)
        logt = np.log(t)
        if branch == "log":
            return 1.0 - 0.5 * b * logt, np.full_like(t, -0.5 * b)
        q = b * (1.0 - 2.0 * a) / a
        # q is huge for tiny alpha: q log t may overflow to -inf (t**q = 0),
        # but t**q is still 1 at t = 1
        with np.errstate(over="ignore"):
            qlog = np.where(logt == 0.0, 0.0, q * np.where(logt == 0.0, -1.0, logt))
        g = 1.0 - a * a * np.expm1(qlog) / (1.0 - 2.0 * a)
        return g, -a * b * np.exp(qlog)

    def _value(self, t):
        safe = np.where(t > 0, t, 1.0)
        g, _ = self._shape(safe)
        return np.where(t > 0, safe * safe * g, 0.0)

    def _slope(self, t):
        safe = np.where(t > 0, t, 1.0)
        g, tdg = self._shape(safe)
        at_zero = 1.0 if (self.alpha == 1.0 and self.beta == 1.0) else 0.0
        return np.where(t > 0, safe * (2.0 * g + tdg), at_zero)

    def _ratio(self, t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        g, _ = self._shape(safe)
        return np.where(t > 0, safe * g, self._slope(np.zeros_like(t)))

    def _ratio_slope(self, t):
        # (delta/t)' = g + t g' written as a sum of two non-negative terms;
        # the direct sum cancels badly when alpha, beta are near 1
        a, b = self.alpha, self.beta
        branch = self._branch()
        if branch == "independence":
            return np.ones_like(t)
        logt = np.log(t)
        if branch == "log":
            return 1.0 - 0.5 * b - 0.5 * b * logt
        q = b * (1.0 - 2.0 * a) / a
        with np.errstate(over="ignore"):
            qlog = np.where(logt == 0.0, 0.0, q * np.where(logt == 0.0, -1.0, logt))
        k = a * (a * (1.0 - b) + b * (1.0 - a)) / (1.0 - 2.0 * a)
        return (1.0 - a * b) - k * np.expm1(qlog)


@dataclass(frozen=True, eq=False, repr=False)
class MixtureDiagonal(Diagonal):
    """Pointwise convex combination of diagonals."""

    components: tuple
    weights: np.ndarray
    kind: str = "mixture"
    knots: np.ndarray = field(init=False)

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        knots = np.unique(np.concatenate([c.knots for c in self.components]))
        knots.setflags(write=False)
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "knots", knots)

    @property
    def params(self):
        return {"components": list(self.components), "weights": self.weights.tolist()}

    def _value(self, t):
        return sum(w * c._value(t) for w, c in zip(self.weights, self.components))

    def _slope(self, t):
        return sum(w * c._slope(t) for w, c in zip(self.weights, self.components))

    def _ratio(self, t):
        return sum(w * c._ratio(t) for w, c in zip(self.weights, self.components))

    def _ratio_slope(self, t):
        return sum(w * c._ratio_slope(t) for w, c in zip(self.weights, self.components))


def _check_range(name, value, lo, hi):
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise DomainError(f"parameter {name} must be a number, got {value!r}") from None
    if not lo <= value <= hi:
        raise DomainError(f"parameter {name}={value} outside [{lo}, {hi}]")
    return value


def _upper(a):
    a = _check_range("a", a, 0.0, 1.0)
    # a subnormal a differs from a = 0 by less than MIN_KNOT in sup norm
    if a < MIN_KNOT or a == 1.0:
        return PowerPiecewiseDiagonal([0.0, 1.0], [2.0 if a == 1.0 else 1.0], "ua", {"a": a})
    return PowerPiecewiseDiagonal([0.0, a, 1.0], [2.0, 1.0], "ua", {"a": a})


def _lower(a):
    a = _check_range("a", a, 0.0, 1.0)
    if a < MIN_KNOT or a == 1.0:
        return PowerPiecewiseDiagonal([0.0, 1.0], [1.0 if a == 1.0 else 2.0], "la", {"a": a})
    return PowerPiecewiseDiagonal([0.0, a, 1.0], [1.0, 2.0], "la", {"a": a})


def _power(p):
    p = _check_range("p", p, 1.0, 2.0)
    return PowerPiecewiseDiagonal([0.0, 1.0], [p], "power", {"p": p})


def _example23():
    return PowerPiecewiseDiagonal(
        [0.0, 0.25, 0.5, 0.75, 1.0], [2.0, 1.0, 2.0, 1.0], "example23", {})


def _frechet(alpha):
    return FrechetDiagonal(_check_range("alpha", alpha, 0.0, 1.0))


def _mo_product(alpha, beta):
    return MOProductDiagonal(_check_range("alpha", alpha, 0.0, 1.0),
                             _check_range("beta", beta, 0.0, 1.0))


def _piecewise(knots, exponents):
    return PowerPiecewiseDiagonal(knots, exponents)


FAMILIES = {
    "ua": _upper,
    "la": _lower,
    "power": _power,
    "example23": _example23,
    "frechet": _frechet,
    "mo_product": _mo_product,
    "piecewise": _piecewise,
}


def make_family(name, **params):
    """Build a named diagonal.

    ``ua`` / ``la`` take ``a`` in [0, 1], ``power`` takes ``p`` in [1, 2],
    ``frechet`` takes ``alpha``, ``mo_product`` takes ``alpha`` and ``beta``,
    ``example23`` takes nothing and ``piecewise`` takes ``knots`` and
    ``exponents``. Mixtures are built with :func:`mix`.

    >>> make_family("ua", a=0.5)(0.25)
    0.125
    """
    try:
        builder = FAMILIES[name]
    except KeyError:
        raise DomainError(f"unknown diagonal family {name!r}") from None
    expected = set(inspect.signature(builder).parameters)
    if set(params) != expected:
        raise DomainError(
            f"family {name!r} takes parameters {sorted(expected)}, got {sorted(params)}")
    return builder(**params)


def comonotone():
    """``delta_M(t) = t``."""
    return make_family("power", p=1.0)


def independence():
    """``delta_Pi(t) = t**2``."""
    return make_family("power", p=2.0)


def mix(diagonals, weights):
    """Convex combination ``sum_i w_i * delta_i``."""
    diagonals = list(diagonals)
    w = np.asarray(weights, dtype=float)
    if w.ndim != 1 or w.size != len(diagonals) or w.size == 0:
        raise DomainError(f"{len(diagonals)} diagonals but {w.size} weights")
    if np.any(~np.isfinite(w)) or np.any(w < 0):
        raise DomainError("mixture weights must be non-negative")
    if abs(w.sum() - 1.0) > 1e-12:
        raise DomainError(f"mixture weights sum to {w.sum()}, not 1")
    return MixtureDiagonal(tuple(diagonals), w)


@dataclass(frozen=True)
class Violation:
    constraint: str
    location: float
    slack: float
    count: int

    def __str__(self):
        return (f"{self.constraint} violated at t={self.location:.6g} "
                f"(slack {self.slack:.3g}, {self.count} grid points)")


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple
    grid_n: int

    @property
    def passed(self):
        return not self.violations

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return f"pass (grid {self.grid_n})"
        return "fail\n" + "\n".join(f"  {v}" for v in self.violations)


def validate(d, grid_n=DEFAULT_GRID, tol=VALIDATION_TOL):
    """Check the admissibility constraints on a uniform grid plus all knots.

    Constraint values are compared with absolute slack ``tol``, scaled up by
    the magnitude of the compared quantity for the ``delta/t`` and
    ``delta/t**2`` monotonicity checks. The derivative sandwich is checked at
    grid midpoints. Failures are collected, never raised.
    """
    if grid_n < 2:
        raise DomainError("grid_n must be at least 2")
    t = np.union1d(np.linspace(0.0, 1.0, int(grid_n)), d.knots)
    y = d._value(t)
    found = []

    def record(name, slack, where):
        bad = slack < 0
        if np.any(bad):
            k = int(np.argmin(slack))
            found.append(Violation(name, float(where[k]), float(slack[k]), int(bad.sum())))

    ends = np.array([0.0, 1.0])
    record("boundary δ(0)=0, δ(1)=1", tol - np.abs(d._value(ends) - ends), ends)
    dy, dt = np.diff(y), np.diff(t)
    record("δ non-decreasing", dy + tol, t[1:])
    record("δ 2-Lipschitz", 2.0 * dt - dy + tol, t[1:])
    record("δ(t) ≥ t²", y - t * t + tol, t)
    record("δ(t) ≤ t", t - y + tol, t)

    pos = t[t > 0]
    r1 = d._ratio(pos)
    r2 = r1 / pos
    scale1 = np.maximum(1.0, np.abs(r1[1:]))
    scale2 = np.maximum(1.0, np.abs(r2[:-1]))
    record("δ(t)/t non-decreasing", np.diff(r1) + tol * scale1, pos[1:])
    record("δ(t)/t² non-increasing", -np.diff(r2) + tol * scale2, pos[1:])

    mid = 0.5 * (t[1:] + t[:-1])
    ym = d._value(mid)
    tdm = mid * d._slope(mid)
    scale = np.maximum(1.0, np.abs(tdm))
    record("δ(t) ≤ tδ′(t)", tdm - ym + tol * scale, mid)
    record("tδ′(t) ≤ 2δ(t)", 2.0 * ym - tdm + tol * scale, mid)
    return ValidationReport(tuple(found), int(grid_n))


def random_diagonal(seed, max_pieces=8):
    """Draw a random piecewise power diagonal.

    The number of pieces ``k`` is uniform on ``1..max_pieces``, the ``k - 1``
    interior knots are sorted uniforms and each exponent is uniform on
    ``[1, 2]``. ``seed`` may be an int or a ``numpy.random.SeedSequence``.
    """
    if max_pieces < 1:
        raise DomainError("max_pieces must be at least 1")
    rng = np.random.default_rng(seed)
    k = int(rng.integers(1, max_pieces, endpoint=True))
    inner = np.sort(rng.random(k - 1))
    exps = rng.uniform(1.0, 2.0, size=k)
    # duplicate or zero interior draws would give empty pieces
    inner = np.unique(inner[inner > 0.0])
    exps = exps[: inner.size + 1]
    knots = np.concatenate([[0.0], inner, [1.0]])
    return PowerPiecewiseDiagonal(knots, exps)
