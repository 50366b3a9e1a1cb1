"""Diagonal of the Markov product ``S_delta * S_delta`` and xi through it.

The product diagonal is::

    delta*(t) = delta(t)**2 / t + t**2 * T(t),
    T(t)      = int_t^1 ((delta(s) / s)')**2 ds

and ``xi(S_delta) = 6 * int delta*(t) dt - 2`` (the footrule of the
product). This route never uses the closed xi formula in
:mod:`lslcopula.measures`, so the two serve as cross-checks.
"""

from dataclasses import dataclass, field

import numpy as np

from .diagonal import Diagonal, PowerPiecewiseDiagonal
from .errors import DomainError
from .quadrature import DEFAULT_TOL, NODES, KRONROD_WEIGHTS, integrate, integrate_panels

# the tail table in log-time starts here; delta* < t is negligible below it
_LOG_T_MIN = np.log(1e-100)
# relative accuracy of the tail table; the validator compares delta*/t**2 at 1e-12
TAIL_RTOL = 1e-13


def _pow_diff(a, b, x, log_scale=0.0):
    """``exp(log_scale) * int_a^b s**(x - 1) ds`` for ``0 < a <= b``.

    Stable near ``x = 0``; the scale enters in log form so that huge piece
    coefficients paired with tiny knots do not overflow.
    """
    log_ratio = np.log(b) - np.log(a)
    small = np.abs(x) < 1e-300
    xs = np.where(small, 1.0, x)
    lead = np.exp(log_scale + x * np.log(a))
    return lead * np.where(small, log_ratio, np.expm1(xs * log_ratio) / xs)


class _PowerTail:
    """Exact ``T(t)`` for piecewise power diagonals.

    On a piece ``c * s**e`` the integrand is ``c**2 (e-1)**2 s**(2e-4)``,
    whose integral is a :func:`_pow_diff` with ``x = 2e - 3``; ``e = 3/2``
    is the logarithmic case.
    """

    def __init__(self, d):
        self.d = d
        e, k = d.exponents, d.knots
        with np.errstate(divide="ignore"):
            # e == 1 pieces contribute nothing; log 0 = -inf gives exp(-inf) = 0
            self.log_scale = 2.0 * (d.log_coefficients + np.log(np.abs(e - 1.0)))
        self.x = 2.0 * e - 3.0
        pieces = _pow_diff(k[1:-1], k[2:], self.x[1:], self.log_scale[1:])
        # tail at the right end of each piece: T(t_1), ..., T(t_m) = 0
        self.at_knots = np.append(np.cumsum(pieces[::-1])[::-1], 0.0)

    def __call__(self, t):
        d = self.d
        i = d.piece_index(t)
        right = d.knots[i + 1]
        safe = np.where(t > 0, t, right)
        return self.at_knots[i] + _pow_diff(safe, right, self.x[i], self.log_scale[i])


class _QuadratureTail:
    """``T(t)`` from a cumulative Gauss-Kronrod table in ``x = log s``.

    ``T`` may diverge at 0, so panels are refined to relative accuracy
    ``rtol`` (or absolute ``rtol`` by width share where the integrand is
    negligible). The integrand is a square, so each tail sum inherits both
    bounds and ``t**2 * T(t)`` is accurate to about ``2 * rtol``. A query inside an accepted panel adds one 15-point rule on
    the remaining sub-panel.
    """

    def __init__(self, d, rtol):
        self.d = d
        knots = np.log(d.knots[d.knots > 0])
        knots = np.concatenate([[_LOG_T_MIN], knots[knots > _LOG_T_MIN]])
        panels = integrate_panels(self._integrand, knots, rtol, relative=True)
        self.edges = panels.edges
        self.at_edges = np.append(np.cumsum(panels.values[::-1])[::-1], 0.0)

    def _integrand(self, x):
        s = np.exp(x)
        g = self.d._ratio_slope(s)
        return g * g * s

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        x = np.log(np.maximum(t, np.exp(_LOG_T_MIN))).ravel()
        j = np.clip(np.searchsorted(self.edges, x, side="right") - 1, 0, self.edges.size - 2)
        right = self.edges[j + 1]
        half = 0.5 * (right - x)
        nodes = (0.5 * (right + x))[:, None] + half[:, None] * NODES[None, :]
        part = (self._integrand(nodes.ravel()).reshape(nodes.shape) @ KRONROD_WEIGHTS) * half
        return (self.at_edges[j + 1] + part).reshape(t.shape)


@dataclass(frozen=True, eq=False, repr=False)
class MarkovDiagonal(Diagonal):
    """``delta*`` for a base diagonal; itself an admissible diagonal.

    ``method`` is ``"auto"`` (exact tail for piecewise power diagonals,
    quadrature otherwise), ``"exact"`` or ``"quadrature"``.
    """

    base: Diagonal
    tol: float = DEFAULT_TOL
    method: str = "auto"
    kind: str = "markov"
    knots: np.ndarray = field(init=False)
    tail: object = field(init=False)

    def __post_init__(self):
        power = isinstance(self.base, PowerPiecewiseDiagonal)
        method = self.method
        if method == "auto":
            method = "exact" if power else "quadrature"
        if method == "exact" and not power:
            raise DomainError("exact tail needs a piecewise power diagonal")
        if method not in ("exact", "quadrature"):
            raise DomainError(f"unknown method {self.method!r}")
        tail = (_PowerTail(self.base) if method == "exact"
                else _QuadratureTail(self.base, min(self.tol, TAIL_RTOL)))
        object.__setattr__(self, "knots", self.base.knots)
        object.__setattr__(self, "tail", tail)

    @property
    def params(self):
        return {"base": self.base, "method": self.method}

    def _value(self, t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        y, r = self.base._value(safe), self.base._ratio(safe)
        out = y * r + safe * safe * self.tail(safe)
        return np.where(t > 0, out, 0.0)

    def _ratio(self, t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        r = self.base._ratio(safe)
        r0 = self.base._ratio(np.zeros_like(t))
        return np.where(t > 0, r * r + safe * self.tail(safe), r0 * r0)

    def _slope(self, t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t > 0, t, 1.0)
        r, tdr = self.base._ratio(safe), safe * self.base._ratio_slope(safe)
        # 2 r delta' - r**2 + 2 t T - (delta' - r)**2 with delta' = r + t r'
        out = r * r + tdr * (2.0 * r - tdr) + 2.0 * safe * self.tail(safe)
        r0 = self.base._ratio(np.zeros_like(t))
        return np.where(t > 0, out, r0 * r0)

    def _ratio_slope(self, t):
        r, dr = self.base._ratio(t), self.base._ratio_slope(t)
        return self.tail(t) + dr * (2.0 * r - t * dr)


def markov_diagonal(d, tol=DEFAULT_TOL, method="auto"):
    """The diagonal ``(S_delta * S_delta)(t, t)``."""
    return MarkovDiagonal(d, tol, method)


def xi_via_markov(d, tol=DEFAULT_TOL, method="auto"):
    """``xi(S_delta)`` as the footrule ``6 int delta* - 2`` of the Markov product."""
    star = markov_diagonal(d, tol / 12.0, method)
    return float(6.0 * integrate(star._value, d.knots, tol / 6.0) - 2.0)
