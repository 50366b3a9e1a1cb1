"""Kendall's tau, Spearman's rho, Spearman's footrule and Chatterjee's xi.

For a lower semilinear copula every measure is a one-dimensional integral
of the diagonal::

    tau = 4 * int delta(t)**2 / t dt - 1
    rho = 12 * int t * delta(t) dt - 3
    phi = 6 * int delta(t) dt - 2
    xi  = tau - 2 * int (t delta' - delta) (2 delta - t delta') / t dt
"""

from dataclasses import astuple, dataclass

import numpy as np

from .diagonal import make_family
from .errors import DomainError
from .quadrature import DEFAULT_TOL, integrate


@dataclass(frozen=True)
class MeasureVector:
    tau: float
    rho: float
    phi: float
    xi: float

    def __iter__(self):
        return iter(astuple(self))

    def pairs(self):
        """Coordinates in each of the four exact regions, keyed by pair id."""
        return {
            "tau_rho": (self.tau, self.rho),
            "tau_phi": (self.tau, self.phi),
            "phi_rho": (self.phi, self.rho),
            "tau_xi": (self.tau, self.xi),
        }

    def __str__(self):
        return f"tau={self.tau:.6g} rho={self.rho:.6g} phi={self.phi:.6g} xi={self.xi:.6g}"


def _integrands(d, with_xi):
    def f(t):
        y = d._value(t)
        rows = [y * y / t, t * y, y]
        if with_xi:
            ty = t * d._slope(t)
            rows.append((ty - y) * (2.0 * y - ty) / t)
        return np.stack(rows)
    return f


def concordance(d, tol=DEFAULT_TOL):
    """``(tau, rho, phi)`` of ``S_delta``, each within ``tol``."""
    a, b, c = integrate(_integrands(d, False), d.knots, tol / 12.0)
    return float(4.0 * a - 1.0), float(12.0 * b - 3.0), float(6.0 * c - 2.0)


def xi_closed(d, tol=DEFAULT_TOL):
    """Chatterjee's xi from the closed form in ``delta`` and ``delta'``."""
    return measure_vector(d, tol).xi


def measure_vector(d, tol=DEFAULT_TOL):
    """All four measures from a single vector-valued quadrature pass."""
    a, b, c, g = integrate(_integrands(d, True), d.knots, tol / 12.0)
    tau = float(4.0 * a - 1.0)
    return MeasureVector(tau, float(12.0 * b - 3.0), float(6.0 * c - 2.0), float(tau - 2.0 * g))


def _mo(alpha, beta):
    if alpha == 0.0 and beta == 0.0:
        return MeasureVector(0.0, 0.0, 0.0, 0.0)
    m = min(alpha, beta)
    ab = alpha * beta
    return MeasureVector(
        ab / (alpha - ab + beta),
        3.0 * ab / (2.0 * alpha - ab + 2.0 * beta),
        2.0 * m / (3.0 - m),
        2.0 * alpha * ab / (3.0 * alpha + beta - 2.0 * ab),
    )


def analytic_measures(family, **params):
    """Exact ``(tau, rho, phi, xi)`` for the parametric families.

    ``family`` is one of ``ua``, ``la`` (``a``), ``power`` (``p``),
    ``frechet`` (``alpha``) or ``marshall_olkin`` (``alpha``, ``beta``). For
    Marshall-Olkin these are the measures of ``M_{alpha,beta}`` itself, which
    is not lower semilinear unless ``alpha == beta``.
    """
    if family == "marshall_olkin":
        try:
            alpha, beta = float(params.pop("alpha")), float(params.pop("beta"))
        except KeyError as exc:
            raise DomainError(f"marshall_olkin needs {exc.args[0]}") from None
        if params:
            raise DomainError(f"unexpected parameters {sorted(params)}")
        for name, v in (("alpha", alpha), ("beta", beta)):
            if not 0.0 <= v <= 1.0:
                raise DomainError(f"parameter {name}={v} outside [0, 1]")
        return _mo(alpha, beta)
    if family not in ("ua", "la", "power", "frechet"):
        raise DomainError(f"no closed form for family {family!r}")
    # the constructor does the parameter-range checks
    d = make_family(family, **params)
    if family == "ua":
        a = d.params["a"]
        return MeasureVector(1 - a**2, 1 - a**3, 1 - a**2, 1 - a**2)
    if family == "la":
        a = d.params["a"]
        return MeasureVector(a**4, a**4, a**3, a**4)
    if family == "power":
        p = d.params["p"]
        return MeasureVector((2 - p) / p, 3 * (2 - p) / (p + 2),
                             2 * (2 - p) / (p + 1), (2 - p) ** 2 / p)
    alpha = d.alpha
    return MeasureVector(alpha * (alpha + 2) / 3, alpha, alpha, alpha**2)
