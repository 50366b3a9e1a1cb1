"""Building and checking copula diagonals.

A lower semilinear copula is fully determined by its diagonal section
delta(t) = C(t, t). Only some curves qualify, so every diagonal can be
checked against the admissibility constraints on a grid.
"""

import numpy as np

from lslcopula import make_family, mix, random_diagonal, validate
from lslcopula.diagonal import PowerPiecewiseDiagonal

t = np.linspace(0, 1, 6)

# The named families, evaluated on a coarse grid.
for name, params in [("ua", {"a": 0.5}), ("la", {"a": 0.5}), ("power", {"p": 1.5}),
                     ("frechet", {"alpha": 0.5}), ("mo_product", {"alpha": 0.3, "beta": 0.8})]:
    d = make_family(name, **params)
    print(f"{name:<11}{params}  delta = {np.round(d(t), 4)}")

# Convex combinations stay admissible.
blend = mix([make_family("ua", a=0.3), make_family("power", p=1.8)], [0.25, 0.75])
print("\nmixture passes:", validate(blend).passed)

# A seeded random piecewise power diagonal; the same seed gives the same curve.
r = random_diagonal(seed=1)
print("random knots:", np.round(r.knots, 3))
print("random exponents:", np.round(r.exponents, 3))
print(validate(r, grid_n=10_000))

# t**3 sinks below the independence diagonal t**2, so validation lists the failures.
bad = PowerPiecewiseDiagonal([0.0, 1.0], [3.0], check=False)
print("\nt^3 as a diagonal:")
print(validate(bad, grid_n=200))
