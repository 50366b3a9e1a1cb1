"""Exact regions of measure pairs.

For each pair such as (tau, rho) the attainable values over all lower
semilinear copulas form a closed region with explicit boundary curves.
Random diagonals give a cloud of points that should never leave it.
"""

import numpy as np

from lslcopula import area, bounds, contains, simulate_cloud
from lslcopula.regions import PAIRS, cloud_violations

for pair in PAIRS:
    analytic, numeric = area(pair)
    lo, hi = bounds(pair, 0.5)
    print(f"{pair:<8} area {analytic:.10f} (quadrature {numeric:.10f})  at x=0.5: [{lo:.4f}, {hi:.4f}]")

# Marshall-Olkin copulas are not lower semilinear and can leave a region.
print("\n(tau, phi) = (1/10, 2/29) inside tau_phi:", contains("tau_phi", 0.1, 2 / 29))

cloud = simulate_cloud(300, seed=7)
arr = np.array([tuple(m) for m in cloud])
print(f"\n{len(cloud)} random diagonals, tau spans [{arr[:, 0].min():.3f}, {arr[:, 0].max():.3f}]")
print("points outside any region:", len(cloud_violations(cloud, 1e-9)))
