"""The Markov product of a copula with its transpose.

Chatterjee's xi can also be read off the diagonal of C^T * C, which
is again lower semilinear. Computing xi both ways is a strong consistency
check on the quadrature.
"""

import numpy as np

from lslcopula import make_family, markov_diagonal, random_diagonal, validate, xi_closed, xi_via_markov

d = make_family("power", p=1.5)
star = markov_diagonal(d)
t = np.linspace(0, 1, 6)
print("delta(t)  :", np.round(d(t), 5))
print("delta*(t) :", np.round(star(t), 5))
print("delta* admissible:", validate(star).passed)

print(f"\n{'diagonal':<28}{'xi closed':>14}{'xi markov':>14}{'gap':>10}")
cases = [("power p=1.5", d), ("example23", make_family("example23"))]
cases += [(f"random seed {s}", random_diagonal(s)) for s in (1, 2, 3)]
for label, x in cases:
    a, b = xi_closed(x), xi_via_markov(x)
    print(f"{label:<28}{a:14.10f}{b:14.10f}{abs(a - b):10.1e}")
