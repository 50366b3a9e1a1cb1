"""Rank statistics estimating tau, rho, phi and xi from a sample.

These are the Monte Carlo oracles for the closed forms in
:mod:`lslcopula.measures`. All four statistics are computed from integer
rank sums, so they are exactly invariant under reordering the sample rows.
"""

import numpy as np

from .errors import DomainError
from .measures import MeasureVector


def ranks(values, seed=0):
    """Ranks ``1..n`` of ``values``; exact ties are ordered by seeded jitter."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size < 1:
        raise DomainError("need a non-empty 1-D sample")
    jitter = np.random.default_rng(seed).random(values.size)
    order = np.lexsort((jitter, values))
    r = np.empty(values.size, dtype=np.int64)
    r[order] = np.arange(1, values.size + 1)
    return r


def count_inversions(seq):
    """Number of pairs ``i < j`` with ``seq[i] > seq[j]``.

    Bottom-up merge sort, one vectorized pass per level: runs of length
    ``width`` are already sorted, and for each element of a right run we
    count the larger elements of its left partner run with a keyed binary
    search. Equal values do not count as inversions.
    """
    a = np.asarray(seq)
    n = a.size
    if n < 2:
        return 0
    # dense ranks so that block offsets of n keep blocks apart
    a = np.unique(a, return_inverse=True)[1].astype(np.int64)
    pos = np.arange(n)
    total = 0
    width = 1
    while width < n:
        block = pos // (2 * width)
        right = (pos // width) % 2 == 1
        key = block * n + a
        left_keys = key[~right]
        rb = block[right]
        not_greater = np.searchsorted(left_keys, key[right], side="right")
        left_end = np.searchsorted(left_keys, (rb + 1) * n, side="left")
        total += int((left_end - not_greater).sum())
        a = np.sort(key) - block * n
        width *= 2
    return total


def kendall_tau(r, s):
    """``(concordant - discordant) / C(n, 2)`` for two rank vectors."""
    r, s = np.asarray(r), np.asarray(s)
    n = r.size
    pairs = n * (n - 1) // 2
    discordant = count_inversions(s[np.argsort(r, kind="stable")])
    return (pairs - 2 * discordant) / pairs


def spearman_rho(r, s):
    """Pearson correlation of two permutations, ``1 - 6 sum d**2 / (n (n**2 - 1))``."""
    n = len(r)
    d = np.asarray(r, dtype=np.int64) - np.asarray(s, dtype=np.int64)
    return 1.0 - 6.0 * int((d * d).sum()) / (n * (n * n - 1))


def footrule(r, s):
    """Spearman's footrule ``1 - 3 sum |r - s| / (n**2 - 1)``."""
    n = len(r)
    d = np.abs(np.asarray(r, dtype=np.int64) - np.asarray(s, dtype=np.int64))
    return 1.0 - 3.0 * int(d.sum()) / (n * n - 1)


def chatterjee_xi(r, s):
    """Chatterjee's no-ties statistic of ``Y`` on ``X``.

    ``s`` reordered by ascending ``r`` gives ``s_(1), ..., s_(n)`` and the
    statistic is ``1 - 3 sum |s_(i+1) - s_(i)| / (n**2 - 1)``.
    """
    n = len(r)
    ordered = np.asarray(s, dtype=np.int64)[np.argsort(r, kind="stable")]
    return 1.0 - 3.0 * int(np.abs(np.diff(ordered)).sum()) / (n * n - 1)


def estimate_all(batch, seed=0):
    """Rank estimates of ``(tau, rho, phi, xi)`` from a sample with ``.u``, ``.v``.

    ``xi`` is the statistic of ``V`` on ``U``.
    """
    u, v = np.asarray(batch.u), np.asarray(batch.v)
    if u.shape != v.shape or u.ndim != 1:
        raise DomainError("u and v must be 1-D arrays of equal length")
    if u.size < 2:
        raise DomainError("need at least two sample points")
    su, sv = np.random.SeedSequence(seed).spawn(2)
    r, s = ranks(u, su), ranks(v, sv)
    return MeasureVector(kendall_tau(r, s), spearman_rho(r, s), footrule(r, s),
                         chatterjee_xi(r, s))
