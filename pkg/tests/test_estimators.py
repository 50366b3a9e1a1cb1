from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_array_equal
from scipy import stats

from lslcopula import (
    DomainError,
    LowerSemilinearCopula,
    SampleBatch,
    analytic_measures,
    make_family,
    ranks,
    sample,
)
from lslcopula.estimators import (
    chatterjee_xi,
    count_inversions,
    estimate_all,
    footrule,
    kendall_tau,
    spearman_rho,
)


def brute_inversions(seq):
    return sum(1 for i, j in combinations(range(len(seq)), 2) if seq[i] > seq[j])


def test_rank_examples():
    assert ranks([0.2, 0.9, 0.5]).tolist() == [1, 3, 2]
    assert ranks(np.arange(10.0)).tolist() == list(range(1, 11))
    assert ranks(np.arange(10.0)[::-1]).tolist() == list(range(10, 0, -1))


@given(st.lists(st.floats(0, 1), min_size=1, max_size=60), st.integers(0, 100))
def test_ranks_are_a_permutation(values, seed):
    r = ranks(values, seed)
    assert sorted(r.tolist()) == list(range(1, len(values) + 1))
    v = np.asarray(values)
    order = np.argsort(r)
    assert np.all(np.diff(v[order]) >= 0)


def test_ties_broken_by_seed():
    v = [0.5] * 6
    assert ranks(v, 1).tolist() == ranks(v, 1).tolist()
    assert any(ranks(v, 1).tolist() != ranks(v, s).tolist() for s in range(2, 10))


def test_ranks_reject_empty():
    with pytest.raises(DomainError):
        ranks([])


@given(st.lists(st.integers(-5, 5), max_size=80))
def test_inversions_match_brute_force(seq):
    assert count_inversions(seq) == brute_inversions(seq)


def test_inversions_large():
    perm = np.random.default_rng(0).permutation(3000)
    pairs = 3000 * 2999 // 2
    # no ties: tau = (pairs - 2 * discordant) / pairs
    discordant = pairs * (1 - stats.kendalltau(np.arange(3000), perm).statistic) / 2
    assert count_inversions(perm) == pytest.approx(discordant, abs=0.5)
    assert count_inversions(np.arange(3000)[::-1]) == pairs


def test_three_comonotone_points():
    r = np.array([1, 2, 3])
    assert kendall_tau(r, r) == 1 and spearman_rho(r, r) == 1 and footrule(r, r) == 1
    assert chatterjee_xi(r, r) == pytest.approx(0.25)


def test_two_countermonotone_points():
    assert kendall_tau(np.array([1, 2]), np.array([2, 1])) == -1


@given(st.permutations(list(range(1, 41))))
def test_tau_rho_match_scipy(perm):
    r = np.arange(1, 41)
    s = np.array(perm)
    assert kendall_tau(r, s) == pytest.approx(stats.kendalltau(r, s).statistic, abs=1e-12)
    assert spearman_rho(r, s) == pytest.approx(stats.spearmanr(r, s).statistic, abs=1e-12)


@given(st.permutations(list(range(1, 31))))
def test_xi_matches_direct_formula(perm):
    s = np.array(perm)
    r = np.arange(1, 31)[::-1]
    ordered = s[np.argsort(r)]
    n = 30
    direct = 1 - 3 * sum(abs(ordered[i + 1] - ordered[i]) for i in range(n - 1)) / (n * n - 1)
    assert chatterjee_xi(r, s) == pytest.approx(direct, abs=1e-15)


def test_row_order_invariance():
    b = sample(LowerSemilinearCopula(make_family("power", p=1.4)), 5000, 1)
    perm = np.random.default_rng(3).permutation(5000)
    shuffled = SampleBatch(b.u[perm], b.v[perm], b.seed)
    assert tuple(estimate_all(b)) == tuple(estimate_all(shuffled))


def test_estimate_all_rejects_tiny_or_ragged():
    with pytest.raises(DomainError):
        estimate_all(SampleBatch(np.array([0.5]), np.array([0.5]), 0))
    with pytest.raises(DomainError):
        estimate_all(SampleBatch(np.array([0.5, 0.2]), np.array([0.5]), 0))


@pytest.mark.slow
@pytest.mark.parametrize("family,params", [
    ("ua", {"a": 0.3}), ("ua", {"a": 0.7}), ("la", {"a": 0.6}),
    ("power", {"p": 1.2}), ("frechet", {"alpha": 0.8}),
])
def test_consistency_at_1e5(family, params):
    batch = sample(LowerSemilinearCopula(make_family(family, **params)), 100_000, 21)
    est, exact = estimate_all(batch), analytic_measures(family, **params)
    assert est.tau == pytest.approx(exact.tau, abs=0.02)
    assert est.rho == pytest.approx(exact.rho, abs=0.02)
    assert est.phi == pytest.approx(exact.phi, abs=0.02)
    assert est.xi == pytest.approx(exact.xi, abs=0.03)
    swapped = estimate_all(SampleBatch(batch.v, batch.u, batch.seed))
    assert swapped.xi == pytest.approx(exact.xi, abs=0.03)


def test_deterministic_per_seed():
    c = LowerSemilinearCopula(make_family("la", a=0.5))
    a = estimate_all(sample(c, 2000, 9))
    b = estimate_all(sample(c, 2000, 9))
    assert tuple(a) == tuple(b)
    assert_array_equal(sample(c, 2000, 9).v, sample(c, 2000, 9).v)
