import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from lslcopula import DomainError, comonotone, independence, make_family, mix, validate
from lslcopula.diagonal import (
    FAMILIES,
    PowerPiecewiseDiagonal,
    random_diagonal,
)

from conftest import diagonals, open_unit, unit

GRID = np.linspace(0.0, 1.0, 1001)


# --- family constructors -------------------------------------------------

def test_ua_half_at_quarter():
    assert make_family("ua", a=0.5)(0.25) == pytest.approx(1 / 8, abs=1e-15)


def test_la_half_at_quarter():
    assert make_family("la", a=0.5)(0.25) == pytest.approx(1 / 8, abs=1e-15)


def test_power_two_is_independence():
    assert_allclose(make_family("power", p=2.0)(GRID), GRID**2, atol=0)


def test_frechet_value():
    assert make_family("frechet", alpha=0.5)(0.5) == pytest.approx(3 / 8, abs=1e-15)


@pytest.mark.parametrize("beta", [0.0, 0.3, 1.0])
def test_mo_product_log_branch(beta):
    t = GRID[1:]
    assert_allclose(make_family("mo_product", alpha=0.5, beta=beta)(t),
                    t**2 * (1 - beta / 2 * np.log(t)), rtol=1e-14, atol=1e-300)


@pytest.mark.parametrize("alpha,beta", [(0.7, 0.4), (0.2, 0.9), (1.0, 1.0), (0.49999, 0.5)])
def test_mo_product_power_branch_matches_sympy(alpha, beta):
    t = sp.symbols("t", positive=True)
    a, b = sp.nsimplify(alpha), sp.nsimplify(beta)
    q = b * (1 - 2 * a) / a
    expr = t**2 * (1 - a**2 * (t**q - 1) / (1 - 2 * a))
    d = make_family("mo_product", alpha=alpha, beta=beta)
    for x in (0.01, 0.2, 0.5, 0.9):
        assert d(x) == pytest.approx(float(expr.subs(t, x)), rel=1e-12)
        assert d.deriv(x) == pytest.approx(float(sp.diff(expr, t).subs(t, x)), rel=1e-9)


@pytest.mark.parametrize("beta", [0.0, 0.6])
def test_mo_product_alpha_zero_is_independence(beta):
    assert_allclose(make_family("mo_product", alpha=0.0, beta=beta)(GRID), GRID**2)


def test_mo_product_near_half_is_continuous():
    near = make_family("mo_product", alpha=0.5 - 1e-9, beta=0.8)
    at = make_family("mo_product", alpha=0.5, beta=0.8)
    assert_allclose(near(GRID[1:]), at(GRID[1:]), atol=1e-8)


def test_example23_is_continuous_and_admissible():
    d = make_family("example23")
    for k in d.knots[1:-1]:
        assert d(k) == pytest.approx(d(k - 1e-13), abs=1e-12)
    assert validate(d)


@pytest.mark.parametrize("d", [make_family("ua", a=0.3), make_family("power", p=1.4),
                               make_family("mo_product", alpha=0.7, beta=0.4)])
def test_endpoint_at_one(d):
    assert d(1.0) == 1.0


def test_derivative_version():
    assert independence().deriv(0.5) == 1.0
    assert_allclose(independence().deriv(GRID), 2 * GRID)
    ua = make_family("ua", a=0.5)
    assert ua.deriv(0.5) == 1.0  # right derivative at the kink
    assert ua.deriv(0.5 - 1e-12) == pytest.approx(2.0, abs=1e-9)
    assert make_family("la", a=0.5).deriv(1.0) == pytest.approx(2.0)  # left derivative at 1
    assert make_family("power", p=1.5).deriv(0.25) == pytest.approx(0.75, abs=1e-15)


def test_comonotone_identity():
    assert_allclose(comonotone()(GRID), GRID)
    assert_allclose(comonotone().deriv(GRID), 1.0)


@pytest.mark.parametrize("name,params", [
    ("ua", {"a": 1.2}), ("la", {"a": -0.1}), ("power", {"p": 0.9}),
    ("power", {"p": 2.5}), ("frechet", {"alpha": 2}), ("mo_product", {"alpha": 0.5, "beta": -1}),
    ("ua", {}), ("power", {"p": 1.5, "a": 0.2}), ("nope", {}), ("ua", {"a": "x"}),
])
def test_bad_parameters(name, params):
    with pytest.raises(DomainError):
        make_family(name, **params)


def test_missing_parameter_message():
    with pytest.raises(DomainError, match=r"takes parameters \['a'\], got \[\]"):
        make_family("ua")


@pytest.mark.parametrize("knots,exps", [
    ([0.0, 0.5], [1.0]), ([0.1, 1.0], [1.0]), ([0.0, 0.6, 0.4, 1.0], [1, 1, 1]),
    ([0.0, 0.5, 0.5, 1.0], [1, 1, 1]), ([0.0, 0.5, 1.0], [1.0]), ([0.0, 1.0], [2.5]),
    ([0.0, 1.0], [float("nan")]),
])
def test_bad_piecewise(knots, exps):
    with pytest.raises(DomainError):
        make_family("piecewise", knots=knots, exponents=exps)


def test_domain_checked():
    d = independence()
    for bad in (-0.1, 1.1, np.nan):
        with pytest.raises(DomainError):
            d(bad)
        with pytest.raises(DomainError):
            d.deriv(bad)


def test_scalar_and_array_outputs():
    d = make_family("ua", a=0.4)
    assert isinstance(d(0.3), float)
    assert d(np.array([0.3, 0.6])).shape == (2,)


def test_repr_names_kind():
    assert "ua" in repr(make_family("ua", a=0.4))


# --- mixtures ------------------------------------------------------------

def test_mix_of_corners_is_frechet():
    m = mix([comonotone(), independence()], [0.3, 0.7])
    assert_allclose(m(GRID), make_family("frechet", alpha=0.3)(GRID), atol=1e-16)
    assert_allclose(m.deriv(GRID), make_family("frechet", alpha=0.3).deriv(GRID), atol=1e-15)


def test_mix_identity():
    d = make_family("example23")
    assert_allclose(mix([d], [1.0])(GRID), d(GRID), atol=0)


def test_mix_ua_la_hand_value():
    m = mix([make_family("ua", a=0.5), make_family("la", a=0.5)], [0.5, 0.5])
    assert m(0.25) == pytest.approx(1 / 8, abs=1e-15)


def test_mix_knots_union():
    m = mix([make_family("ua", a=0.3), make_family("la", a=0.6)], [0.5, 0.5])
    assert_allclose(m.knots, [0.0, 0.3, 0.6, 1.0])


@pytest.mark.parametrize("weights", [[0.5], [0.6, 0.6], [1.2, -0.2], [np.nan, 1.0]])
def test_mix_bad_weights(weights):
    with pytest.raises(DomainError):
        mix([comonotone(), independence()], weights)


# --- validation ----------------------------------------------------------

def test_validate_ua():
    report = validate(make_family("ua", a=0.3), 10_000)
    assert report.passed and bool(report)
    assert str(report).startswith("pass")


def test_validate_cubic_fails_lower_bound():
    cubic = PowerPiecewiseDiagonal([0.0, 1.0], [3.0], check=False)
    report = validate(cubic, 10_000)
    assert not report
    names = [v.constraint for v in report.violations]
    assert "δ(t) ≥ t²" in names
    assert "δ(t) ≥ t² violated" in str(report)


def test_validate_sqrt_fails_upper_bound():
    root = PowerPiecewiseDiagonal([0.0, 1.0], [0.5], check=False)
    names = [v.constraint for v in validate(root).violations]
    assert "δ(t) ≤ t" in names and "δ(t) ≤ tδ′(t)" in names


def test_validate_detects_wrong_exponent_order_inside_bounds():
    # exponents outside [1,2] on a short piece break monotonicity of delta/t
    d = PowerPiecewiseDiagonal([0.0, 0.5, 0.6, 1.0], [2.0, 0.8, 1.0], check=False)
    assert not validate(d)


def test_validate_mo_product():
    assert validate(make_family("mo_product", alpha=0.7, beta=0.4), 10_000)


def test_validate_grid_too_small():
    with pytest.raises(DomainError):
        validate(independence(), 1)


@given(diagonals())
def test_every_constructed_diagonal_validates(d):
    report = validate(d, 2000)
    assert report.passed, str(report)


@given(diagonals(), st.lists(unit, min_size=1, max_size=20))
def test_diagonal_invariants(d, ts):
    t = np.array(ts)
    y = d(t)
    assert np.all(t * t - 1e-14 <= y) and np.all(y <= t + 1e-14)
    assert d(0.0) == 0.0 and d(1.0) == pytest.approx(1.0, abs=1e-14)


@given(diagonals(), open_unit, open_unit)
def test_ratio_monotonicity(d, s, t):
    s, t = min(s, t), max(s, t)
    assert d(s) / s <= d(t) / t + 1e-12
    assert d(t) / t**2 <= d(s) / s**2 * (1 + 1e-12) + 1e-12


@given(diagonals(), open_unit)
def test_derivative_sandwich(d, t):
    y, ty = d(t), t * d.deriv(t)
    assert y - 1e-12 <= ty <= 2 * y + 1e-12


@given(diagonals(), st.floats(0.01, 0.98))
def test_derivative_matches_value_difference(d, t):
    # right derivative: a forward difference is exact up to O(h) unless a
    # kink lies strictly inside (t, t + h]
    h = 1e-7
    assume(not np.any((d.knots > t) & (d.knots <= t + h)))
    fd = (d(t + h) - d(t)) / h
    assert d.deriv(t) == pytest.approx(fd, abs=1e-4)


# --- u_a / l_a characterization -----------------------------------------

@given(unit)
def test_ua_saturates_a_bound_everywhere(a):
    d = make_family("ua", a=a)
    t = GRID[1:]
    y, ty = d(t), t * d.deriv(t)
    assert np.all(np.isclose(y, t, atol=1e-14) | np.isclose(ty, 2 * y, atol=1e-14))


@given(unit)
def test_la_saturates_a_bound_everywhere(a):
    d = make_family("la", a=a)
    t = GRID[1:]
    y, ty = d(t), t * d.deriv(t)
    assert np.all(np.isclose(y, t * t, atol=1e-14) | np.isclose(ty, y, atol=1e-14))


def test_power_saturates_neither():
    d = make_family("power", p=1.5)
    t = GRID[1:-1]
    y, ty = d(t), t * d.deriv(t)
    assert not np.any(np.isclose(y, t) | np.isclose(ty, 2 * y))


@pytest.mark.parametrize("a", [0.0, 1.0])
def test_ua_la_corners_collapse_to_one_piece(a):
    for name in ("ua", "la"):
        d = make_family(name, a=a)
        assert d.knots.tolist() == [0.0, 1.0]
    assert_allclose(make_family("ua", a=0.0)(GRID), GRID)
    assert_allclose(make_family("la", a=0.0)(GRID), GRID**2)


# --- random generator ----------------------------------------------------

def test_random_single_piece_is_power():
    d = random_diagonal(3, max_pieces=1)
    p = d.exponents[0]
    assert_allclose(d(GRID), make_family("power", p=p)(GRID), atol=1e-15)


@pytest.mark.parametrize("e,corner", [(1.0, comonotone), (2.0, independence)])
def test_constant_exponents_give_corners(e, corner):
    d = make_family("piecewise", knots=[0, 0.2, 0.7, 1], exponents=[e, e, e])
    assert_allclose(d(GRID), corner()(GRID), atol=1e-15)


def test_random_seed_42_validates():
    assert validate(random_diagonal(42, 8), 10_000)


def test_random_is_reproducible_and_seed_sensitive():
    a, b, c = random_diagonal(5), random_diagonal(5), random_diagonal(6)
    assert_allclose(a(GRID), b(GRID), atol=0)
    assert not np.allclose(a(GRID), c(GRID))


def test_random_piece_count_range():
    counts = {random_diagonal(s, 4).exponents.size for s in range(200)}
    assert counts == {1, 2, 3, 4}


def test_random_bad_max_pieces():
    with pytest.raises(DomainError):
        random_diagonal(0, 0)


def test_family_registry_complete():
    assert set(FAMILIES) == {"ua", "la", "power", "example23", "frechet", "mo_product",
                             "piecewise"}


def test_subnormal_parameter_collapses_to_corner():
    tiny = 5e-324
    assert_allclose(make_family("ua", a=tiny)(GRID), GRID, atol=0)
    assert_allclose(make_family("la", a=tiny)(GRID), GRID**2, atol=0)
    assert make_family("ua", a=tiny).params == {"a": tiny}


def test_subnormal_interior_knot_rejected():
    with pytest.raises(DomainError, match="at least"):
        make_family("piecewise", knots=[0.0, 1e-310, 1.0], exponents=[1.0, 2.0])


def test_tiny_normal_knot_is_exact():
    d = make_family("ua", a=1e-300)
    assert d(1e-301) == pytest.approx(1e-302, rel=1e-12)
    assert d.ratio(1e-301) == pytest.approx(0.1, rel=1e-12)
    assert validate(d)
