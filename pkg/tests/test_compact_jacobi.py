import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import beta as beta_fn

from chernofflab import compact_jacobi as cj
from chernofflab.specfun import DomainError

CP = cj.CpJacobiParams


def test_params():
    with pytest.raises(DomainError, match="alpha out of range"):
        CP(-1.5, 0)
    with pytest.raises(DomainError, match="beta out of range"):
        CP(0, -1)
    p = CP(0.5, 1.5)
    assert p.shift == 1.5
    mu = p.eigenvalue(np.arange(6))
    assert np.all(np.diff(mu) > 0)


def test_trig_weight():
    th = np.array([0.3, 1.2, 2.9])
    assert np.allclose(cj.trig_weight(th, CP(-0.5, -0.5)), 1.0)
    assert abs(cj.trig_weight(np.pi / 2, CP(0, 0)) - 0.5) < 1e-15
    mass = quad(lambda t: cj.trig_weight(t, CP(1, 2)), 0, np.pi, epsabs=1e-14)[0]
    assert abs(mass - beta_fn(2, 3)) < 1e-12
    for bad in (0.0, np.pi):
        with pytest.raises(DomainError):
            cj.trig_weight(bad, CP(0, 0))


def test_coeff_orthonormality():
    p = CP(0.5, 0.5)
    rule = cj.theta_rule(10, p.alpha, p.beta)
    f = cj.trig_poly(3, p, rule.theta)
    for m in range(9):
        expected = 1.0 if m == 3 else 0.0
        assert abs(cj.coeff(f, m, p, rule, degree=3) - expected) < 1e-12


def test_coeff_constant_and_linearity():
    p = CP(0, 0)
    rule = cj.theta_rule(6, 0, 0)
    one = np.ones(6)
    assert abs(cj.coeff(one, 0, p, rule) - 1.0) < 1e-14
    f, g = np.cos(rule.theta) ** 2, np.cos(rule.theta) ** 3
    lhs = cj.coeff(2 * f - 3 * g, 2, p, rule)
    assert abs(lhs - (2 * cj.coeff(f, 2, p, rule) - 3 * cj.coeff(g, 2, p, rule))) < 1e-14


def test_coeff_rejects_low_order():
    p = CP(0.5, 0.5)
    rule = cj.theta_rule(4, 0.5, 0.5)
    with pytest.raises(ValueError, match="too low"):
        cj.coeff(np.ones(4), 5, p, rule, degree=6)


def test_synthesize_basics():
    p = CP(1.0, -0.5)
    th = np.linspace(0.1, 3.0, 9)
    e3 = cj.CoefficientSequence(np.eye(6)[3], p)
    assert np.allclose(cj.synthesize(e3, th), cj.trig_poly(3, p, th), rtol=0, atol=1e-14)
    zero = cj.CoefficientSequence(np.zeros(6), p)
    assert np.all(cj.synthesize(zero, th) == 0)


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.9, 4.0), st.floats(-0.9, 4.0), st.integers(0, 2**32 - 1))
def test_round_trip_and_parseval(a, b, seed):
    p = CP(a, b)
    N = 12
    c = cj.CoefficientSequence(np.random.default_rng(seed).uniform(-1, 1, N + 1), p)
    rule = cj.theta_rule(N + 1, a, b)
    samples = cj.synthesize(c, rule.theta)
    back = cj.coefficients(samples, N, p, rule)
    assert np.max(np.abs(back.values - c.values)) < 1e-12 * max(1, c.norm())
    assert cj.plancherel_defect(samples, N, p, rule) < 1e-11 * c.norm() ** 2


def test_plancherel_defect_examples():
    p = CP(0.5, -0.5)
    rule = cj.theta_rule(9, 0.5, -0.5)
    assert cj.plancherel_defect(np.zeros(9), 8, p, rule) == 0.0
    assert cj.plancherel_defect(cj.trig_poly(4, p, rule.theta), 8, p, rule) < 1e-12
    rng = np.random.default_rng(1)
    poly = np.polynomial.Polynomial(rng.uniform(-1, 1, 9))
    assert cj.plancherel_defect(poly(np.cos(rule.theta)), 8, p, rule) < 1e-11


def test_apply_spectral():
    p = CP(0, 0)
    c = cj.CoefficientSequence(np.array([0.0, 1.0, 0.5]), p)
    assert np.array_equal(cj.apply_Lcompact_spectral(c, 0).values, c.values)
    assert cj.apply_Lcompact_spectral(c, 1).values[1] == 2.25
    mu = p.eigenvalue(np.arange(3))
    ratio = cj.apply_Lcompact_spectral(c, 2).norm() / cj.apply_Lcompact_spectral(c, 1).norm()
    assert mu[0] <= ratio <= mu[-1]


@pytest.mark.parametrize("ab", [(0.5, 1.5), (0.0, 0.0), (-0.5, 2.0)])
def test_eigen_residual(ab):
    p = CP(*ab)
    th = np.linspace(0.01, np.pi - 0.01, 101)
    for n in range(13):
        e = cj.CoefficientSequence(np.eye(13)[n], p)
        Lf = cj.operator_grid_apply(e, theta=th)
        ref = p.eigenvalue(n) * cj.trig_poly(n, p, th)
        assert np.max(np.abs(Lf - ref)) < 1e-8 * max(1, np.max(np.abs(ref)))


def test_operator_grid_matches_spectral_norm():
    p = CP(1.0, 0.5)
    N = 10
    c = cj.CoefficientSequence(np.random.default_rng(3).uniform(-1, 1, N + 1), p)
    rule = cj.theta_rule(N + 2, 1.0, 0.5)
    Lf = cj.operator_grid_apply(c, theta=rule.theta)
    grid_norm_sq = np.sum(rule.weights_for(1.0, 0.5) * Lf**2)
    spec_norm_sq = np.sum(p.eigenvalue(np.arange(N + 1)) ** 2 * c.values**2)
    assert abs(grid_norm_sq / spec_norm_sq - 1) < 1e-6
    samples = cj.synthesize(c, rule.theta)
    from_samples = cj.operator_grid_apply(samples, p, rule=rule, N=N)
    assert np.max(np.abs(from_samples - Lf)) < 1e-9 * np.max(np.abs(Lf))


def test_operator_on_constant_vanishing_shift():
    p = CP(-0.5, -0.5)
    th = np.linspace(0.2, 2.9, 5)
    c = cj.CoefficientSequence(np.array([3.0]), p)
    assert np.allclose(cj.operator_grid_apply(c, theta=th), 0.0, atol=1e-14)


def test_trig_poly_taylor_against_direct_series():
    p = CP(0.7, 1.3)
    c = cj.CoefficientSequence(np.random.default_rng(2).uniform(-1, 1, 7), p)
    t = cj.trig_poly_taylor(c, 8)
    # compare the Taylor polynomial with the function at small theta
    for th in (1e-2, 3e-2):
        approx = np.polyval(t[::-1], th)
        assert abs(approx - cj.synthesize(c, np.array([th]))[0]) < 1e-9
    assert np.all(t[1::2] == 0)
