import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chernofflab import noncompact as nc
from chernofflab.specfun import DomainError

P = nc.NcJacobiParams

# mpmath 2F1((rho+i lam)/2, (rho-i lam)/2; alpha+1; -sinh^2 r) at 30 digits
PHI_ORACLE = [
    ((1.0, 0.5, -0.5, 0.05), 0.99916701378144461588),
    ((3.0, 0.5, -0.5, 1.0), 0.040027191038473395646),
    ((5.0, 1.5, 0.5, 2.0), 0.0016931890794075561416),
    ((0.7, 0.0, 0.0, 3.0), 0.062985690635346367205),
    ((10.0, 1.0, 0.5, 0.8), 0.037668371755305541183),
]

# mpmath Gamma-ratio c-function at 30 digits
C_ORACLE = [
    ((2.0, 1.5, 0.5), -2.4 - 1.2j),
    ((0.3, 0.0, 0.0), 0.43728569634728030254 - 2.1541693453468903815j),
    ((7.0, 2.0, -1.0), -0.084362873146789867626 + 0.042987225994281702041j),
]


def even_bump(lam, lam0=4.0, width=1.0):
    return np.exp(-((lam - lam0) / width) ** 2 / 2) + np.exp(-((lam + lam0) / width) ** 2 / 2)


def test_params_validation_and_multiplicities():
    with pytest.raises(DomainError, match="alpha out of range"):
        P(-1.5, 0)
    with pytest.raises(DomainError, match="beta out of range"):
        P(0.5, 2.0)
    hyp = P.from_multiplicities(2, 1)       # complex hyperbolic plane
    assert (hyp.alpha, hyp.beta) == (1.0, 0.0)
    assert hyp.varrho == 2.0 and hyp.rho_half_sum == 1.5
    assert P(0.5, 0.5).shifted(2, 0) == P(2.5, 0.5)


def test_ktype_validation():
    d = nc.KTypeIndex(3, 1)
    assert (d.plus, d.minus) == (2, 1)
    for bad in [(1, 0), (0, 2), (-2, 0)]:
        with pytest.raises(DomainError):
            nc.KTypeIndex(*bad)


@pytest.mark.parametrize("args, expected", PHI_ORACLE)
def test_jacobi_function_oracle(args, expected):
    lam, a, b, r = args
    got = nc.jacobi_function(lam, P(a, b), r)
    assert abs(got - expected) < 1e-10 * max(abs(expected), 1e-2)


def test_jacobi_function_simple_values():
    assert nc.jacobi_function(3.0, P(1.5, 0.5), 0.0) == 1.0
    assert abs(nc.jacobi_function(2.0, P(-0.5, -0.5), 1.0) - np.cos(2.0)) < 1e-10
    r = np.linspace(0, 4, 9)
    assert np.array_equal(nc.jacobi_function(2.5, P(1, 0), r), nc.jacobi_function(-2.5, P(1, 0), r))
    assert np.isrealobj(nc.jacobi_function_table([0.5, 4.0], P(0.3, -0.2), r))


@pytest.mark.parametrize("params", [P(0.5, -0.5), P(1.5, 0.5)])
def test_jacobi_function_ode_residual(params):
    h = 1e-3
    r = np.arange(0.4, 2.6 + h / 2, h)
    for lam in (1.0, 3.0):
        phi = nc.jacobi_function_table([lam], params, r)[0]
        Lphi = nc.radial_operator_fd(phi, h, r, params)
        res = Lphi + (lam**2 + params.varrho**2) * phi[2:-2]
        scale = np.max(np.abs(Lphi))
        for r0 in (0.5, 1.0, 2.0):
            i = np.argmin(np.abs(r[2:-2] - r0))
            assert abs(res[i]) < 1e-8 * max(scale, 1)


def test_weight_w():
    r = np.array([0.1, 1.0, 3.0])
    assert np.allclose(nc.weight_w(r, P(-0.5, -0.5)), 1.0)
    assert abs(nc.weight_w(1.0, P(0.5, 0.5)) - (2 * np.sinh(1)) ** 2 * (2 * np.cosh(1)) ** 2) < 1e-12
    assert abs(nc.weight_w(1.0, P(0.5, 0.5)) - 52.616) < 1e-3
    small = 1e-6
    assert abs(nc.weight_w(small, P(1, 0)) / ((2 * small) ** 3 * 2) - 1) < 1e-9


@pytest.mark.parametrize("lam", [0.5, 1.0, 5.0, 20.0])
def test_c_function_closed_forms(lam):
    assert abs(nc.c_function(lam, P(-0.5, -0.5)) - 0.5) < 1e-10
    assert abs(nc.c_function(lam, P(0.5, 0.5)) - 2 / (1j * lam)) < 1e-10


@pytest.mark.parametrize("args, expected", C_ORACLE)
def test_c_function_oracle(args, expected):
    lam, a, b = args
    assert abs(nc.c_function(lam, P(a, b)) - expected) < 1e-11 * abs(expected)


def test_c_function_pole():
    with pytest.raises(DomainError):
        nc.c_function(0.0, P(0.5, 0.5))


def test_forward_transform_cosine_oracle():
    params = P(-0.5, -0.5)
    f = nc.RadialFunction.from_callable(lambda r: np.exp(-r**2), params, 12.0)
    lam = np.linspace(0, 8, 17)
    G = nc.forward_transform(f, lam)
    cos_tr = np.sqrt(np.pi) / 2 * np.exp(-lam**2 / 4)
    assert np.max(np.abs(G.values - cos_tr)) < 1e-8
    zero = nc.forward_transform(nc.RadialFunction(f.grid, 0 * f.values, params, f.weights), lam)
    assert np.all(zero.values == 0)
    with pytest.raises(ValueError):
        nc.forward_transform(f, [])


def test_inverse_transform_cosine_oracle():
    params = P(-0.5, -0.5)
    lam, w = nc.panel_gauss_legendre(0, 6, 6, 16)
    g = np.exp(-lam**2)
    r = np.linspace(0, 3, 7)
    f = nc.inverse_transform(nc.SpectralDensity(lam, g, params, w), r)
    ref = np.array([2 / np.pi * np.sum(w * g * np.cos(lam * x)) for x in r])
    assert np.max(np.abs(f.values - ref)) < 1e-8


def test_inverse_transform_concentrated_spectrum():
    params = P(1.5, 0.5)
    lam, w = nc.panel_gauss_legendre(2.5, 3.5, 8, 16)
    g = np.exp(-((lam - 3) / 0.01) ** 2 / 2)
    G = nc.SpectralDensity(lam, g, params, w)
    G = nc.SpectralDensity(lam, g / np.sum(G.measure() * g), params, w)
    r = np.linspace(0, 2, 21)
    f = nc.inverse_transform(G, r)
    assert np.max(np.abs(f.values - nc.jacobi_function(3.0, params, r))) < 1e-3


@pytest.mark.parametrize("params", [P(0.5, 0.5), P(1.5, 0.5), P(0.0, 0.0)])
def test_round_trip_and_plancherel(params):
    lam, wl = nc.panel_gauss_legendre(0, 12, 12, 16)
    G = nc.SpectralDensity(lam, even_bump(lam), params, wl)
    r, wr = nc.panel_gauss_legendre(0, 14, 28, 16)
    f = nc.inverse_transform(G, r, wr)
    back = nc.forward_transform(f, lam, wl)
    err = np.sqrt(np.sum(wl * np.abs(back.values - G.values) ** 2) / np.sum(wl * G.values**2))
    assert err < 1e-4
    assert nc.plancherel_defect(f) < 1e-6 * f.norm_sq()


def test_plancherel_zero_and_cosine_parseval():
    params = P(-0.5, -0.5)
    f = nc.RadialFunction.from_callable(lambda r: np.exp(-r**2), params, 12.0)
    assert nc.plancherel_defect(nc.RadialFunction(f.grid, 0 * f.values, params, f.weights)) == 0.0
    defect, lhs, rhs = nc.plancherel_defect(f, return_parts=True)
    # cosine Parseval: int_0^inf e^{-2r^2} dr = sqrt(pi/8)
    assert abs(lhs - np.sqrt(np.pi / 8)) < 1e-12
    assert defect < 1e-8


def test_apply_L_spectral_against_finite_differences():
    params = P(0.5, 0.5)
    lam, wl = nc.panel_gauss_legendre(0, 10, 10, 16)
    G = nc.SpectralDensity(lam, even_bump(lam, 3.0), params, wl)
    assert np.array_equal(nc.apply_L_spectral(G, 0).values, G.values)
    h = 2e-3
    r = np.arange(0.3, 6.0, h)
    f = nc.inverse_transform(G, r).values
    Lf = -nc.radial_operator_fd(f, h, r, params)
    spec = nc.inverse_transform(nc.apply_L_spectral(G, 1), r[2:-2]).values
    assert np.max(np.abs(Lf - spec)) < 1e-4 * np.max(np.abs(spec))
    n1 = nc.apply_L_spectral(G, 1).norm_sq()
    assert n1 > G.norm_sq()


def test_apply_L_single_peak_scaling():
    params = P(1.0, 0.0)
    lam, wl = nc.panel_gauss_legendre(3.9, 4.1, 4, 16)
    g = np.exp(-((lam - 4) / 1e-3) ** 2)
    G = nc.SpectralDensity(lam, g, params, wl)
    for m in (1, 2, 3):
        ratio = np.sqrt(nc.apply_L_spectral(G, m).norm_sq() / G.norm_sq())
        assert abs(ratio / (16 + params.varrho**2) ** m - 1) < 1e-6


def test_kostant():
    params = P(1.5, 0.5)
    assert np.all(nc.kostant_Q(nc.KTypeIndex(0, 0), np.array([0.1, 3.0]), params) == 1)
    d = nc.KTypeIndex(2, 0)
    b1, b2 = 1.5, 1.0
    expected = np.sqrt((b1**2 + 9 / 4) * (b2**2 + 9 / 4))
    assert abs(nc.kostant_modulus(d, 3.0, params) - expected) < 1e-12
    assert abs(abs(nc.kostant_Q(d, 3.0, params)) - expected) < 1e-12
    assert abs(nc.kostant_modulus(d, 1e4, params) / (1e4 / 2) ** 2 - 1) < 1e-3


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 4.0), st.floats(-1.0, 1.0), st.floats(0.01, 500.0),
       st.sampled_from([(0, 0), (2, 0), (1, 1), (3, 1), (4, 2), (2, 2)]))
def test_kostant_modulus_property(a, bfrac, lam, pq):
    params = P(a, bfrac * (a + 1))
    d = nc.KTypeIndex(*pq)
    q = abs(nc.kostant_Q(d, lam, params))
    assert abs(nc.kostant_modulus(d, lam, params) - q) < 1e-12 * max(1, q)


def test_spherical_fn_delta():
    params = P(1.5, 0.5)
    r = np.linspace(0, 2, 5)
    trivial = nc.spherical_fn_delta(2.0, nc.KTypeIndex(0, 0), params, r)
    assert np.allclose(trivial, nc.jacobi_function(2.0, params, r), rtol=0, atol=1e-15)
    d = nc.KTypeIndex(2, 0)
    r0 = 1e-4
    lead = nc.kostant_Q(d, 2.0, params) / (2.5 * 3.5)
    val = nc.spherical_fn_delta(2.0, d, params, r0) / r0**2
    assert abs(val / lead - 1) < 1e-3


def test_spherical_fn_delta_shifted_factor_is_eigenfunction():
    params, d, lam = P(0.5, 0.5), nc.KTypeIndex(2, 0), 2.0
    shifted = params.shifted(d.p, d.q)
    h = 1e-3
    r = np.arange(0.5, 1.5, h)
    phi_d = nc.spherical_fn_delta(lam, d, params, r)
    pref = nc.kostant_Q(d, lam, params) / 2.5 * np.sinh(r) ** 2
    shifted_part = (phi_d / pref).real
    res = nc.radial_operator_fd(shifted_part, h, r, shifted) + (lam**2 + shifted.varrho**2) * shifted_part[2:-2]
    assert np.max(np.abs(res)) < 1e-6


def test_c_ratio_statistic():
    params = P(1.5, 0.5)
    lam = np.logspace(-2, 3, 200)
    assert np.allclose(nc.c_ratio_stat(lam, params, nc.KTypeIndex(0, 0)), 1.0, rtol=1e-12)
    d = nc.KTypeIndex(2, 0)
    R = nc.c_ratio_stat(lam, params, d)
    assert np.all(np.isfinite(R)) and np.isfinite(nc.c_ratio_sup(params, d))
    # the ratio is the constant 4^{-(p+q)} / ((alpha+1)_p)^2
    assert np.allclose(R, 1 / (16 * (2.5 * 3.5) ** 2), rtol=1e-11)
    assert np.allclose(nc.c_ratio_stat(lam, params, d, normalized=True), 1.0, rtol=1e-11)
    with pytest.raises(DomainError):
        nc.c_ratio_stat(0.0, params, d)


def test_c_ratio_against_mpmath():
    a, b, lam = 1.5, 0.5, 7.3

    def c(al, be):
        rho, il = al + be + 1, 1j * lam
        return (mpmath.power(2, rho - il) * mpmath.gamma(al + 1) * mpmath.gamma(il)
                / (mpmath.gamma((il + rho) / 2) * mpmath.gamma((il + al - be + 1) / 2)))

    q = mpmath.rf((a + b + 1 + 1j * lam) / 2, 1) * mpmath.rf((a - b + 1 + 1j * lam) / 2, 1)
    ref = float(abs(c(a, b)) ** 2 / abs(c(a + 2, b)) ** 2 / abs(q) ** 2)
    got = nc.c_ratio_stat(lam, P(a, b), nc.KTypeIndex(2, 0))
    assert abs(got / ref - 1) < 1e-11


def test_step2_inequality():
    params = P(0.5, 0.5)
    lam, wl = nc.panel_gauss_legendre(0, 10, 10, 16)
    zero = nc.SpectralDensity(lam, 0 * lam, params, wl)
    res = nc.step2_inequality_check(zero, nc.KTypeIndex(2, 0), 1)
    assert res.lhs == res.rhs == res.ratio == 0.0
    G = nc.SpectralDensity(lam, even_bump(lam), params, wl)
    same = nc.step2_inequality_check(G, nc.KTypeIndex(0, 0), 2, c1=1.0)
    assert abs(same.lhs - same.rhs) < 1e-12 * same.rhs
    rng = np.random.default_rng(5)
    for _ in range(10):
        g = np.cos(np.outer(lam, np.arange(6)) * np.pi / 10) @ rng.uniform(-1, 1, 6)
        G = nc.SpectralDensity(lam, g, params, wl)
        for m in (1, 2, 3):
            assert nc.step2_inequality_check(G, nc.KTypeIndex(2, 0), m).ratio <= 1 + 1e-10


def test_jacobi_function_taylor_against_mpmath():
    a, b, lam = 1.0, 0.5, 2.5
    rho = a + b + 1
    mpmath.mp.dps = 30
    phi = lambda r: mpmath.hyp2f1((rho + 1j * lam) / 2, (rho - 1j * lam) / 2, a + 1, -mpmath.sinh(r) ** 2).real
    ref = [float(t) for t in mpmath.taylor(phi, 0, 6)]
    mpmath.mp.dps = 15
    got = nc.jacobi_function_taylor([lam], P(a, b), 6)[0]
    assert np.max(np.abs(got - ref)) < 1e-12
