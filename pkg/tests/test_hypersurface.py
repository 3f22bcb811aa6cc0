import numpy as np
import pytest

from gkflat import constructions as C
from gkflat import hypersurface as Hy
from gkflat import lorentz5 as L
from gkflat.errors import (IllConditionedFit, NotNullityType, StencilOutOfDomain,
                           VanishingSecondFundamentalForm)
from gkflat.verify import analytic_v, profile_coefficients


@pytest.fixture(scope="module")
def helicoid_suspension():
    return C.suspension(C.catalog_generator("euclidean_helicoid"))


@pytest.fixture(scope="module")
def equidistant_suspension():
    return C.suspension(C.catalog_generator("hyperbolic_helicoid"))


def test_totally_geodesic_slice():
    f = C.totally_geodesic_h3()
    r = Hy.hyper_frame(f, np.array([0.1, 0.2, -0.3]))
    assert np.max(np.abs(r.A)) <= 1e-12
    np.testing.assert_allclose(r.k, 0.0, atol=1e-12)
    with pytest.raises(VanishingSecondFundamentalForm):
        Hy.nullity_frame(f, np.array([0.1, 0.2, -0.3]))


def test_report_invariants(equidistant_suspension):
    f = equidistant_suspension
    for r in Hy.analyse_grid(f, C.box_grid(f.domain, (3, 3, 3), 1)):
        assert abs(r.GK - np.prod(r.k)) <= 1e-9
        assert abs(r.tau + 6 + np.sum(r.k ** 2)) <= 1e-9
        assert L.minkowski_inner(r.xi, r.xi) == pytest.approx(1.0, abs=1e-12)
        assert r.k[0] >= r.k[1] >= r.k[2]
        assert L.det5([r.e1, r.e2, r.e3, r.xi, r.position]) > 0


def test_helicoid_suspension_curvatures(helicoid_suspension):
    f = helicoid_suspension
    g = f.generator
    for p in C.box_grid(f.domain, (4, 4, 4), 1):
        r = Hy.hyper_frame(f, p)
        k = g.principal_curvature(p[:2])[0] / C.warp(g.alpha, p[2])
        assert abs(r.k[1]) <= 1e-8
        assert abs(r.k[0] - k) <= 1e-8 and abs(r.k[2] + k) <= 1e-8


def test_equidistant_chart_is_umbilic():
    q3 = C.equidistant_chart(0.75)
    f = q3.as_hypersurface()
    for p in C.box_grid(f.domain, (3, 3, 3), 1):
        r = Hy.hyper_frame(f, p)
        s = np.sign(L.minkowski_inner(r.xi, np.array(q3.eta(list(r.position)))))
        np.testing.assert_allclose(s * r.A, q3.alpha * np.eye(3), atol=1e-9)
    assert q3.alpha == pytest.approx(0.6)


def test_geodesic_sphere_not_nullity_type():
    f = C.geodesic_sphere_hypersurface(1.0)
    p = np.array([0.7, 0.3, 0.2])
    r = Hy.hyper_frame(f, p)
    np.testing.assert_allclose(np.abs(r.k), 1 / np.tanh(1.0), rtol=1e-10)
    with pytest.raises(NotNullityType):
        Hy.nullity_frame(f, p)


def test_nullity_frame_gauge(helicoid_suspension):
    f = helicoid_suspension
    r = Hy.nullity_frame(f, np.array([0.0, 1.0, 0.0]))
    assert r.lam == pytest.approx(0.5, abs=1e-12)
    assert r.coords[2, 1] > 0          # e2 along +d/dt
    assert np.linalg.det(r.coords) > 0


def test_uv_values(equidistant_suspension, helicoid_suspension):
    f = equidistant_suspension
    r = Hy.uv_fields(f, np.array([0.8, 0.1, 0.0]))
    assert r.v == pytest.approx(0.6, abs=2e-4)
    assert abs(r.u) <= 1e-4
    for t in (-1.5, 0.3, 1.9):
        r = Hy.uv_fields(helicoid_suspension, np.array([0.3, -1.2, t]))
        assert r.v == pytest.approx(1.0, abs=2e-4)
        assert abs(r.u) <= 1e-4


def test_connection_table_properties(equidistant_suspension):
    # omega_23(e1) = u and omega_12(e1) = v, checked as properties
    f = equidistant_suspension
    p = np.array([0.9, -0.2, 0.4])
    r = Hy.uv_fields(f, p)
    c = Hy.nullity_frame(f, p)
    assert Hy.connection_form(f, p, 1, 2, 0, center=c) == pytest.approx(r.u, abs=1e-5)
    assert Hy.connection_form(f, p, 0, 1, 0, center=c) == pytest.approx(r.v, abs=2e-4)
    assert Hy.connection_form(f, p, 1, 2, 2, center=c) == pytest.approx(-r.v, abs=2e-4)


def test_structure_identities(equidistant_suspension, helicoid_suspension):
    for f in (equidistant_suspension, helicoid_suspension):
        for p in C.box_grid(f.domain, (2, 2, 3), 1):
            assert max(Hy.structure_residuals(f, p)) <= 5e-4


def test_stencil_outside_domain(helicoid_suspension):
    with pytest.raises(StencilOutOfDomain):
        Hy.uv_fields(helicoid_suspension, np.array([0.0, 1.0, 2.0]))


def test_nullity_lines_are_geodesics(equidistant_suspension, helicoid_suspension):
    ts = np.linspace(-2, 2, 9)
    f = equidistant_suspension
    assert Hy.nullity_geodesic_residual(f, [0.7, 0.2], ts) <= 1e-8
    assert Hy.nullity_geodesic_residual(f, [0.7, 0.2], ts, method="fd") <= 1e-5
    # u-lines of the helicoid are not geodesics
    us = np.linspace(-0.9, 0.9, 9)
    assert Hy.nullity_geodesic_residual(helicoid_suspension, [1.0, 0.3], us, axis=0) > 0.01


@pytest.mark.parametrize("name", ["hyperbolic_helicoid", "euclidean_helicoid", "enneper"])
def test_profile_fit(name):
    g = C.catalog_generator(name)
    f = C.suspension(g)
    x = np.array([0.5 * (lo + hi) for lo, hi in g.domain]) + 0.1
    fit = Hy.lambda_profile_fit(f, x, np.linspace(-2, 2, 41))
    k = g.principal_curvature(x)[0]
    want = profile_coefficients(g.alpha, k)
    assert fit.residual <= 1e-8
    np.testing.assert_allclose([fit.a, fit.b, fit.d], want, rtol=1e-6, atol=1e-9 * max(want))
    ts = np.linspace(-2, 2, 5)
    np.testing.assert_allclose(Hy.profile_v(fit, ts), analytic_v(g.alpha, ts), atol=1e-6)


def test_profile_fit_constant_lambda():
    fit = Hy.fit_inverse_square_profile(np.linspace(0, 1, 6), np.full(6, 2.0))
    assert abs(fit.a) <= 1e-12 and abs(fit.d) <= 1e-12
    assert fit.b == pytest.approx(2 / 4.0)


def test_profile_fit_rejects_short_ranges():
    with pytest.raises(IllConditionedFit):
        Hy.fit_inverse_square_profile(np.linspace(0, 0.4, 10), np.ones(10))
    with pytest.raises(IllConditionedFit):
        Hy.fit_inverse_square_profile(np.linspace(0, 1, 4), np.ones(4))
