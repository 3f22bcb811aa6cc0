import dataclasses

import numpy as np
import pytest

from gkflat import constructions as C
from gkflat import hypersurface as Hy
from gkflat import lorentz5 as L
from gkflat import surface as S
from gkflat.errors import (HyperplaneViolation, NullCaseRequiresEta, TotallyGeodesicPointInDomain,
                           UnknownName)

NAMES = sorted(C.CATALOG)


@pytest.fixture(scope="module")
def catalog():
    return {name: C.catalog_generator(name) for name in NAMES}


def _random_points(domain, n, seed=0, margin=0.05):
    rng = np.random.default_rng(seed)
    lo = np.array([a + margin * (b - a) for a, b in domain])
    hi = np.array([b - margin * (b - a) for a, b in domain])
    return lo + (hi - lo) * rng.random((n, len(domain)))


# -- umbilical hypersurfaces ---------------------------------------------------------------

def test_horosphere_chart_examples():
    q = C.horosphere_chart()
    np.testing.assert_allclose(q.embed([0.0, 0.0, 0.0]), [1, 0, 0, 0, 0])
    np.testing.assert_allclose(q.embed([1.0, 0.0, 0.0]), [1.5, 0.5, 1, 0, 0])
    assert q.alpha == 1.0 and q.sectional_curvature == 0.0


def test_horosphere_chart_is_flat_isometry():
    q = C.horosphere_chart()
    pts = _random_points(q.domain, 100, seed=1)
    J = q.chart.jet(pts).grad
    G = np.einsum("nki,kl,nlj->nij", J, L.ETA, J)
    assert np.max(np.abs(G - np.eye(3))) <= 1e-12


def test_equidistant_chart_examples():
    q = C.equidistant_chart(0.75)
    np.testing.assert_allclose(q.chart.evaluate(np.zeros(3)), [1.25, 0, 0, 0, 0.75], atol=1e-15)
    assert q.alpha == pytest.approx(0.6, abs=1e-15)
    assert q.sectional_curvature == pytest.approx(-0.64, abs=1e-15)
    for bad in (0.0, -1.0):
        with pytest.raises(ValueError):
            C.equidistant_chart(bad)


def test_geodesic_sphere_alpha():
    q = C.geodesic_sphere_chart(1.0)
    assert q.alpha == pytest.approx(1.3130352854993312, abs=1e-12)
    assert q.sectional_curvature > 0
    with pytest.raises(ValueError):
        C.geodesic_sphere_chart(0.0)


@pytest.mark.parametrize("q", [C.horosphere_chart(), C.equidistant_chart(0.75), C.geodesic_sphere_chart(1.0)],
                         ids=["horosphere", "equidistant", "geodesic_sphere"])
def test_q3_membership_and_normal(q):
    pts = _random_points(q.domain, 50, seed=2)
    mj = q.chart.jet(pts)
    x = mj.value
    assert np.max(np.abs(L.minkowski_inner(x, x) + 1.0)) <= 1e-12
    assert np.max(np.abs(L.minkowski_inner(x, q.axis) + q.alpha)) <= 1e-12
    eta = np.array(q.eta(list(x.T))).T
    assert np.max(np.abs(L.minkowski_inner(eta, eta) - 1.0)) <= 1e-12
    assert np.max(np.abs(L.minkowski_inner(eta, x))) <= 1e-12
    for i in range(3):
        assert np.max(np.abs(L.minkowski_inner(eta, mj.grad[:, :, i]))) <= 1e-11


# -- generators ----------------------------------------------------------------------------------

def test_catalog_errors():
    with pytest.raises(UnknownName):
        C.catalog_generator("costa")
    with pytest.raises(ValueError):
        C.catalog_generator("enneper", c=2.0)


def test_minimality_gate_rejects_round_sphere():
    with pytest.raises(ValueError, match="not minimal"):
        C.validate_generator(C.round_sphere_generator())


def test_totally_geodesic_points_rejected():
    wide = dataclasses.replace(C.enneper(), domain=((-10.0, 10.0), (-10.0, 10.0)))
    with pytest.raises(TotallyGeodesicPointInDomain):
        C.validate_generator(wide)


@pytest.mark.parametrize("name", NAMES)
def test_generator_validation_sweep(catalog, name):
    sweep = C.validate_generator(catalog[name], n=9)
    assert sweep.membership <= 1e-12
    assert sweep.mean_curvature <= 1e-9
    assert sweep.normal_defect <= 1e-12
    assert sweep.min_curvature >= 1e-3


@pytest.mark.parametrize("name", NAMES)
def test_principal_curvature_closed_form(catalog, name):
    gen = catalog[name]
    pts = _random_points(gen.domain, 40, seed=3)
    numeric = C.principal_curvature_values(gen, pts)
    closed = gen.principal_curvature.evaluate(pts)[:, 0]
    np.testing.assert_allclose(numeric, closed, rtol=1e-9, atol=1e-12)


@pytest.mark.parametrize("name", NAMES)
def test_gauss_equation_in_q3(catalog, name):
    # minimal in Q^3 with curvature K_Q: K_h = K_Q - k^2
    gen = catalog[name]
    for p in _random_points(gen.domain, 10, seed=4):
        k = gen.principal_curvature.evaluate(p)[0]
        assert C.intrinsic_curvature(gen, p) == pytest.approx(gen.q3.sectional_curvature - k * k, abs=1e-9)


def test_umbilical_shape_operator_is_scalar(catalog):
    for gen in catalog.values():
        p = _random_points(gen.domain, 1, seed=5)[0]
        A = C.umbilical_shape_operator(gen, p)
        assert np.max(np.abs(A - A[0, 0] * np.eye(2))) <= 1e-10
        assert abs(A[0, 0]) == pytest.approx(gen.alpha, abs=1e-10)


# -- suspension ----------------------------------------------------------------------------------

def test_suspension_restricts_to_generator(catalog):
    for gen in catalog.values():
        s = C.suspension(gen)
        pts = _random_points(gen.domain, 20, seed=6)
        F = s.chart.evaluate(np.column_stack([pts, np.zeros(len(pts))]))
        np.testing.assert_allclose(F, gen.chart.evaluate(pts), atol=1e-14)


def test_suspension_horizontal_differential_is_scaled(catalog):
    for gen in catalog.values():
        s = C.suspension(gen, (-0.5, 0.5))
        pts = _random_points(s.domain, 20, seed=7)
        dF = s.chart.jet(pts).grad[:, :, :2]
        dh = gen.chart.jet(pts[:, :2]).grad
        w = C.warp(gen.alpha, pts[:, 2])
        assert np.max(np.abs(dF - w[:, None, None] * dh)) <= 1e-12


def test_suspension_principal_curvature_example():
    s = C.suspension(C.catalog_generator("euclidean_helicoid"))
    r = Hy.hyper_frame(s, np.array([0.3, 1.0, np.log(2.0)]))
    np.testing.assert_allclose(r.k, [1.0, 0.0, -1.0], atol=1e-9)


@pytest.mark.parametrize("r", [0.7, 1.0, 1.5])
def test_singular_time_geodesic_sphere(r):
    s = C.suspension(C.catalog_generator("clifford_torus", r=r))
    assert C.singular_time(s) == pytest.approx(r, abs=1e-9)
    assert not C.regularity_predicate(s, np.zeros(2), r)
    assert C.regularity_predicate(s, np.zeros(2), 0.0)


def test_no_singular_time_for_other_kinds(catalog):
    for name in ("euclidean_helicoid", "hyperbolic_helicoid"):
        s = C.suspension(catalog[name])
        assert C.singular_time(s) is None
        assert all(C.regularity_predicate(s, None, t) for t in np.linspace(-2, 2, 9))


# -- associate -----------------------------------------------------------------------------------

@pytest.mark.parametrize("name", NAMES)
def test_associate_laws(catalog, name):
    gen = catalog[name]
    g = C.associate(gen)
    for p in _random_points(gen.domain, 8, seed=8):
        r = S.analyse(g, p)
        inv = np.linalg.inv(C.generator_shape_operator(gen, p)[1])
        assert np.max(np.abs(r.coordinate_operator(r.A3) + gen.alpha * inv)) <= 1e-7
        assert np.max(np.abs(r.coordinate_operator(r.A4) - inv)) <= 1e-7
        assert r.mean_curvature_norm <= 1e-8
        assert abs(r.Kperp) <= 1e-8
        kq = gen.q3.sectional_curvature
        kh = C.intrinsic_curvature(gen, p)
        assert r.K == pytest.approx(1.0 - kq / (kq - kh), abs=1e-6)


def test_horosphere_associate_is_superminimal(catalog):
    g = C.associate(catalog["enneper"])
    for p in _random_points(g.domain, 10, seed=9):
        r = S.analyse(g, p)
        assert r.K == pytest.approx(1.0, abs=1e-6)
        assert r.superminimal


@pytest.mark.parametrize("name", NAMES)
def test_round_trip_reconstruction(catalog, name):
    gen = catalog[name]
    rec = C.reconstruct_generator(C.associate(gen), gen.hyperplane_normal())
    assert rec.q3.kind == gen.q3.kind
    assert rec.alpha == pytest.approx(gen.alpha, abs=1e-12)
    pts = _random_points(gen.domain, 50, seed=10)
    assert np.max(np.abs(rec.chart.evaluate(pts) - gen.chart.evaluate(pts))) <= 1e-8
    for p in pts[:10]:
        A = C.umbilical_shape_operator(rec, p)
        assert np.max(np.abs(A - rec.alpha * np.eye(2))) <= 1e-7


def test_null_reconstruction_from_horosphere(catalog):
    gen = catalog["euclidean_helicoid"]
    w = gen.hyperplane_normal()
    assert L.minkowski_inner(w, w) == 0.0
    rec = C.reconstruct_generator(C.associate(gen), w)
    assert rec.q3.kind == C.HOROSPHERE and rec.alpha == 1.0
    pts = _random_points(gen.domain, 20, seed=11)
    assert np.max(np.abs(rec.chart.evaluate(pts) - gen.chart.evaluate(pts))) <= 1e-8


def test_rescaled_w_gives_parallel_generator_with_same_associate(catalog):
    gen = catalog["hyperbolic_helicoid"]
    w = 0.5 * gen.hyperplane_normal()
    rec = C.reconstruct_generator(C.associate(gen), w)
    pts = _random_points(gen.domain, 20, seed=12)
    h = rec.chart.evaluate(pts)
    assert np.max(np.abs(L.minkowski_inner(h, h) + 1.0)) <= 1e-10
    assert rec.alpha == pytest.approx(np.sqrt(1.0 - L.minkowski_inner(w, w)), abs=1e-12)
    # the associate of the recovered surface is the original one
    np.testing.assert_allclose(C.associate(rec).chart.evaluate(pts), gen.normal.evaluate(pts), atol=1e-12)


def test_reconstruction_errors(catalog):
    gen = catalog["euclidean_helicoid"]
    g = C.associate(gen)
    with pytest.raises(NullCaseRequiresEta):
        C.reconstruct_generator(dataclasses.replace(g, normal_frame_hint=None), gen.hyperplane_normal())
    with pytest.raises(HyperplaneViolation):
        C.reconstruct_generator(g, np.array([0.0, 0.0, 1.0, 0.0, 0.0]))
    with pytest.raises(ValueError):
        C.reconstruct_generator(C.associate(catalog["hyperbolic_helicoid"]),
                                2.0 * catalog["hyperbolic_helicoid"].hyperplane_normal())


# -- polar map -----------------------------------------------------------------------------------

@pytest.mark.parametrize("name", NAMES)
def test_polar_map_is_suspension(catalog, name):
    gen = catalog[name]
    s = C.suspension(gen, (-0.8, 0.8))
    psi = C.polar_map(C.associate(gen), s.t_domain)
    pts = _random_points(s.domain, 30, seed=13)
    assert np.max(np.abs(psi.chart.evaluate(pts) - s.chart.evaluate(pts))) <= 1e-12


def test_polar_curvature_law(catalog):
    gen = catalog["hyperbolic_helicoid"]
    g = C.associate(gen)
    psi = C.polar_map(g)
    for p in _random_points(psi.domain, 20, seed=14):
        sr = S.analyse(g, p[:2])
        assert C.polar_regular(sr, p[2])
        det = np.linalg.det(sr.shape_operator(C.polar_direction(sr, p[2])))
        k = 1.0 / np.sqrt(-det)
        np.testing.assert_allclose(Hy.hyper_frame(psi, p).k, [k, 0.0, -k], atol=1e-7)


def test_polar_singular_on_clifford_torus(catalog):
    g = C.associate(catalog["clifford_torus"])
    sr = S.analyse(g, np.array([0.2, -0.4]))
    assert not C.polar_regular(sr, 1.0)
    assert C.polar_regular(sr, 0.0)
    assert abs(np.linalg.det(sr.shape_operator(C.polar_direction(sr, 1.0)))) <= 1e-12


def test_polar_map_requires_frame():
    with pytest.raises(ValueError):
        C.polar_map(C.totally_geodesic_sphere())


def test_clifford_torus_curvatures_scale_with_sphere_radius():
    # +-1 in the unit 3-sphere; the geodesic sphere of radius r is a round sphere of radius sinh r
    for r in (0.5, 1.0, 2.0):
        gen = C.clifford_torus(r)
        _, A = C.generator_shape_operator(gen, np.array([0.3, -0.2]))
        np.testing.assert_allclose(np.sort(np.linalg.eigvals(A).real) * np.sinh(r), [-1.0, 1.0], atol=1e-12)
