import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gkflat import lorentz5 as L
from gkflat.errors import DegenerateSpan

finite = st.floats(-10, 10, allow_nan=False)
vec5 = arrays(np.float64, 5, elements=finite)


@pytest.mark.parametrize("a, expected", [
    ((1, 0, 0, 0, 0), -1.0),
    ((0, 1, 0, 0, 0), 1.0),
    ((1, 1, 0, 0, 0), 0.0),
])
def test_inner_on_axes(a, expected):
    assert L.minkowski_inner(np.array(a, float), np.array(a, float)) == expected


@pytest.mark.parametrize("a, character", [
    ((0, 0, 0, 0, 1), L.SPACELIKE),
    ((2, 1, 0, 0, 0), L.TIMELIKE),
    ((1, 1, 0, 0, 0), L.NULL),
])
def test_causal_character(a, character):
    assert L.causal_character(np.array(a, float), 1e-9) == character


@given(vec5, vec5)
def test_inner_symmetric(a, b):
    assert L.minkowski_inner(a, b) == L.minkowski_inner(b, a)


@given(vec5, vec5, vec5, finite, finite)
def test_inner_bilinear(a, b, c, s, t):
    lhs = L.minkowski_inner(s * a + t * b, c)
    rhs = s * L.minkowski_inner(a, c) + t * L.minkowski_inner(b, c)
    scale = 1 + (abs(s) * np.abs(a).max() + abs(t) * np.abs(b).max()) * np.abs(c).max()
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_orthonormalize_examples():
    fr = L.orthonormalize_indefinite([np.array([0, 1, 0, 0, 0.]), np.array([0, 1, 1, 0, 0.])])
    assert fr.tags == (1, 1)
    np.testing.assert_allclose(fr.vectors, [[0, 1, 0, 0, 0], [0, 0, 1, 0, 0]], atol=1e-15)
    fr = L.orthonormalize_indefinite([np.array([2, 1, 0, 0, 0.])])
    assert fr.tags == (-1,)
    np.testing.assert_allclose(fr[0], np.array([2, 1, 0, 0, 0]) / np.sqrt(3))


def test_orthonormalize_random_frames():
    rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(1000):
        vs = rng.normal(size=(rng.integers(1, 6), 5))
        fr = L.orthonormalize_indefinite(list(vs))
        worst = max(worst, fr.gram_defect())
        # same span: every input is reproduced by the frame
        for v in vs:
            assert np.linalg.norm(fr.project_out(v)) <= 1e-8 * (1 + np.linalg.norm(v))
    assert worst <= 1e-10


def test_degenerate_span():
    with pytest.raises(DegenerateSpan):
        L.orthonormalize_indefinite([np.array([1, 1, 0, 0, 0.]), np.array([0, 0, 1, 0, 0.])])
    with pytest.raises(DegenerateSpan):
        L.normal_complement([np.array([1, 1, 0, 0, 0.])])
    with pytest.raises(DegenerateSpan):
        L.orthonormalize_indefinite([np.array([0, 1, 0, 0, 0.]), np.array([0, 2, 0, 0, 0.])])


def test_complement_of_spatial_axes():
    comp = L.normal_complement(list(np.eye(5)[1:]))
    assert len(comp) == 1
    np.testing.assert_allclose(np.abs(comp[0]), [1, 0, 0, 0, 0], atol=1e-15)


def test_complement_of_totally_geodesic_sphere_point():
    g = np.array([0, 1, 0, 0, 0.])
    gu = np.array([0, 0, 0, 1, 0.])
    gv = np.array([0, 0, 1, 0, 0.])
    fr = L.normal_complement_frame([g, gu, gv])
    assert sorted(fr.tags) == [-1, 1]
    assert fr.gram_defect() <= 1e-12


@settings(max_examples=200)
@given(arrays(np.float64, (3, 5), elements=st.floats(-3, 3, allow_nan=False)))
def test_complement_orthogonal_to_span(vs):
    try:
        comp = L.normal_complement(list(vs))
    except DegenerateSpan:
        return
    scale = 1 + np.abs(vs).max() ** 2
    for c in comp:
        for v in vs:
            assert abs(L.minkowski_inner(c, v)) <= 1e-10 * scale


def test_quadric_membership():
    x = np.array([np.cosh(2.0), np.sinh(2.0), 0, 0, 0])
    assert L.on_hyperbolic_space(x)
    assert not L.on_hyperbolic_space(-x)
    assert L.on_de_sitter(np.array([np.sinh(1.0), np.cosh(1.0), 0, 0, 0]))


def test_det5_orientation():
    assert L.det5(list(np.eye(5))) == pytest.approx(1.0)
