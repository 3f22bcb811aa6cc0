import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gkflat.eigen3 import eigh_sym3, eigvals_sym3

sym = arrays(np.float64, (3, 3), elements=st.floats(-5, 5, allow_nan=False)).map(lambda a: 0.5 * (a + a.T))


def test_diagonal():
    np.testing.assert_array_equal(eigvals_sym3(np.diag([1.0, -2.0, 3.0])), [3.0, 1.0, -2.0])


def test_null_type_spectrum():
    lam = 0.7
    R, _ = np.linalg.qr(np.random.default_rng(3).normal(size=(3, 3)))
    a = R @ np.diag([lam, 0.0, -lam]) @ R.T
    k, V = eigh_sym3(a)
    np.testing.assert_allclose(k, [lam, 0.0, -lam], atol=1e-14)
    np.testing.assert_allclose(a @ V, V * k, atol=1e-13)
    assert np.linalg.det(V) > 0


@given(sym)
def test_matches_lapack(a):
    k = eigvals_sym3(a)
    ref = np.linalg.eigvalsh(a)[::-1]
    np.testing.assert_allclose(k, ref, atol=1e-9 * (1 + np.abs(a).max()))
    assert k[0] >= k[1] >= k[2] or np.ptp(k) <= 1e-9 * (1 + np.abs(a).max())


@given(sym)
def test_eigenvectors_orthonormal(a):
    k, V = eigh_sym3(a)
    np.testing.assert_allclose(V.T @ V, np.eye(3), atol=1e-9)
    # residual relative to the spectral gap; exact for well-separated spectra
    scale = 1 + np.abs(a).max()
    if min(k[0] - k[1], k[1] - k[2]) > 1e-3 * scale:
        np.testing.assert_allclose(a @ V, V * k, atol=1e-8 * scale)
