"""Closed-form eigen-decomposition of real symmetric 3x3 matrices.

The trigonometric solution of the characteristic cubic locates the spectrum;
it loses about half the digits on nearly double roots, so the decomposition
deflates: the eigenvector of the best-isolated eigenvalue comes from a cross
product of rows of ``a - k I``, and the remaining 2x2 block on its orthogonal
complement is diagonalized by a single rotation. No iteration is involved.
"""

import math

import numpy as np


def _trig_eigvals(a):
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    q = np.trace(a) / 3.0
    p2 = (a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2 + 2.0 * p1
    if p2 == 0.0:
        return np.array([q, q, q])
    p = math.sqrt(p2 / 6.0)
    b = (a - q * np.eye(3)) / p
    r = np.linalg.det(b) / 2.0
    # |r| <= 1 in exact arithmetic
    phi = math.acos(min(1.0, max(-1.0, r))) / 3.0
    k1 = q + 2.0 * p * math.cos(phi)
    k3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    return np.sort([k1, 3.0 * q - k1 - k3, k3])[::-1]


def _kernel_vector(m):
    """Unit vector spanning the kernel of a rank-2 symmetric 3x3 matrix."""
    best, best_norm = None, -1.0
    for i, j in ((0, 1), (0, 2), (1, 2)):
        c = np.cross(m[i], m[j])
        n = float(np.dot(c, c))
        if n > best_norm:
            best, best_norm = c, n
    if best_norm <= 0.0:
        return None
    return best / math.sqrt(best_norm)


def _complement_basis(v):
    e = np.zeros(3)
    e[int(np.argmin(np.abs(v)))] = 1.0
    u1 = np.cross(v, e)
    u1 /= np.linalg.norm(u1)
    return u1, np.cross(v, u1)


def _right_handed(V):
    if np.linalg.det(V) < 0:
        V[:, 1] = -V[:, 1]
    return V


def eigh_sym3(a):
    """Eigenvalues (descending) and orthonormal eigenvectors (columns, det +1)."""
    a = np.asarray(a, dtype=float)
    a = 0.5 * (a + a.T)
    if a[0, 1] == 0.0 and a[0, 2] == 0.0 and a[1, 2] == 0.0:
        order = np.argsort(-np.diag(a), kind="stable")
        return np.diag(a)[order].copy(), _right_handed(np.eye(3)[:, order])
    # unit scale keeps the cubic's determinant clear of under/overflow
    scale = float(np.max(np.abs(a)))
    vals, V = _eigh_unit(a / scale)
    return scale * vals, V


def _eigh_unit(a):
    k = _trig_eigvals(a)
    j = 0 if k[0] - k[1] >= k[1] - k[2] else 2
    v = _kernel_vector(a - k[j] * np.eye(3))
    if v is None:
        w, V = np.linalg.eigh(a)
        return w[::-1], _right_handed(V[:, ::-1].copy())
    u1, u2 = _complement_basis(v)
    b11, b22, b12 = u1 @ a @ u1, u2 @ a @ u2, u1 @ a @ u2
    m, h = 0.5 * (b11 + b22), 0.5 * (b11 - b22)
    d = math.hypot(h, b12)
    theta = 0.5 * math.atan2(b12, h)
    c, s = math.cos(theta), math.sin(theta)
    pairs = [(float(v @ a @ v), v), (m + d, c * u1 + s * u2), (m - d, -s * u1 + c * u2)]
    pairs.sort(key=lambda t: -t[0])
    vals = np.array([t[0] for t in pairs])
    return vals, _right_handed(np.column_stack([t[1] for t in pairs]))


def eigvals_sym3(a):
    """Eigenvalues of the symmetric matrix ``a``, sorted descending."""
    return eigh_sym3(a)[0]
