"""Pointwise geometry of hypersurfaces of the hyperbolic space H^4.

Besides the shape operator and principal curvatures this module computes,
for hypersurfaces whose principal curvatures are ``lambda, 0, -lambda``, the
principal frame ``e1, e2, e3`` (``e2`` spanning the nullity) and the two frame
functions

    u = <nabla_{e3} e1, e2>,        v = e2(log lambda),

together with the first-order identities they satisfy along the nullity.
Derivatives of frame data are central differences taken in arclength along
the frame directions, with signs aligned to the frame at the centre point.
"""

from dataclasses import dataclass, replace
from typing import NamedTuple, Optional

import numpy as np

from . import lorentz5 as L
from .eigen3 import eigh_sym3
from .errors import (DegenerateNormal, DegenerateSpan, GaugeAlignmentFailure, IllConditionedFit,
                     NotImmersed, NotNullityType, StencilOutOfDomain,
                     VanishingSecondFundamentalForm)
from .jet import Expr

FIELD_STEP = 1e-3
NULLITY_TOL = 1e-6


@dataclass(frozen=True)
class HypersurfaceImmersion:
    name: str
    chart: Expr
    domain: tuple
    nullity_axis: Optional[int] = None


@dataclass
class HyperReport:
    point: np.ndarray
    metric: np.ndarray
    xi: np.ndarray
    A: np.ndarray
    k: np.ndarray
    GK: float
    tau: float
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    # columns: parameter-space coordinates of e1, e2, e3
    coords: np.ndarray
    position: np.ndarray
    lam: Optional[float] = None
    u: Optional[float] = None
    v: Optional[float] = None

    @property
    def frame(self):
        return (self.e1, self.e2, self.e3)

    def to_dict(self):
        return {
            "point": self.point.tolist(),
            "metric": self.metric.tolist(),
            "frames": {"xi": self.xi.tolist(), "e1": self.e1.tolist(),
                       "e2": self.e2.tolist(), "e3": self.e3.tolist()},
            "shape_operators": {"A": self.A.tolist()},
            "k": self.k.tolist(),
            "GK": self.GK,
            "tau": self.tau,
            "lambda": self.lam,
            "u": self.u,
            "v": self.v,
        }


def hyper_frame(f, p, mj=None):
    """Unit normal, shape operator and principal data of ``f`` at ``p``.

    ``xi`` is oriented so that ``det[df e1, df e2, df e3, xi, f] > 0`` for a
    frame positively oriented in the chart.
    """
    p = np.asarray(p, dtype=float)
    if mj is None:
        mj = f.chart.jet(p)
    x = mj.value
    J = mj.grad                       # (5, 3)
    G = J.T @ L.ETA @ J
    try:
        chol = np.linalg.cholesky(G)
    except np.linalg.LinAlgError as exc:
        raise NotImmersed("induced metric is not positive definite") from exc
    if np.min(np.diag(chol)) <= 1e-7 * max(1.0, float(np.max(np.diag(chol)))):
        raise NotImmersed("differential has rank < 3")
    E = np.linalg.inv(chol).T         # E^T G E = I, upper triangular
    T = J @ E
    try:
        nvecs = L.normal_complement([x, T[:, 0], T[:, 1], T[:, 2]])
    except DegenerateSpan as exc:
        raise DegenerateNormal(str(exc)) from exc
    xi = nvecs[0]
    if L.minkowski_inner(xi, xi) < 0:
        raise DegenerateNormal("normal direction is timelike")
    if L.det5([T[:, 0], T[:, 1], T[:, 2], xi, x]) < 0:
        xi = -xi
    B = np.einsum("kij,k->ij", mj.hess, L.ETA @ xi)
    A = E.T @ B @ E
    A = 0.5 * (A + A.T)
    k, V = eigh_sym3(A)
    C = E @ V
    P = J @ C
    return HyperReport(
        point=p, metric=G, xi=xi, A=A, k=k,
        GK=float(k[0] * k[1] * k[2]), tau=float(-6.0 - np.sum(k * k)),
        e1=P[:, 0], e2=P[:, 1], e3=P[:, 2], coords=C, position=x,
    )


def analyse_grid(f, points):
    points = np.asarray(points, dtype=float)
    mj = f.chart.jet(points)
    return [hyper_frame(f, p, mj.at(n)) for n, p in enumerate(points)]


def _flip(r, i):
    name = "e%d" % (i + 1)
    C = r.coords.copy()
    C[:, i] = -C[:, i]
    return replace(r, coords=C, **{name: -getattr(r, name)})


def nullity_frame(f, p, tol=NULLITY_TOL, ref=None, mj=None):
    """Principal frame for the curvatures ``(lambda, 0, -lambda)``.

    Without ``ref``: ``e2`` points along ``+d/dt`` of the nullity axis (or has
    its largest parameter component positive), ``e1`` likewise, and ``e3``
    completes a positively oriented frame. With ``ref`` (a previous report)
    each direction is sign-aligned with the reference frame.
    """
    r = hyper_frame(f, p, mj)
    k1, k2, _ = r.k
    if np.max(np.abs(r.k)) <= tol:
        raise VanishingSecondFundamentalForm("second fundamental form vanishes")
    if abs(k2) > tol * max(abs(k1), 1.0):
        raise NotNullityType(f"middle principal curvature {k2:.3e} is not zero")
    if k1 <= tol or abs(k1 - abs(k2)) < 10 * tol:
        raise VanishingSecondFundamentalForm(f"largest principal curvature {k1:.3e} is not positive")
    if ref is not None:
        for i, (e, e_ref) in enumerate(zip(r.frame, ref.frame)):
            c = L.minkowski_inner(e, e_ref)
            if abs(c) < 0.5:
                raise GaugeAlignmentFailure(f"e{i + 1} rotated too far across the stencil")
            if c < 0:
                r = _flip(r, i)
    else:
        axis = f.nullity_axis
        c2 = r.coords[:, 1]
        s2 = c2[axis] if axis is not None else c2[np.argmax(np.abs(c2))]
        if s2 < 0:
            r = _flip(r, 1)
        c1 = r.coords[:, 0]
        if c1[np.argmax(np.abs(c1))] < 0:
            r = _flip(r, 0)
        if np.linalg.det(r.coords) < 0:
            r = _flip(r, 2)
    r.lam = float(k1)
    return r


def _check_stencil(f, points):
    if f.domain is None:
        return
    lo = np.array([b[0] for b in f.domain])
    hi = np.array([b[1] for b in f.domain])
    for q in points:
        if np.any(q < lo) or np.any(q > hi):
            raise StencilOutOfDomain(f"stencil point {q} leaves the parameter box")


def connection_form(f, p, i, j, k, h=FIELD_STEP, center=None):
    """``omega_ij(e_k) = <nabla_{e_k} e_i, e_j>`` for the nullity frame (0-based)."""
    c = center if center is not None else nullity_frame(f, p)
    d = h * c.coords[:, k]
    _check_stencil(f, [p + d, p - d])
    ep = nullity_frame(f, p + d, ref=c).frame[i]
    em = nullity_frame(f, p - d, ref=c).frame[i]
    return float(L.minkowski_inner((ep - em) / (2 * h), c.frame[j]))


def uv_fields(f, p, h=FIELD_STEP, ref=None):
    """Report at ``p`` with ``lam``, ``u`` and ``v`` filled in."""
    p = np.asarray(p, dtype=float)
    c = nullity_frame(f, p, ref=ref)
    d2 = h * c.coords[:, 1]
    _check_stencil(f, [p + d2, p - d2])
    lp = nullity_frame(f, p + d2, ref=c).lam
    lm = nullity_frame(f, p - d2, ref=c).lam
    c.v = float((np.log(lp) - np.log(lm)) / (2 * h))
    c.u = connection_form(f, p, 0, 1, 2, h, center=c)
    return c


class StructureResiduals(NamedTuple):
    r1: float
    r2: float


def structure_residuals(f, p, h=FIELD_STEP):
    """Residuals of ``e2(v) = v^2 - u^2 - 1`` and ``e2(u) = 2 u v``."""
    p = np.asarray(p, dtype=float)
    c = uv_fields(f, p, h)
    d2 = h * c.coords[:, 1]
    plus = uv_fields(f, p + d2, h, ref=c)
    minus = uv_fields(f, p - d2, h, ref=c)
    e2v = (plus.v - minus.v) / (2 * h)
    e2u = (plus.u - minus.u) / (2 * h)
    return StructureResiduals(abs(e2v - (c.v ** 2 - c.u ** 2 - 1.0)), abs(e2u - 2.0 * c.u * c.v))


def _curve_points(x, t_samples, axis):
    t = np.asarray(t_samples, dtype=float)
    x = np.asarray(x, dtype=float)
    return np.array([np.insert(x, axis, ti) for ti in t])


def nullity_geodesic_residual(f, x, t_samples, axis=None, method="jet", h=1e-4):
    """Largest deviation of a coordinate line from a constant-speed geodesic.

    The line ``c(t) = f(x with t inserted at axis)`` is a geodesic of H^4 iff
    ``c'' = <c', c'> c``; the residual is the max-abs entry of the difference.
    """
    axis = f.nullity_axis if axis is None else axis
    if axis is None:
        raise ValueError("no nullity axis known for this immersion")
    pts = _curve_points(x, t_samples, axis)
    if method == "jet":
        mj = f.chart.jet(pts)
        c, dc, ddc = mj.value, mj.grad[..., axis], mj.hess[..., axis, axis]
    elif method == "fd":
        e = np.zeros(pts.shape[-1])
        e[axis] = h
        c = f.chart.evaluate(pts)
        cp, cm = f.chart.evaluate(pts + e), f.chart.evaluate(pts - e)
        dc = (cp - cm) / (2 * h)
        ddc = (cp - 2 * c + cm) / (h * h)
    else:
        raise ValueError(f"unknown method {method!r}")
    speed2 = L.minkowski_inner(dc, dc)
    return float(np.max(np.abs(ddc - speed2[:, None] * c)))


def _check_fit_samples(t):
    t = np.asarray(t, dtype=float)
    if t.size < 5:
        raise IllConditionedFit(f"need at least 5 samples, got {t.size}")
    if np.ptp(t) < 0.5:
        raise IllConditionedFit(f"t-range {np.ptp(t):.3g} is shorter than 0.5")
    return t


class ProfileFit(NamedTuple):
    a: float
    b: float
    d: float
    residual: float


def fit_inverse_square_profile(t, lam):
    """Least-squares ``1/lam^2 = (a e^{2t} + b + d e^{-2t}) / 2``."""
    t = _check_fit_samples(t)
    lam = np.asarray(lam, dtype=float)
    y = 1.0 / lam ** 2
    basis = 0.5 * np.column_stack([np.exp(2 * t), np.ones_like(t), np.exp(-2 * t)])
    coef, *_ = np.linalg.lstsq(basis, y, rcond=None)
    residual = float(np.max(np.abs(basis @ coef - y)))
    return ProfileFit(float(coef[0]), float(coef[1]), float(coef[2]), residual)


def lambda_along(f, x, t_samples, axis=None):
    axis = f.nullity_axis if axis is None else axis
    pts = _curve_points(x, t_samples, axis)
    return np.array([r.k[0] for r in analyse_grid(f, pts)])


def lambda_profile_fit(f, x, t_samples, axis=None):
    t = _check_fit_samples(t_samples)
    return fit_inverse_square_profile(t, lambda_along(f, x, t, axis))


def profile_v(fit, t):
    """``v`` along the nullity line implied by fitted profile coefficients."""
    a, b, d = fit.a, fit.b, fit.d
    num = a * np.exp(2 * t) - d * np.exp(-2 * t)
    return -num / (a * np.exp(2 * t) + b + d * np.exp(-2 * t))
