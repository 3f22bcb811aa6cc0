"""Pointwise geometry of spacelike surfaces in de Sitter space S^4_1."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import lorentz5 as L
from .errors import (DegenerateNormal, DegenerateSpan, GaugeAlignmentFailure, NoHyperplane,
                     NotImmersed)
from .jet import Expr

SUPERMINIMAL_TOL = 1e-6
HYPERPLANE_GAP = 1e-6
FRAME_TOL = 1e-8


@dataclass(frozen=True)
class SpacelikeSurface:
    """A chart ``(u, v) -> R^5_1`` whose image lies in S^4_1.

    ``normal_frame_hint`` optionally supplies smooth normal fields ``(e3, e4)``
    (``e4`` timelike); when present it replaces the computed normal frame.
    """

    name: str
    chart: Expr
    domain: tuple
    normal_frame_hint: Optional[tuple] = None


@dataclass
class SurfaceReport:
    point: np.ndarray
    metric: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e4: np.ndarray
    A3: np.ndarray
    A4: np.ndarray
    H: np.ndarray
    K: float
    Kperp: float
    superminimal: bool
    # columns: parameter-space coordinates of e1, e2
    coords: np.ndarray = field(repr=False)
    position: np.ndarray = field(repr=False)

    @property
    def mean_curvature_norm(self):
        return 0.5 * float(np.hypot(np.trace(self.A3), np.trace(self.A4)))

    def coordinate_operator(self, a):
        """Matrix of the frame operator ``a`` in the coordinate basis."""
        return self.coords @ a @ np.linalg.inv(self.coords)

    def shape_operator(self, n):
        """Frame matrix of the shape operator in the normal direction ``n``."""
        c3 = L.minkowski_inner(n, self.e3)
        c4 = -L.minkowski_inner(n, self.e4)
        # n = c3 e3 + c4 e4 and <II, e4> = <A4 ., .>
        return c3 * self.A3 + c4 * self.A4

    def to_dict(self):
        return {
            "point": self.point.tolist(),
            "metric": self.metric.tolist(),
            "frames": {k: getattr(self, k).tolist() for k in ("e1", "e2", "e3", "e4")},
            "shape_operators": {"A3": self.A3.tolist(), "A4": self.A4.tolist()},
            "H": self.H.tolist(),
            "K": self.K,
            "Kperp": self.Kperp,
            "superminimal": self.superminimal,
        }


def tangent_frame(mj):
    """Orthonormal tangent frame from the first derivatives of a surface jet.

    Returns ``(metric, coords, e1, e2)`` where ``coords`` holds the parameter
    coordinates of ``e1, e2`` as columns (``e1`` is along the first axis).
    """
    gu, gv = mj.partial(0), mj.partial(1)
    G = np.array([[L.minkowski_inner(gu, gu), L.minkowski_inner(gu, gv)],
                  [L.minkowski_inner(gv, gu), L.minkowski_inner(gv, gv)]])
    det = G[0, 0] * G[1, 1] - G[0, 1] ** 2
    scale = max(1.0, abs(G[0, 0]), abs(G[1, 1]))
    if abs(det) <= 1e-12 * scale * scale:
        raise NotImmersed("differential has rank < 2")
    if G[0, 0] <= 0 or det <= 0:
        raise NotImmersed("induced metric is not positive definite")
    a = 1.0 / np.sqrt(G[0, 0])
    b = 1.0 / np.sqrt(det / G[0, 0])
    E = np.array([[a, -G[0, 1] / G[0, 0] * b], [0.0, b]])
    e1 = gu * E[0, 0]
    e2 = gu * E[0, 1] + gv * E[1, 1]
    return G, E, e1, e2


def _validate_hint(g, e1, e2, e3, e4):
    checks = [
        L.minkowski_inner(e3, e3) - 1.0, L.minkowski_inner(e4, e4) + 1.0,
        L.minkowski_inner(e3, e4),
        L.minkowski_inner(e3, g), L.minkowski_inner(e4, g),
        L.minkowski_inner(e3, e1), L.minkowski_inner(e3, e2),
        L.minkowski_inner(e4, e1), L.minkowski_inner(e4, e2),
    ]
    bad = max(abs(c) for c in checks)
    if bad > FRAME_TOL * (1.0 + float(np.dot(e4, e4))):
        raise DegenerateNormal(f"hinted normal frame fails orthonormality by {bad:.2e}")


def computed_normal_frame(g, e1, e2):
    """Normal frame ``(e3, e4)`` of a surface point, with the fixed orientation.

    ``e4`` is future timelike and ``det[e1, e2, e3, e4, g] > 0``.
    """
    try:
        frame = L.normal_complement_frame([g, e1, e2])
    except DegenerateSpan as exc:
        raise DegenerateNormal(str(exc)) from exc
    if sorted(frame.tags) != [-1, 1]:
        raise DegenerateNormal(f"normal space has signature {frame.tags}, expected (+, -)")
    e3 = frame[frame.tags.index(1)]
    e4 = frame[frame.tags.index(-1)]
    if e4[0] < 0:
        e4 = -e4
    if L.det5([e1, e2, e3, e4, g]) < 0:
        e3 = -e3
    return e3, e4


def analyse(s, p, mj=None, hint=None):
    """Full :class:`SurfaceReport` at parameter point ``p``.

    ``mj`` and ``hint`` (values of the hint fields) may be supplied when the
    caller has already evaluated them in batch.
    """
    p = np.asarray(p, dtype=float)
    if mj is None:
        mj = s.chart.jet(p)
    g = mj.value
    G, E, e1, e2 = tangent_frame(mj)
    if s.normal_frame_hint is not None:
        if hint is None:
            hint = (s.normal_frame_hint[0].evaluate(p), s.normal_frame_hint[1].evaluate(p))
        e3, e4 = hint
        _validate_hint(g, e1, e2, e3, e4)
    else:
        e3, e4 = computed_normal_frame(g, e1, e2)

    b3 = np.einsum("kij,k->ij", mj.hess, L.ETA @ e3)
    b4 = np.einsum("kij,k->ij", mj.hess, L.ETA @ e4)
    A3 = E.T @ b3 @ E
    A4 = E.T @ b4 @ E
    A3 = 0.5 * (A3 + A3.T)
    A4 = 0.5 * (A4 + A4.T)
    H = 0.5 * np.trace(A3) * e3 - 0.5 * np.trace(A4) * e4
    K = 1.0 + np.linalg.det(A3) - np.linalg.det(A4)
    comm = A3 @ A4 - A4 @ A3
    Kperp = float(comm[1, 0])
    superminimal = abs(K - 1.0) <= SUPERMINIMAL_TOL and abs(Kperp) <= SUPERMINIMAL_TOL
    return SurfaceReport(p, G, e1, e2, e3, e4, A3, A4, H, float(K), Kperp, bool(superminimal), E, g)


def analyse_grid(s, points):
    """Reports for an array of points, differentiating all of them at once."""
    points = np.asarray(points, dtype=float)
    mj = s.chart.jet(points)
    hints = None
    if s.normal_frame_hint is not None:
        hints = (s.normal_frame_hint[0].evaluate(points), s.normal_frame_hint[1].evaluate(points))
    out = []
    for n, p in enumerate(points):
        hint = None if hints is None else (hints[0][n], hints[1][n])
        out.append(analyse(s, p, mj.at(n), hint))
    return out


def adapted_frame(s, p):
    r = analyse(s, p)
    return r.e1, r.e2, r.e3, r.e4


def fundamental_forms(s, p):
    """``(metric, A3, A4)``; the shape operators are in the orthonormal frame."""
    r = analyse(s, p)
    return r.metric, r.A3, r.A4


def second_fundamental_form(report, x, y):
    """``II(X, Y)`` for frame-coordinate vectors ``x, y``."""
    return (x @ report.A3 @ y) * report.e3 - (x @ report.A4 @ y) * report.e4


surface_invariants = analyse


# -- normal connection -------------------------------------------------------

def _gauge_frame(s, q, ref3):
    """Smooth normal frame near a reference point.

    Hinted surfaces use the hint fields. Otherwise ``e3`` is the normalized
    projection of the fixed vector ``ref3`` onto the normal plane at ``q``.
    """
    if s.normal_frame_hint is not None:
        return s.normal_frame_hint[0].evaluate(q), s.normal_frame_hint[1].evaluate(q)
    mj = s.chart.jet(q)
    _, _, e1, e2 = tangent_frame(mj)
    n3, n4 = computed_normal_frame(mj.value, e1, e2)
    c3 = L.minkowski_inner(ref3, n3)
    c4 = -L.minkowski_inner(ref3, n4)
    q2 = c3 * c3 - c4 * c4
    if q2 <= 0.25:
        raise GaugeAlignmentFailure("reference normal is not transported continuously")
    r = np.sqrt(q2)
    e3 = (c3 * n3 + c4 * n4) / r
    e4 = (c4 * n3 + c3 * n4) / r
    if e4[0] < 0:
        e4 = -e4
    return e3, e4


def _omega(s, q, h, ref3):
    """Coefficients ``(w_u, w_v)`` of the normal connection form at ``q``."""
    _, e4 = _gauge_frame(s, q, ref3)
    out = []
    for i in range(2):
        d = np.zeros(2)
        d[i] = h
        ep = _gauge_frame(s, q + d, ref3)[0]
        em = _gauge_frame(s, q - d, ref3)[0]
        out.append(-L.minkowski_inner((ep - em) / (2 * h), e4))
    return np.array(out)


def connection_form_residual(s, p, h=1e-3):
    """``|d omega_34(e1, e2) + Kperp|`` with nested central differences."""
    p = np.asarray(p, dtype=float)
    r = analyse(s, p)
    ref3 = r.e3
    du = np.array([h, 0.0])
    dv = np.array([0.0, h])
    dwv_du = (_omega(s, p + du, h, ref3)[1] - _omega(s, p - du, h, ref3)[1]) / (2 * h)
    dwu_dv = (_omega(s, p + dv, h, ref3)[0] - _omega(s, p - dv, h, ref3)[0]) / (2 * h)
    d_omega = (dwv_du - dwu_dv) * np.linalg.det(r.coords)
    return abs(d_omega + r.Kperp)


# -- containing hyperplane ---------------------------------------------------

def find_containing_hyperplane(s, samples, tol=HYPERPLANE_GAP):
    """Normal ``w`` of a linear hyperplane containing the sampled surface.

    Returns ``(w, character)`` with ``w`` scaled to ``<w, w> = +-1`` (or to
    Euclidean length 1 when null) and its largest component positive.
    """
    samples = np.asarray(samples, dtype=float)
    if len(samples) < 8:
        raise ValueError("need at least 8 sample points")
    S = s.chart.evaluate(samples)
    _, sv, vt = np.linalg.svd(S)
    if sv[-1] > tol * sv[0]:
        raise NoHyperplane(f"smallest singular value ratio {sv[-1] / sv[0]:.2e} exceeds {tol:.1e}")
    w = L.ETA @ vt[-1]
    character = L.causal_character(w / np.linalg.norm(w), tol)
    w = w / np.linalg.norm(w) if character == L.NULL else L.normalize(w)
    if w[np.argmax(np.abs(w))] < 0:
        w = -w
    worst = float(np.max(np.abs(S @ L.ETA @ w)))
    if worst > tol * max(1.0, float(np.max(np.abs(S)))):
        raise NoHyperplane(f"samples leave the hyperplane by {worst:.2e}")
    return w, character
