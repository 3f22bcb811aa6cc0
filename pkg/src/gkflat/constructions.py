"""Generative constructions.

Umbilical hypersurfaces ``Q^3`` of H^4 come with explicit charts. A minimal
surface ``h`` inside ``Q^3`` (a *generator*) yields

* its associate: the unit normal ``N`` of ``h`` in ``Q^3``, a stationary
  spacelike surface in S^4_1 with flat normal bundle;
* its suspension ``F(x, t) = cosh t h(x) + sinh t eta(h(x))``, a minimal
  hypersurface of H^4 with vanishing Gauss-Kronecker curvature.

``polar_map`` goes the other way round from a stationary surface, and
``reconstruct_generator`` recovers a generator from a flat-normal-bundle
stationary surface lying in a hyperplane.

Conventions: every ``Q^3`` is described by a constant vector ``axis`` with
``eta(x) = axis - alpha x`` its unit normal at ``x`` and ``<x, axis> = -alpha``
on ``Q^3``; ``alpha >= 0`` is the umbilicity constant (``A_eta = alpha I``).
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from . import lorentz5 as L
from .errors import (HyperplaneViolation, NotImmersed, NullCaseRequiresEta,
                     TotallyGeodesicPointInDomain, UnknownName)
from .hypersurface import HypersurfaceImmersion
from .jet import Expr, cos, cosh, sin, sinh, sqrt
from .surface import SpacelikeSurface

HOROSPHERE = "horosphere"
EQUIDISTANT = "equidistant"
GEODESIC_SPHERE = "geodesic_sphere"
TOTALLY_GEODESIC = "totally_geodesic"


def _inner(a, b):
    """Minkowski product of two component sequences (floats or jets)."""
    return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] + a[4] * b[4]


def _combo(c1, v1, c2, v2):
    return [c1 * x + c2 * y for x, y in zip(v1, v2)]


# -- umbilical hypersurfaces ---------------------------------------------------

@dataclass(frozen=True)
class UmbilicalQ3:
    """An umbilical hypersurface ``Q^3 = H^4 cap {<x, w> = offset}``.

    ``embed`` maps model coordinates (R^3, H^3 in R^4_1 or S^3 in R^4) into
    R^5_1 and ``push_normal(X, n)`` pushes a model unit normal to a unit
    vector of R^5_1 tangent to ``Q^3``. ``chart`` is a 3-parameter chart.
    """

    kind: str
    alpha: float
    w: np.ndarray
    offset: float
    axis: np.ndarray
    param: float = float("nan")
    embed: Optional[Callable] = field(default=None, repr=False)
    push_normal: Optional[Callable] = field(default=None, repr=False)
    chart: Optional[Expr] = field(default=None, repr=False)
    domain: Optional[tuple] = None

    @property
    def sectional_curvature(self):
        return -1.0 + self.alpha ** 2

    def eta(self, x):
        """Unit normal of ``Q^3`` at the point ``x`` (components may be jets)."""
        return [self.axis[i] - self.alpha * x[i] for i in range(5)]

    def as_hypersurface(self):
        return HypersurfaceImmersion(f"q3:{self.kind}", self.chart, self.domain)


def _h3_point(xs):
    a, b, c = xs
    return [cosh(a) * cosh(b) * cosh(c), sinh(a), cosh(a) * sinh(b), cosh(a) * cosh(b) * sinh(c)]


def _s3_point(xs):
    a, b, c = xs
    return [cos(a) * cos(b), cos(a) * sin(b), sin(a) * cos(c), sin(a) * sin(c)]


def horosphere_chart():
    """Horosphere through ``(1, 0, 0, 0, 0)`` with its flat chart.

    ``y -> (1 + |y|^2/2, |y|^2/2, y1, y2, y3)`` is an isometry from R^3.
    """
    def embed(y):
        q = 0.5 * (y[0] * y[0] + y[1] * y[1] + y[2] * y[2])
        return [1.0 + q, q, y[0], y[1], y[2]]

    def push_normal(y, n):
        s = y[0] * n[0] + y[1] * n[1] + y[2] * n[2]
        return [s, s, n[0], n[1], n[2]]

    w = np.array([1.0, 1.0, 0.0, 0.0, 0.0])
    return UmbilicalQ3(
        kind=HOROSPHERE, alpha=1.0, w=w, offset=-1.0, axis=w.copy(), param=1.0,
        embed=embed, push_normal=push_normal,
        chart=Expr(lambda ys: embed(ys), 3, "horosphere"),
        domain=((-2.0, 2.0),) * 3,
    )


def equidistant_chart(c):
    """Equidistant hypersurface ``x4 = c`` with ``alpha = c / sqrt(1 + c^2)``."""
    c = float(c)
    if c == 0:
        raise ValueError("c = 0 gives the totally geodesic H^3, which is not an equidistant hypersurface")
    if c < 0:
        raise ValueError("use c > 0; the sign only mirrors the hypersurface")
    s = np.sqrt(1.0 + c * c)

    def embed(p):
        return [s * p[0], s * p[1], s * p[2], s * p[3], c]

    def push_normal(p, n):
        return [n[0], n[1], n[2], n[3], 0.0]

    alpha = c / s
    axis = np.array([0.0, 0.0, 0.0, 0.0, -1.0 / s])
    return UmbilicalQ3(
        kind=EQUIDISTANT, alpha=alpha, w=np.array([0.0, 0.0, 0.0, 0.0, 1.0]), offset=c,
        axis=axis, param=c, embed=embed, push_normal=push_normal,
        chart=Expr(lambda xs: embed(_h3_point(xs)), 3, "equidistant"),
        domain=((-1.5, 1.5),) * 3,
    )


def geodesic_sphere_chart(r):
    """Geodesic sphere of radius ``r`` about ``(1, 0, 0, 0, 0)``; ``alpha = coth r``."""
    r = float(r)
    if r <= 0:
        raise ValueError("radius must be positive")
    ch, sh = np.cosh(r), np.sinh(r)

    def embed(p):
        return [ch, sh * p[0], sh * p[1], sh * p[2], sh * p[3]]

    def push_normal(p, n):
        return [0.0, n[0], n[1], n[2], n[3]]

    return UmbilicalQ3(
        kind=GEODESIC_SPHERE, alpha=ch / sh, w=np.array([1.0, 0.0, 0.0, 0.0, 0.0]), offset=-ch,
        axis=np.array([1.0 / sh, 0.0, 0.0, 0.0, 0.0]), param=r,
        embed=embed, push_normal=push_normal,
        chart=Expr(lambda xs: embed(_s3_point(xs)), 3, "geodesic_sphere"),
        domain=((0.2, 1.3), (-3.0, 3.0), (-3.0, 3.0)),
    )


# -- generators ------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSurface:
    """A surface ``h`` in ``Q^3`` with its unit normal ``N`` (tangent to ``Q^3``)."""

    name: str
    q3: UmbilicalQ3
    chart: Expr
    normal: Expr
    domain: tuple
    principal_curvature: Optional[Expr] = None
    params: dict = field(default_factory=dict)

    @property
    def alpha(self):
        return self.q3.alpha

    @property
    def eta_chart(self):
        """``eta o h`` as a chart."""
        return Expr(lambda xs: self.q3.eta(self.chart(xs)), 2, f"eta o {self.name}")

    def hyperplane_normal(self):
        """The vector ``w`` from which :func:`reconstruct_generator` recovers ``h``.

        ``w = eta o h + alpha h`` when ``alpha != 1``; for horospheres the
        reconstruction normalizes ``<eta, w> = 1/2``, which halves it.
        """
        if self.q3.kind == HOROSPHERE:
            return 0.5 * self.q3.axis
        return self.q3.axis.copy()

    def grid(self, n, margin=0.0):
        return box_grid(self.domain, (n, n), margin)


def box_grid(domain, counts, margin=0.0):
    """Row-major grid of points of a parameter box.

    ``margin`` is a fraction of one grid cell kept away from each face; with
    ``margin=1`` the outer layer of an ``n + 2`` grid is dropped.
    """
    axes = []
    for (lo, hi), n in zip(domain, counts):
        if margin:
            step = (hi - lo) / (n - 1 + 2 * margin)
            lo, hi = lo + margin * step, hi - margin * step
        axes.append(np.linspace(lo, hi, n))
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def generator_shape_operator(gen, p, mj=None):
    """``(metric, A_N)`` of ``h`` in ``Q^3`` at ``p``; ``A_N`` in the coordinate basis."""
    if mj is None:
        mj = gen.chart.jet(p)
        nval = gen.normal.evaluate(p)
    else:
        mj, nval = mj
    J = mj.grad
    G = J.T @ L.ETA @ J
    B = np.einsum("kij,k->ij", mj.hess, L.ETA @ nval)
    return G, np.linalg.solve(G, B)


def umbilical_shape_operator(gen, p):
    """Coordinate matrix of the shape operator of ``h`` in the direction ``eta o h``."""
    mj = gen.chart.jet(p)
    n = np.array(gen.q3.eta(list(mj.value)))
    J = mj.grad
    G = J.T @ L.ETA @ J
    B = np.einsum("kij,k->ij", mj.hess, L.ETA @ n)
    return np.linalg.solve(G, B)


def principal_curvature_values(gen, points):
    """Numerical positive principal curvature of ``h`` in ``Q^3`` at each point."""
    points = np.asarray(points, dtype=float)
    mj = gen.chart.jet(points)
    nv = gen.normal.evaluate(points)
    out = []
    for i in range(len(points)):
        _, S = generator_shape_operator(gen, None, (mj.at(i), nv[i]))
        ev = np.linalg.eigvals(S).real
        out.append(float(np.max(ev)))
    return np.array(out)


def intrinsic_curvature(gen, p):
    """Gaussian curvature of ``h`` from the Gauss equation in H^4.

    Uses both normals ``N`` and ``eta o h`` independently:
    ``K = -1 + det A_N + det A_eta``.
    """
    _, S = generator_shape_operator(gen, p)
    return -1.0 + float(np.linalg.det(S)) + float(np.linalg.det(umbilical_shape_operator(gen, p)))


@dataclass
class ValidationSweep:
    membership: float
    mean_curvature: float
    min_curvature: float
    normal_defect: float


def validate_generator(gen, n=7, check_minimal=True):
    """Sweep a grid: membership in ``Q^3``, minimality, no totally geodesic points."""
    pts = gen.grid(n)
    h = gen.chart.evaluate(pts)
    N = gen.normal.evaluate(pts)
    offsets = L.minkowski_inner(h, gen.q3.axis)
    membership = float(np.max(np.abs(offsets + gen.alpha)))
    membership = max(membership, float(np.max(np.abs(L.minkowski_inner(h, h) + 1.0))))
    mj = gen.chart.jet(pts)
    traces, kmin, defect = [], np.inf, 0.0
    for i in range(len(pts)):
        m = mj.at(i)
        G, S = generator_shape_operator(gen, None, (m, N[i]))
        traces.append(abs(np.trace(S)))
        kmin = min(kmin, float(np.min(np.abs(np.linalg.eigvals(S)))))
        checks = [L.minkowski_inner(N[i], N[i]) - 1.0, L.minkowski_inner(N[i], h[i]),
                  L.minkowski_inner(N[i], np.array(gen.q3.eta(list(h[i])))),
                  L.minkowski_inner(N[i], m.partial(0)), L.minkowski_inner(N[i], m.partial(1))]
        defect = max(defect, max(abs(c) for c in checks))
    sweep = ValidationSweep(membership, float(max(traces)), kmin, defect)
    if check_minimal and sweep.mean_curvature > 1e-8:
        raise ValueError(f"{gen.name}: not minimal, |tr A_N| up to {sweep.mean_curvature:.2e}")
    if sweep.min_curvature < 1e-3:
        raise TotallyGeodesicPointInDomain(
            f"{gen.name}: principal curvature {sweep.min_curvature:.2e} < 1e-3 in the domain")
    return sweep


def _euclidean_generator(name, q3, X, n, k, domain, params):
    def chart(xs):
        return q3.embed(X(xs))

    def normal(xs):
        return q3.push_normal(X(xs), n(xs))

    return GeneratorSurface(name, q3, Expr(chart, 2, name), Expr(normal, 2, f"N {name}"),
                            domain, Expr(lambda xs: [k(xs)], 2, f"k {name}"), params)


def euclidean_helicoid(c=1.0):
    q3 = horosphere_chart()

    def X(xs):
        u, v = xs
        return [v * cos(u), v * sin(u), c * u]

    def n(xs):
        u, v = xs
        r = sqrt(c * c + v * v)
        return [-c * sin(u) / r, c * cos(u) / r, -v / r]

    return _euclidean_generator("euclidean_helicoid", q3, X, n,
                                lambda xs: c / (c * c + xs[1] * xs[1]),
                                ((-1.0, 1.0), (-2.0, 2.0)), {"c": c})


def euclidean_catenoid(c=1.0):
    q3 = horosphere_chart()

    def X(xs):
        u, v = xs
        r = c * cosh(v / c)
        return [r * cos(u), r * sin(u), v]

    def n(xs):
        u, v = xs
        ch = cosh(v / c)
        return [cos(u) / ch, sin(u) / ch, -sinh(v / c) / ch]

    return _euclidean_generator("euclidean_catenoid", q3, X, n,
                                lambda xs: 1.0 / (c * cosh(xs[1] / c) ** 2),
                                ((-1.5, 1.5), (-1.0, 1.0)), {"c": c})


def enneper():
    q3 = horosphere_chart()

    def X(xs):
        u, v = xs
        return [u - u ** 3 / 3 + u * v * v, v - v ** 3 / 3 + v * u * u, u * u - v * v]

    def n(xs):
        u, v = xs
        r = 1.0 + u * u + v * v
        return [2 * u / r, -2 * v / r, (u * u + v * v - 1.0) / r]

    return _euclidean_generator("enneper", q3, X, n,
                                lambda xs: 2.0 / (1.0 + xs[0] * xs[0] + xs[1] * xs[1]) ** 2,
                                ((-1.0, 1.0), (-1.0, 1.0)), {})


def hyperbolic_helicoid(a=1.0, b=1.0, c_offset=0.75):
    """Helicoid of H^3 placed in the equidistant hypersurface ``x4 = c_offset``.

    ``X(s, t) = (cosh s cosh at, cosh s sinh at, sinh s cos bt, sinh s sin bt)``
    is ruled by geodesics and minimal for all ``a, b``; its principal
    curvatures in H^3 are ``+-ab / (a^2 cosh^2 s + b^2 sinh^2 s)``.
    """
    q3 = equidistant_chart(c_offset)

    def X(xs):
        s, t = xs
        return [cosh(s) * cosh(a * t), cosh(s) * sinh(a * t), sinh(s) * cos(b * t), sinh(s) * sin(b * t)]

    def n(xs):
        s, t = xs
        r = sqrt(b * b * sinh(s) ** 2 + a * a * cosh(s) ** 2)
        return [b * sinh(s) * sinh(a * t) / r, b * sinh(s) * cosh(a * t) / r,
                a * cosh(s) * sin(b * t) / r, -a * cosh(s) * cos(b * t) / r]

    # Q^3 carries (1 + c^2) times the H^3 metric, which divides curvatures by sqrt(1 + c^2)
    scale = 1.0 / np.sqrt(1.0 + c_offset ** 2)

    def k(xs):
        s = xs[0]
        return scale * abs(a * b) / (a * a * cosh(s) ** 2 + b * b * sinh(s) ** 2)

    return _euclidean_generator("hyperbolic_helicoid", q3, X, n, k,
                                ((0.2, 1.5), (-1.0, 1.0)), {"a": a, "b": b, "c_offset": c_offset})


def clifford_torus(r=1.0):
    """Clifford torus of the unit 3-sphere scaled into the geodesic sphere of radius ``r``."""
    q3 = geodesic_sphere_chart(r)
    s2 = np.sqrt(0.5)

    def X(xs):
        u, v = xs
        return [s2 * cos(u), s2 * sin(u), s2 * cos(v), s2 * sin(v)]

    def n(xs):
        u, v = xs
        return [s2 * cos(u), s2 * sin(u), -s2 * cos(v), -s2 * sin(v)]

    return _euclidean_generator("clifford_torus", q3, X, n, lambda xs: 1.0 / np.sinh(r) + 0.0 * xs[0],
                                ((-1.5, 1.5), (-1.5, 1.5)), {"r": r})


def round_sphere_generator(R=1.0):
    """Non-minimal round sphere of radius ``R`` in the horosphere (negative control)."""
    q3 = horosphere_chart()

    def X(xs):
        u, v = xs
        return [R * cos(u) * cos(v), R * cos(u) * sin(v), R * sin(u)]

    def n(xs):
        u, v = xs
        return [cos(u) * cos(v), cos(u) * sin(v), sin(u)]

    return _euclidean_generator("round_sphere", q3, X, n, lambda xs: 1.0 / R + 0.0 * xs[0],
                                ((-1.0, 1.0), (-1.5, 1.5)), {"R": R})


CATALOG = {
    "euclidean_helicoid": (euclidean_helicoid, {"c": 1.0}),
    "euclidean_catenoid": (euclidean_catenoid, {"c": 1.0}),
    "enneper": (enneper, {}),
    "hyperbolic_helicoid": (hyperbolic_helicoid, {"a": 1.0, "b": 1.0, "c_offset": 0.75}),
    "clifford_torus": (clifford_torus, {"r": 1.0}),
}


def catalog_generator(name, validate=True, **params):
    """Build a catalog generator by name, checking it on a sample grid."""
    try:
        factory, defaults = CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown generator {name!r}; known: {', '.join(sorted(CATALOG))}") from None
    unknown = set(params) - set(defaults)
    if unknown:
        raise ValueError(f"{name} takes parameters {sorted(defaults)}, got {sorted(unknown)}")
    gen = factory(**{**defaults, **{k: float(v) for k, v in params.items()}})
    if validate:
        validate_generator(gen)
    return gen


# -- associate, suspension, polar map ------------------------------------------------

def associate(gen):
    """The unit normal ``N`` of ``h`` seen as a surface in S^4_1.

    Its normal frame is hinted as ``(eta o h, h)``.
    """
    return SpacelikeSurface(f"associate:{gen.name}", gen.normal, gen.domain,
                            (gen.eta_chart, gen.chart))


@dataclass(frozen=True)
class SuspensionImmersion(HypersurfaceImmersion):
    generator: Optional[GeneratorSurface] = None
    t_domain: tuple = (-2.0, 2.0)


def suspension(gen, t_domain=(-2.0, 2.0)):
    """``F(x, t) = cosh t h(x) + sinh t eta(h(x))`` with the nullity along ``t``."""
    def chart(xs):
        x, t = xs[:2], xs[2]
        h = gen.chart(x)
        e = gen.q3.eta(h)
        ch, sh = cosh(t), sinh(t)
        return [ch * hi + sh * ei for hi, ei in zip(h, e)]

    t_domain = tuple(float(t) for t in t_domain)
    return SuspensionImmersion(f"suspension:{gen.name}", Expr(chart, 3, f"F {gen.name}"),
                               tuple(gen.domain) + (t_domain,), 2, gen, t_domain)


def warp(alpha, t):
    """``cosh t - alpha sinh t``: scale of ``dF`` on horizontal vectors."""
    return np.cosh(t) - alpha * np.sinh(t)


def regularity_predicate(s, x, t, tol=1e-9):
    return bool(abs(warp(s.generator.alpha, t)) > tol)


def singular_time(s, t_domain=None):
    """First ``t`` in the range where ``cosh t = alpha sinh t``, or ``None``."""
    lo, hi = t_domain if t_domain is not None else s.t_domain
    alpha = s.generator.alpha
    ts = np.linspace(lo, hi, 401)
    vals = warp(alpha, ts)
    for i in range(len(ts) - 1):
        if vals[i] == 0:
            return float(ts[i])
        if vals[i] * vals[i + 1] < 0:
            return float(brentq(lambda t: warp(alpha, t), ts[i], ts[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps))
    return None


def polar_map(g, t_domain=(-2.0, 2.0)):
    """``Psi(x, t) = sinh t e3(x) + cosh t e4(x)`` for a surface with a normal frame."""
    if g.normal_frame_hint is None:
        raise ValueError("polar_map needs a smooth normal frame (normal_frame_hint)")
    E3, E4 = g.normal_frame_hint

    def chart(xs):
        x, t = xs[:2], xs[2]
        sh, ch = sinh(t), cosh(t)
        return [sh * a + ch * b for a, b in zip(E3(x), E4(x))]

    return HypersurfaceImmersion(f"polar:{g.name}", Expr(chart, 3, f"Psi {g.name}"),
                                 tuple(g.domain) + (tuple(t_domain),), 2)


def polar_direction(report, t):
    """Unit timelike normal ``sinh t e3 + cosh t e4`` at a surface report."""
    return np.sinh(t) * report.e3 + np.cosh(t) * report.e4


def polar_regular(report, t, tol=1e-9):
    """Regularity of the polar map at ``(x, t)``: ``det A_w != 0``."""
    return bool(abs(np.linalg.det(report.shape_operator(polar_direction(report, t)))) > tol)


# -- reconstruction -------------------------------------------------------------------

def _kind_for(alpha, null):
    if null:
        return HOROSPHERE
    if alpha == 0:
        return TOTALLY_GEODESIC
    return EQUIDISTANT if alpha < 1 else GEODESIC_SPHERE


def reconstruct_generator(g, w, tol=1e-8, samples=7):
    """Recover ``h`` with ``g`` as associate from a hyperplane normal ``w``.

    The scale of ``w`` matters: it selects the member of the family of
    parallel generators (all sharing the associate ``g``), with
    ``a = sqrt(1 - <w, w>)`` the umbilicity constant of the resulting ``Q^3``.
    The sign of the auxiliary normal is chosen so that ``h`` is future-pointing
    (lies on H^4). Needs ``g.normal_frame_hint`` as a smooth normal frame.
    """
    w = np.asarray(w, dtype=float)
    if g.normal_frame_hint is None:
        raise NullCaseRequiresEta("reconstruction needs a smooth normal frame on the surface")
    pts = box_grid(g.domain, (samples, samples))
    gv = g.chart.evaluate(pts)
    off = float(np.max(np.abs(gv @ L.ETA @ w)))
    if off > tol * max(1.0, float(np.linalg.norm(w))):
        raise HyperplaneViolation(f"<g, w> reaches {off:.2e}")
    ww = float(L.minkowski_inner(w, w))
    if ww > 1.0 + tol:
        raise ValueError("rescale w so that <w, w> <= 1")
    E3, E4 = g.normal_frame_hint
    null = abs(ww) <= tol * float(np.dot(w, w))

    def build(sign):
        def h(xs):
            e3, e4 = E3(xs), E4(xs)
            c3 = _inner(list(w), e3)
            c4 = -_inner(list(w), e4)
            if null:
                n = _combo(c3, e3, -c4, e4)
                scale = 2.0 * (c3 * c3 + c4 * c4)
                eta = [sign * ni / scale for ni in n]
                return [wi - ei for wi, ei in zip(w, eta)]
            a = np.sqrt(1.0 - ww)
            eta = [sign * v for v in _combo(c4, e3, c3, e4)]
            return [(a * wi - ei) / (a * a - 1.0) for wi, ei in zip(w, eta)]
        return Expr(h, 2, f"reconstructed from {g.name}")

    chart = build(1.0)
    centre = np.array([0.5 * (lo + hi) for lo, hi in g.domain])
    if chart.evaluate(centre)[0] < 0:
        chart = build(-1.0)
    a = 1.0 if null else float(np.sqrt(1.0 - ww))
    axis = 2.0 * w if null else w.copy()
    q3 = UmbilicalQ3(kind=_kind_for(a, null), alpha=a, w=w.copy(),
                     offset=-0.5 if null else -a, axis=axis)
    gen = GeneratorSurface(f"reconstructed:{g.name}", q3, chart, g.chart, g.domain)

    hv = chart.evaluate(pts)
    drift = float(np.max(np.abs(hv @ L.ETA @ w - q3.offset)))
    quad = float(np.max(np.abs(L.minkowski_inner(hv, hv) + 1.0)))
    if drift > 1e3 * tol or quad > 1e3 * tol or np.any(hv[:, 0] <= 0):
        raise HyperplaneViolation(f"reconstructed surface leaves Q^3 (offset drift {drift:.2e}, "
                                  f"quadric defect {quad:.2e})")
    return gen


# -- auxiliary test geometries ----------------------------------------------------------

def totally_geodesic_sphere():
    """``(0, cos u cos v, cos u sin v, sin u, 0)``: totally geodesic S^2 in S^4_1."""
    def chart(xs):
        u, v = xs
        return [0.0, cos(u) * cos(v), cos(u) * sin(v), sin(u), 0.0]
    return SpacelikeSurface("totally_geodesic_sphere", Expr(chart, 2, "S2"), ((-1.0, 1.0), (-1.5, 1.5)))


def perturbed_sphere(eps=0.2):
    """A generic spacelike surface of S^4_1 (in no hyperplane, not stationary)."""
    def chart(xs):
        u, v = xs
        X = [eps * sin(u + 2 * v), cos(u) * cos(v), cos(u) * sin(v), sin(u), eps * cos(2 * u - v) + 0.5 * eps * u * v]
        r = sqrt(_inner(X, X))
        return [xi / r for xi in X]
    return SpacelikeSurface("perturbed_sphere", Expr(chart, 2, "perturbed S2"), ((-1.0, 1.0), (-1.5, 1.5)))


def totally_geodesic_h3():
    """The slice ``x4 = 0`` of H^4."""
    def chart(xs):
        return _h3_point(xs) + [0.0]
    return HypersurfaceImmersion("totally_geodesic_h3", Expr(chart, 3, "H3"), ((-1.0, 1.0),) * 3)


def geodesic_sphere_hypersurface(r=1.0):
    return geodesic_sphere_chart(r).as_hypersurface()


def surface_catalog():
    return {"totally_geodesic_sphere": totally_geodesic_sphere, "perturbed_sphere": perturbed_sphere}


def check_immersed(value):
    if not np.all(np.isfinite(value)):
        raise NotImmersed("chart produced non-finite values")
