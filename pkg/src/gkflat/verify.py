"""Property suites: every applicable identity of a construction, as report rows.

A construction id has the form ``kind:name`` with ``kind`` one of
``generator``, ``associate``, ``suspension``, ``polar`` (all built over a
catalog generator), ``q3`` (``horosphere``, ``equidistant``,
``geodesic_sphere``), ``surface`` or ``hypersurface`` (auxiliary geometries).

Checks never abort a suite: exceptions become failed rows. Rows are sorted
by id, and random sampling is seeded, so reports are reproducible.
"""

import json
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import constructions as C
from . import hypersurface as Hy
from . import lorentz5 as L
from . import surface as S
from .errors import GeometryError, UnknownName
from .jet import FD_STEP, Expr, fd_oracle

DEFAULT_SURFACE_GRID = (21, 21)
DEFAULT_HYPER_GRID = (9, 9, 9)

THRESHOLDS = {
    "membership": 1e-9,
    "quadric": 1e-9,
    "minimality": 1e-8,
    "min_curvature": 1e-3,
    "frame": 1e-10,
    "stationarity": 1e-8,
    "normal_curvature": 1e-8,
    "associate_law": 1e-7,
    "associate_K": 1e-6,
    "connection": 1e-5,
    "sum_k": 1e-8,
    "gk": 1e-8,
    "curvature_law": 1e-7,
    "metric_t": 1e-9,
    "metric_x": 1e-8,
    "geodesic": 1e-8,
    "u": 1e-4,
    "v": 2e-4,
    "structure": 5e-4,
    "field_laws": 5e-4,
    "fit": 1e-8,
    "fit_coeff": 1e-6,
    "ratio": 1e-6,
    "singular_time": 1e-9,
    "coincidence": 1e-12,
    "regularity": 1e-9,
    "umbilic": 1e-9,
    "oracle_grad": 1e-5,
    "oracle_hess": 1e-3,
    "tau": 1e-6,
}

ANCHORS = {
    "associate.hyperplane": "associate lies in a hyperplane of matching causal character",
    "associate.law_A3": "A3 = -alpha A_N^{-1}",
    "associate.law_A4": "A4 = A_N^{-1}",
    "associate.curvature": "K = 1 - K_Q/(K_Q - K_h)",
    "associate.normal_curvature": "K_perp = 0 (flat normal bundle)",
    "associate.stationarity": "H = 0",
    "generator.membership": "<h, w> constant (h in Q^3)",
    "generator.minimality": "tr A_N = 0",
    "generator.min_curvature": "no totally geodesic points",
    "polar.coincidence": "Psi = sinh t e3 + cosh t e4 = F_h",
    "polar.curvature_law": "k1 = -k3 = 1/sqrt(-det A_w), k2 = 0",
    "fields.K": "K o pi = 1 + (1 - u^2 - v^2)/lambda^2",
    "fields.Kperp": "K_perp o pi = -2u/lambda^2",
    "fields.t_invariance": "right-hand sides constant along nullity lines",
    "suspension.curvature_law": "k1 = k/(cosh t - alpha sinh t)",
    "suspension.gk": "k1 k2 k3 = 0",
    "suspension.profile_fit": "1/lambda^2 = (a e^{2t} + b + d e^{-2t})/2",
    "suspension.profile_coeffs": "a = (1-alpha)^2/2k^2, b = (1-alpha^2)/k^2, d = (1+alpha)^2/2k^2",
    "suspension.minimality": "k1 + k2 + k3 = 0",
    "suspension.nullity_geodesic": "nullity lines are geodesics of H^4: c'' = <c',c'> c",
    "suspension.regularity": "regular iff cosh t - alpha sinh t != 0",
    "suspension.structure": "e2(v) = v^2 - u^2 - 1, e2(u) = 2uv",
    "suspension.u": "u = omega_12(e3) = 0",
    "suspension.v": "v = -(sinh t - alpha cosh t)/(cosh t - alpha sinh t)",
    "suspension.warped_metric": "dF = (cosh t - alpha sinh t) dh, |F_t| = 1",
    "surface.connection_form": "d omega_34 = -K_perp omega_1 ^ omega_2",
    "dichotomy.horosphere_v": "v = 1 on horosphere suspensions",
    "dichotomy.horosphere_growth": "lambda(x, T)/lambda(x, 0) = e^T (unbounded scalar curvature)",
    "dichotomy.equidistant_u": "u = 0 on equidistant suspensions",
    "dichotomy.equidistant_v": "|v| < 1 on equidistant suspensions",
    "dichotomy.equidistant_tau": "tau >= -6 - 2 k_max^2/(1 - alpha^2)",
    "dichotomy.singular_time": "geodesic-sphere suspensions are singular at t = r",
    "q3.curvature": "K_Q = -1 + alpha^2",
    "q3.umbilic": "A = alpha I",
}


@dataclass
class CheckRow:
    id: str
    anchor: str
    residual: float
    threshold: float
    passed: bool
    compare: str = "<="
    status: str = "pass"
    note: str = ""

    def to_dict(self):
        d = asdict(self)
        for k in ("residual", "threshold"):
            if not math.isfinite(d[k]):
                d[k] = str(d[k])
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        for k in ("residual", "threshold"):
            d[k] = float(d[k])
        return cls(**d)


@dataclass
class SuiteReport:
    construction: str
    grid: tuple
    rows: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def row(self, check_id):
        for r in self.rows:
            if r.id == check_id:
                return r
        raise KeyError(check_id)

    def failures(self):
        return [r for r in self.rows if not r.passed]

    def to_dict(self):
        return {
            "construction": self.construction,
            "grid": list(self.grid),
            "pass": self.passed,
            "checks": [r.to_dict() for r in self.rows],
            "wall_time": self.wall_time,
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        return cls(d["construction"], tuple(d["grid"]),
                   [CheckRow.from_dict(r) for r in d["checks"]], d["wall_time"])


class _Rows:
    """Collects rows; each check runs in isolation."""

    def __init__(self, tol):
        self.tol = tol
        self.rows = []

    def value(self, check_id, key, residual, compare="<=", note=""):
        thr = self.tol[key]
        residual = float(residual)
        if compare == "<=":
            ok = residual <= thr
        else:
            ok = residual >= thr
        if math.isnan(residual):
            ok = False
        self.rows.append(CheckRow(check_id, ANCHORS.get(check_id, check_id), residual, thr, bool(ok),
                                  compare, "pass" if ok else "fail", note))

    def run(self, check_id, key, fn, compare="<="):
        try:
            out = fn()
        except (GeometryError, ValueError, ArithmeticError, np.linalg.LinAlgError) as exc:
            self.fail(check_id, key, f"{type(exc).__name__}: {exc}")
            return
        if isinstance(out, tuple):
            self.value(check_id, key, out[0], compare, out[1])
        else:
            self.value(check_id, key, out, compare)

    def fail(self, check_id, key, note):
        self.rows.append(CheckRow(check_id, ANCHORS.get(check_id, check_id), float("nan"),
                                  self.tol.get(key, float("nan")), False, "<=", "fail", note))

    def skip(self, check_id, key, note):
        self.rows.append(CheckRow(check_id, ANCHORS.get(check_id, check_id), 0.0,
                                  self.tol.get(key, float("nan")), True, "<=", "skip", note))

    def extend(self, rows):
        self.rows.extend(rows)


# -- construction lookup ----------------------------------------------------------

KINDS = ("generator", "associate", "suspension", "polar", "q3", "surface", "hypersurface")


def parse_construction(cid):
    if ":" not in cid:
        raise UnknownName(f"construction id must look like kind:name, got {cid!r}")
    kind, name = cid.split(":", 1)
    if kind not in KINDS:
        raise UnknownName(f"unknown construction kind {kind!r}; known: {', '.join(KINDS)}")
    return kind, name


def build_construction(cid, params=None, t_range=None):
    """Construct the object named by ``cid`` (see module docstring)."""
    params = dict(params or {})
    kind, name = parse_construction(cid)
    t_domain = tuple(t_range) if t_range is not None else (-2.0, 2.0)
    if kind in ("generator", "associate", "suspension", "polar"):
        gen = C.catalog_generator(name, **params)
        if kind == "generator":
            return gen
        if kind == "associate":
            return C.associate(gen)
        if kind == "suspension":
            return C.suspension(gen, t_domain)
        return C.polar_map(C.associate(gen), t_domain)
    if kind == "q3":
        makers = {"horosphere": lambda: C.horosphere_chart(),
                  "equidistant": lambda c=0.75: C.equidistant_chart(c),
                  "geodesic_sphere": lambda r=1.0: C.geodesic_sphere_chart(r)}
        if name not in makers:
            raise UnknownName(f"unknown umbilical hypersurface {name!r}")
        return makers[name](**{k: float(v) for k, v in params.items()})
    if kind == "surface":
        makers = C.surface_catalog()
        if name not in makers:
            raise UnknownName(f"unknown surface {name!r}")
        return makers[name](**{k: float(v) for k, v in params.items()})
    makers = {"totally_geodesic_h3": C.totally_geodesic_h3,
              "geodesic_sphere": C.geodesic_sphere_hypersurface}
    if name not in makers:
        raise UnknownName(f"unknown hypersurface {name!r}")
    return makers[name](**{k: float(v) for k, v in params.items()})


def interior_grid(domain, counts):
    """Grid with a margin of one cell from every face of the box."""
    return C.box_grid(domain, counts, margin=1.0)


# -- generator-level checks ---------------------------------------------------------

def _generator_rows(rows, gen, n=11):
    sweep = {}

    def get():
        if not sweep:
            sweep["s"] = C.validate_generator(gen, n, check_minimal=False)
        return sweep["s"]

    rows.run("generator.membership", "membership", lambda: get().membership)
    rows.run("generator.minimality", "minimality", lambda: get().mean_curvature)
    rows.run("generator.min_curvature", "min_curvature", lambda: get().min_curvature, ">=")


def _q3_rows(rows, q3, counts=(5, 5, 5)):
    f = q3.as_hypersurface()
    pts = interior_grid(f.domain, counts)

    def umbilic():
        reps = Hy.analyse_grid(f, pts)
        # orient the unit normal along eta before comparing with alpha I
        res = 0.0
        for r in reps:
            s = np.sign(L.minkowski_inner(r.xi, np.array(q3.eta(list(r.position)))))
            res = max(res, float(np.max(np.abs(s * r.A - q3.alpha * np.eye(3)))))
        return res

    def curvature():
        reps = Hy.analyse_grid(f, pts)
        res = 0.0
        for r in reps:
            k = r.k
            for i, j in ((0, 1), (0, 2), (1, 2)):
                res = max(res, abs(-1.0 + k[i] * k[j] - q3.sectional_curvature))
        return res

    def membership():
        x = f.chart.evaluate(pts)
        d = np.abs(L.minkowski_inner(x, x) + 1.0) / (1.0 + np.sum(x * x, axis=-1))
        return float(max(np.max(d), np.max(np.abs(L.minkowski_inner(x, q3.axis) + q3.alpha))))

    rows.run("q3.membership", "membership", membership)
    rows.run("q3.umbilic", "umbilic", umbilic)
    rows.run("q3.curvature", "umbilic", curvature)


# -- surface checks --------------------------------------------------------------------

def _frame_defect(r):
    F = np.column_stack([r.e1, r.e2, r.e3, r.e4, r.position])
    G = F.T @ L.ETA @ F
    return float(np.max(np.abs(G - np.diag([1.0, 1.0, 1.0, -1.0, 1.0]))))


def _surface_rows(rows, s, counts, rng):
    pts = interior_grid(s.domain, counts)
    cache = {}

    def reports():
        if "r" not in cache:
            cache["r"] = S.analyse_grid(s, pts)
        return cache["r"]

    def quadric():
        x = s.chart.evaluate(pts)
        return float(np.max(np.abs(L.minkowski_inner(x, x) - 1.0) / (1.0 + np.sum(x * x, axis=-1))))

    def connection():
        idx = rng.choice(len(pts), size=min(5, len(pts)), replace=False)
        return max(S.connection_form_residual(s, pts[i]) for i in sorted(idx))

    rows.run("surface.quadric", "quadric", quadric)
    rows.run("surface.frame", "frame", lambda: max(_frame_defect(r) for r in reports()))
    rows.run("surface.gauss", "frame",
             lambda: max(abs(r.K - 1 - np.linalg.det(r.A3) + np.linalg.det(r.A4)) for r in reports()))
    rows.run("surface.connection_form", "connection", connection)
    return reports


def _associate_rows(rows, gen, counts, rng):
    g = C.associate(gen)
    reports = _surface_rows(rows, g, counts, rng)
    pts = interior_grid(g.domain, counts)

    def laws():
        mj = gen.chart.jet(pts)
        nv = gen.normal.evaluate(pts)
        r3 = r4 = rec = 0.0
        for i, r in enumerate(reports()):
            _, AN = C.generator_shape_operator(gen, None, (mj.at(i), nv[i]))
            inv = np.linalg.inv(AN)
            a3 = r.coordinate_operator(r.A3)
            a4 = r.coordinate_operator(r.A4)
            r3 = max(r3, float(np.max(np.abs(a3 + gen.alpha * inv))))
            r4 = max(r4, float(np.max(np.abs(a4 - inv))))
            ev = np.sort(np.linalg.eigvals(AN).real)
            ew = np.sort(np.linalg.eigvalsh(r.A4))
            rec = max(rec, float(np.max(np.abs(ev * ew - 1.0))))
        return r3, r4, rec

    cache = {}

    def law(i):
        if "l" not in cache:
            cache["l"] = laws()
        return cache["l"][i]

    def associate_K():
        kq = gen.q3.sectional_curvature
        res = 0.0
        for p, r in zip(pts, reports()):
            kh = C.intrinsic_curvature(gen, p)
            res = max(res, abs(r.K - (1.0 - kq / (kq - kh))))
        return res

    def hyperplane():
        w, character = S.find_containing_hyperplane(g, pts)
        want = {C.HOROSPHERE: L.NULL, C.EQUIDISTANT: L.SPACELIKE, C.GEODESIC_SPHERE: L.TIMELIKE}
        ok = character == want[gen.q3.kind]
        return (0.0 if ok else 1.0), f"w is {character}"

    rows.run("associate.stationarity", "stationarity", lambda: max(r.mean_curvature_norm for r in reports()))
    rows.run("associate.normal_curvature", "normal_curvature", lambda: max(abs(r.Kperp) for r in reports()))
    rows.run("associate.law_A3", "associate_law", lambda: law(0))
    rows.run("associate.law_A4", "associate_law", lambda: law(1))
    rows.run("associate.reciprocity", "associate_law", lambda: law(2))
    rows.run("associate.curvature", "associate_K", associate_K)
    if gen.q3.sectional_curvature <= 0:
        rows.run("associate.curvature_lower_bound", "associate_K",
                 lambda: max(max(0.0, 1.0 - r.K) for r in reports()))
    else:
        rows.skip("associate.curvature_lower_bound", "associate_K", "K >= 1 only for K_Q <= 0")
    rows.run("associate.hyperplane", "membership", hyperplane)


# -- hypersurface checks ---------------------------------------------------------------

def _hyper_basic_rows(rows, f, pts):
    def quadric():
        x = f.chart.evaluate(pts)
        d = np.abs(L.minkowski_inner(x, x) + 1.0) / (1.0 + np.sum(x * x, axis=-1))
        return float(np.max(d)) if np.all(x[:, 0] > 0) else float("inf")

    rows.run("hypersurface.quadric", "quadric", quadric)


def _suspension_fields(s, pts, counts):
    """Reports and the Eq-law comparison data on the grid (one batch)."""
    gen = s.generator
    reps = Hy.analyse_grid(s, pts)
    k = C.principal_curvature_values(gen, pts[:, :2])
    return reps, k


def _structure_points(pts, n, rng):
    idx = rng.choice(len(pts), size=min(n, len(pts)), replace=False)
    return pts[np.sort(idx)]


def _suspension_rows(rows, s, counts, rng):
    gen = s.generator
    alpha = gen.alpha
    _generator_rows(rows, gen)
    pts = interior_grid(s.domain, counts)
    _hyper_basic_rows(rows, s, pts)

    tstar = C.singular_time(s)
    if tstar is not None:
        rows.value("suspension.regularity", "regularity", 0.0, ">=",
                   f"singular time t* = {tstar:.12g} inside t-range {s.t_domain}")
    else:
        ts = np.linspace(s.t_domain[0], s.t_domain[1], 401)
        rows.value("suspension.regularity", "regularity", float(np.min(np.abs(C.warp(alpha, ts)))), ">=")
    if tstar is not None:
        note = "suspension is singular in its t-range"
        for cid, key in (("suspension.minimality", "sum_k"), ("suspension.gk", "gk"),
                         ("suspension.curvature_law", "curvature_law"),
                         ("suspension.warped_metric", "metric_x"),
                         ("suspension.warped_metric_t", "metric_t"),
                         ("suspension.profile_coeffs", "fit_coeff"),
                         ("suspension.nullity_geodesic", "geodesic"), ("suspension.u", "u"),
                         ("suspension.v", "v"), ("suspension.structure", "structure"),
                         ("suspension.profile_fit", "fit"), ("fields.K", "field_laws"),
                         ("fields.Kperp", "field_laws"), ("fields.t_invariance", "field_laws")):
            rows.skip(cid, key, note)
        rows.extend(theorem_consistency(s, counts, rows.tol))
        return

    cache = {}

    def data():
        if "d" not in cache:
            cache["d"] = _suspension_fields(s, pts, counts)
        return cache["d"]

    def kvals():
        return np.array([r.k for r in data()[0]])

    rows.run("suspension.minimality", "sum_k", lambda: float(np.max(np.abs(kvals().sum(axis=1)))))
    rows.run("suspension.gk", "gk", lambda: float(np.max(np.abs(kvals().prod(axis=1)))))
    rows.run("suspension.curvature_law", "curvature_law",
             lambda: float(np.max(np.abs(kvals()[:, 0] - data()[1] / C.warp(alpha, pts[:, 2])))))
    rows.run("suspension.warped_metric", "metric_x", lambda: warped_metric_residual(s, pts)[2])
    rows.run("suspension.warped_metric_t", "metric_t", lambda: max(warped_metric_residual(s, pts)[:2]))

    def geodesic():
        xs = np.unique(pts[:, :2], axis=0)
        ts = np.linspace(s.t_domain[0], s.t_domain[1], 9)
        return max(Hy.nullity_geodesic_residual(s, x, ts) for x in xs)

    rows.run("suspension.nullity_geodesic", "geodesic", geodesic)

    sub = _structure_points(pts, 27, rng)
    fields = {}

    def uv():
        if "f" not in fields:
            fields["f"] = [Hy.uv_fields(s, p) for p in sub]
        return fields["f"]

    rows.run("suspension.u", "u", lambda: max(abs(r.u) for r in uv()))
    rows.run("suspension.v", "v",
             lambda: max(abs(r.v - analytic_v(alpha, p[2])) for p, r in zip(sub, uv())))
    rows.run("suspension.structure", "structure",
             lambda: max(max(Hy.structure_residuals(s, p)) for p in sub[:9]))

    def fit():
        xs = np.unique(pts[:, :2], axis=0)[::4]
        ts = np.linspace(s.t_domain[0], s.t_domain[1], 41)
        res, coeff = 0.0, 0.0
        k = C.principal_curvature_values(gen, xs)
        for x, kx in zip(xs, k):
            fr = Hy.lambda_profile_fit(s, x, ts)
            res = max(res, fr.residual)
            want = np.array(profile_coefficients(alpha, kx))
            got = np.array([fr.a, fr.b, fr.d])
            coeff = max(coeff, float(np.max(np.abs(got - want)) / np.max(np.abs(want))))
        return res, coeff

    cache_fit = {}

    def fit_part(i):
        if "f" not in cache_fit:
            cache_fit["f"] = fit()
        return cache_fit["f"][i]

    rows.run("suspension.profile_fit", "fit", lambda: fit_part(0))
    rows.run("suspension.profile_coeffs", "fit_coeff", lambda: fit_part(1))

    prop_pts = _structure_points(pts, 27, rng)
    rows.extend(prop5_consistency(s, prop_pts, rows.tol))
    rows.extend(theorem_consistency(s, counts, rows.tol))


def _polar_rows(rows, gen, s, counts, rng):
    g = C.associate(gen)
    psi = C.polar_map(g, s.domain[2])
    pts = interior_grid(psi.domain, counts)
    _hyper_basic_rows(rows, psi, pts)

    def coincidence():
        return float(np.max(np.abs(psi.chart.evaluate(pts) - s.chart.evaluate(pts))))

    def law():
        xs = pts[:, :2]
        sreps = S.analyse_grid(g, xs)
        hreps = Hy.analyse_grid(psi, pts)
        res = 0.0
        n = 0
        for p, sr, hr in zip(pts, sreps, hreps):
            det = np.linalg.det(sr.shape_operator(C.polar_direction(sr, p[2])))
            if det >= -1e-6:
                continue
            n += 1
            k = 1.0 / np.sqrt(-det)
            res = max(res, abs(hr.k[0] - k), abs(hr.k[2] + k), abs(hr.k[1]))
        return res, f"{n} regular points"

    rows.run("polar.coincidence", "coincidence", coincidence)
    rows.run("polar.curvature_law", "curvature_law", law)


def _hypersurface_rows(rows, f, counts):
    pts = interior_grid(f.domain, counts)
    _hyper_basic_rows(rows, f, pts)

    def consistency():
        res = 0.0
        for r in Hy.analyse_grid(f, pts):
            res = max(res, abs(r.GK - np.prod(r.k)), abs(r.tau + 6 + np.sum(r.k ** 2)))
        return res

    rows.run("hypersurface.invariants", "membership", consistency)


# -- shared analytic formulas ---------------------------------------------------------

def analytic_v(alpha, t):
    """``v`` along a nullity line of a suspension (``+d/dt`` gauge)."""
    return -(np.sinh(t) - alpha * np.cosh(t)) / (np.cosh(t) - alpha * np.sinh(t))


def profile_coefficients(alpha, k):
    """``(a, b, d)`` with ``(cosh t - alpha sinh t)^2 / k^2 = (a e^{2t} + b + d e^{-2t}) / 2``."""
    k2 = k * k
    return (1 - alpha) ** 2 / (2 * k2), (1 - alpha ** 2) / k2, (1 + alpha) ** 2 / (2 * k2)


def warped_metric_residual(s, pts):
    """``(|g_tt - 1|, |g_ti|, |g_ij - c(t)^2 h_ij|)`` maxima over ``pts``."""
    gen = s.generator
    mj = s.chart.jet(pts)
    J = mj.grad
    G = np.einsum("...ki,kl,...lj->...ij", J, L.ETA, J)
    hj = gen.chart.jet(pts[:, :2]).grad
    Gh = np.einsum("...ki,kl,...lj->...ij", hj, L.ETA, hj)
    c = C.warp(gen.alpha, pts[:, 2])
    return (float(np.max(np.abs(G[:, 2, 2] - 1.0))),
            float(np.max(np.abs(G[:, 2, :2]))),
            float(np.max(np.abs(G[:, :2, :2] - (c ** 2)[:, None, None] * Gh))))


def prop5_consistency(s, points, tol=None):
    """Curvatures of the associate against the suspension fields ``u, v, lambda``."""
    tol = {**THRESHOLDS, **(tol or {})}
    rows = _Rows(tol)
    g = C.associate(s.generator)
    points = np.asarray(points, dtype=float)
    store = {}

    def compute():
        if "v" in store:
            return store["v"]
        rk = rp = 0.0
        inv = 0.0
        for p in points:
            sr = S.analyse(g, p[:2])
            hr = Hy.uv_fields(s, p)
            rhs_k = 1.0 + (1.0 - hr.u ** 2 - hr.v ** 2) / hr.lam ** 2
            rhs_p = -2.0 * hr.u / hr.lam ** 2
            rk = max(rk, abs(sr.K - rhs_k))
            rp = max(rp, abs(sr.Kperp - rhs_p))
            # same right-hand sides at two other times of the nullity line
            lo, hi = s.t_domain
            for t in (lo + 0.2 * (hi - lo), hi - 0.2 * (hi - lo)):
                q = np.array([p[0], p[1], t])
                hq = Hy.uv_fields(s, q)
                inv = max(inv, abs(1.0 + (1.0 - hq.u ** 2 - hq.v ** 2) / hq.lam ** 2 - rhs_k),
                          abs(-2.0 * hq.u / hq.lam ** 2 - rhs_p))
        store["v"] = (rk, rp, inv)
        return store["v"]

    rows.run("fields.K", "field_laws", lambda: compute()[0])
    rows.run("fields.Kperp", "field_laws", lambda: compute()[1])
    rows.run("fields.t_invariance", "field_laws", lambda: compute()[2])
    return rows.rows


def theorem_consistency(s, counts=DEFAULT_HYPER_GRID, tol=None, T=3.0):
    """The complete-example dichotomy, checked on the suspension."""
    tol = {**THRESHOLDS, **(tol or {})}
    rows = _Rows(tol)
    gen = s.generator
    alpha = gen.alpha
    kind = gen.q3.kind
    if kind == C.GEODESIC_SPHERE:
        def tstar():
            t = C.singular_time(s, (0.0, 10.0))
            if t is None:
                raise ValueError("no singular time found")
            return abs(t - gen.q3.param), f"t* = {t:.15g}"
        rows.run("dichotomy.singular_time", "singular_time", tstar)
        return rows.rows

    pts = interior_grid(s.domain, counts)
    sub = pts[:: max(1, len(pts) // 27)]
    fields = {}

    def uv():
        if "f" not in fields:
            fields["f"] = [Hy.uv_fields(s, p) for p in sub]
        return fields["f"]

    if kind == C.HOROSPHERE:
        def growth():
            xs = np.unique(pts[:, :2], axis=0)
            res = 0.0
            for x in xs:
                l0 = Hy.hyper_frame(s, np.append(x, 0.0)).k[0]
                lT = Hy.hyper_frame(s, np.append(x, T)).k[0]
                res = max(res, abs(lT / l0 - np.exp(T)) / np.exp(T))
            return res

        rows.run("dichotomy.horosphere_v", "v", lambda: max(abs(r.v - 1.0) for r in uv()))
        rows.run("dichotomy.horosphere_growth", "ratio", growth)
        return rows.rows

    def vbound():
        lo, hi = s.t_domain
        bound = max(abs(analytic_v(alpha, lo)), abs(analytic_v(alpha, hi)))
        vmax = max(abs(r.v) for r in uv())
        if bound >= 1.0:
            return float("inf"), "analytic bound is not below 1"
        return max(0.0, vmax - bound), f"max|v| = {vmax:.6f}, analytic bound {bound:.6f} < 1"

    def tau():
        k_max = float(np.max(C.principal_curvature_values(gen, gen.grid(21))))
        lower = -6.0 - 2.0 * k_max ** 2 / (1.0 - alpha ** 2)
        taus = [r.tau for r in Hy.analyse_grid(s, pts)]
        return max(0.0, lower - min(taus)), f"min tau = {min(taus):.6f}, bound {lower:.6f}"

    rows.run("dichotomy.equidistant_u", "u", lambda: max(abs(r.u) for r in uv()))
    rows.run("dichotomy.equidistant_v", "v", vbound)
    rows.run("dichotomy.equidistant_tau", "tau", tau)
    return rows.rows


def oracle_crosscheck(cid, samples=5, params=None, t_range=None, tol=None, seed=0, fd_step=FD_STEP):
    """Jet derivatives against central differences on a construction's chart."""
    tol = {**THRESHOLDS, **(tol or {})}
    rows = _Rows(tol)
    try:
        obj = build_construction(cid, params, t_range)
    except (GeometryError, ValueError) as exc:
        rows.fail("construction", "membership", f"{type(exc).__name__}: {exc}")
        return rows.rows
    chart, domain = obj.chart, obj.domain
    rng = np.random.default_rng(seed)
    lo = np.array([b[0] for b in domain])
    hi = np.array([b[1] for b in domain])
    margin = 0.05 * (hi - lo)
    pts = rng.uniform(lo + margin, hi - margin, size=(samples, len(domain)))

    def compare():
        gmax = hmax = prod = 0.0
        for p in pts:
            jet = chart.jet(p)
            fd = fd_oracle(chart, p, h=fd_step, box=domain)
            gmax = max(gmax, float(np.max(np.abs(jet.grad - fd.grad) / np.maximum(np.abs(jet.grad), 1.0))))
            big = np.abs(jet.hess) >= 1e-3
            if np.any(big):
                hmax = max(hmax, float(np.max(np.abs(jet.hess - fd.hess)[big] / np.abs(jet.hess)[big])))
            # product rule: jet of the product expression vs product of jets
            pe = Expr(lambda xs: [chart(xs)[0] * chart(xs)[1]], chart.dim).jet(p)
            a, b = jet.component(0), jet.component(1)
            ab = a * b
            prod = max(prod, float(np.max(np.abs(pe.grad[0] - ab.grad))),
                       float(np.max(np.abs(pe.hess[0] - ab.hess))))
        return gmax, hmax, prod

    store = {}

    def part(i):
        if "c" not in store:
            store["c"] = compare()
        return store["c"][i]

    rows.run("oracle.grad", "oracle_grad", lambda: part(0))
    rows.run("oracle.hess", "oracle_hess", lambda: part(1))
    rows.run("oracle.product_rule", "coincidence", lambda: part(2))
    return rows.rows


def run_suite(cid, grid=None, tol_overrides=None, params=None, t_range=None, seed=0, fd_step=FD_STEP):
    """Run every applicable check of construction ``cid``."""
    t0 = time.perf_counter()
    tol = {**THRESHOLDS, **(tol_overrides or {})}
    rows = _Rows(tol)
    rng = np.random.default_rng(seed)
    try:
        obj = build_construction(cid, params, t_range)
        kind, _ = parse_construction(cid)
    except (GeometryError, ValueError, KeyError) as exc:
        rows.fail("construction", "membership", f"{type(exc).__name__}: {exc}")
        return SuiteReport(cid, tuple(grid or ()), rows.rows, time.perf_counter() - t0)

    surface_like = kind in ("associate", "surface", "generator")
    counts = tuple(grid) if grid else (DEFAULT_SURFACE_GRID if surface_like else DEFAULT_HYPER_GRID)
    want = 2 if surface_like else 3
    if len(counts) != want or min(counts) < 2:
        rows.fail("construction", "membership", f"grid must have {want} counts >= 2, got {counts}")
        return SuiteReport(cid, counts, rows.rows, time.perf_counter() - t0)
    rows.value("construction", "membership", 0.0)

    if kind == "generator":
        _generator_rows(rows, obj)
    elif kind == "associate":
        gen = C.catalog_generator(cid.split(":", 1)[1], **(params or {}))
        _generator_rows(rows, gen)
        _associate_rows(rows, gen, counts, rng)
    elif kind == "surface":
        _surface_rows(rows, obj, counts, rng)
    elif kind == "suspension":
        _suspension_rows(rows, obj, counts, rng)
    elif kind == "polar":
        gen = C.catalog_generator(cid.split(":", 1)[1], **(params or {}))
        s = C.suspension(gen, obj.domain[2])
        _polar_rows(rows, gen, s, counts, rng)
    elif kind == "q3":
        _q3_rows(rows, obj, counts)
    else:
        _hypersurface_rows(rows, obj, counts)

    if kind != "surface":
        rows.extend(oracle_crosscheck(cid, 3, params, t_range, tol, seed, fd_step))
    rows.rows.sort(key=lambda r: r.id)
    return SuiteReport(cid, counts, rows.rows, time.perf_counter() - t0)
