"""Command-line front end.

Exit codes: 0 success/pass, 1 check failure, 2 domain or geometry error
(including unwritable output), 64 usage error.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import constructions as C
from . import hypersurface as Hy
from . import surface as S
from . import verify as V
from .config import load_config, parse_counts
from .errors import (DomainError, GeometryError, IllConditionedFit, StencilOutOfDomain,
                     UnknownName)

EXIT_OK, EXIT_FAIL, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2, 64

SURFACE_KINDS = ("associate", "surface")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        # prefix matching would read a subcommand's --tol as --tol-alg/--tol-fd
        kwargs.setdefault("allow_abbrev", False)
        super().__init__(*args, **kwargs)

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- argument helpers -----------------------------------------------------------------

def parse_params(text):
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"parameters look like k=v,k=v; got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise UsageError(f"parameter {k.strip()!r} is not a number: {v!r}") from None
    return out


def parse_floats(text):
    try:
        return np.array([float(s) for s in text.split(",")])
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def parse_range(text, with_count=False):
    parts = text.split(":")
    try:
        if with_count and len(parts) == 3:
            return float(parts[0]), float(parts[1]), int(parts[2])
        if len(parts) == 2:
            lo, hi = float(parts[0]), float(parts[1])
            return (lo, hi, None) if with_count else (lo, hi)
    except ValueError:
        pass
    raise UsageError(f"expected a:b{':n' if with_count else ''}, got {text!r}")


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    raise TypeError(type(o).__name__)


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=False, default=_json_default)


def _resolve(cid):
    """Accept a bare generator name as shorthand for ``generator:name``."""
    return cid if ":" in cid else f"generator:{cid}"


def _check_point(domain, p):
    if len(p) != len(domain):
        raise UsageError(f"point needs {len(domain)} coordinates, got {len(p)}")
    for i, ((lo, hi), x) in enumerate(zip(domain, p)):
        if not lo <= x <= hi:
            raise DomainError(f"coordinate {i} = {x} outside [{lo}, {hi}]")


# -- commands ---------------------------------------------------------------------------

def catalog_entries():
    entries = []
    for name, (factory, defaults) in sorted(C.CATALOG.items()):
        gen = factory(**defaults)
        entries.append({
            "name": name,
            "params": defaults,
            "domain": [list(b) for b in gen.domain],
            "q3": gen.q3.kind,
            "constructions": [f"{k}:{name}" for k in ("generator", "associate", "suspension", "polar")],
        })
    return entries


def cmd_catalog(args, cfg, out):
    entries = catalog_entries()
    if args.construction:
        kind, name = V.parse_construction(_resolve(args.construction))
        if kind in ("generator", "associate", "suspension", "polar"):
            entries = [e for e in entries if e["name"] == name]
            if not entries:
                raise UnknownName(f"unknown generator {name!r}")
        else:
            V.build_construction(_resolve(args.construction))
            entries = [{"name": args.construction, "params": {}, "domain": None, "q3": None,
                        "constructions": [args.construction]}]
    if args.json:
        out.write(dumps(entries) + "\n")
    else:
        for e in entries:
            params = ", ".join(f"{k}={v:g}" for k, v in e["params"].items()) or "-"
            dom = " x ".join(f"[{lo:g}, {hi:g}]" for lo, hi in e["domain"] or [])
            out.write(f"{e['name']:<22} params: {params:<28} domain: {dom}  in {e['q3']}\n")
        if not args.construction:
            out.write("kinds: " + ", ".join(V.KINDS) + "  (construction ids are kind:name)\n")
    return EXIT_OK


def _empty_fields():
    return {"k": None, "GK": None, "tau": None, "lambda": None, "u": None, "v": None,
            "K": None, "Kperp": None}


def point_report(cid, p, params=None, t_range=None, field_step=Hy.FIELD_STEP):
    """JSON-ready per-point report for any construction id."""
    kind, _ = V.parse_construction(cid)
    obj = V.build_construction(cid, params, t_range)
    p = np.asarray(p, dtype=float)
    _check_point(obj.domain, p)
    d = _empty_fields()
    if kind in SURFACE_KINDS:
        r = S.analyse(obj, p)
        d.update(r.to_dict())
        d["mean_curvature_norm"] = r.mean_curvature_norm
        return d
    if kind == "generator":
        G, AN = C.generator_shape_operator(obj, p)
        k = float(np.max(np.linalg.eigvals(AN).real))
        d.update({"point": p.tolist(), "metric": G.tolist(),
                  "frames": {"h": obj.chart.evaluate(p).tolist(), "N": obj.normal.evaluate(p).tolist(),
                             "eta": obj.eta_chart.evaluate(p).tolist()},
                  "shape_operators": {"A_N": AN.tolist(), "A_eta": C.umbilical_shape_operator(obj, p).tolist()},
                  "k": [k, -k], "K": C.intrinsic_curvature(obj, p)})
        return d
    try:
        if obj.nullity_axis is None:
            raise StencilOutOfDomain("no nullity direction known")
        r = Hy.uv_fields(obj, p, field_step)
    except (StencilOutOfDomain, GeometryError):
        try:
            r = Hy.nullity_frame(obj, p)
        except GeometryError:
            r = Hy.hyper_frame(obj, p)
    d.update(r.to_dict())
    if kind == "suspension":
        sr = S.analyse(C.associate(obj.generator), p[:2])
        d["K"], d["Kperp"] = sr.K, sr.Kperp
    return d


def cmd_report(args, cfg, out):
    cid = _resolve(args.construction)
    t_range = parse_range(args.t_range) if args.t_range else None
    d = point_report(cid, parse_floats(args.point), parse_params(args.params), t_range, cfg.field_step)
    if args.json:
        out.write(dumps(d) + "\n")
    else:
        for key, value in d.items():
            out.write(f"{key}: {value}\n")
    return EXIT_OK


def cmd_check(args, cfg, out):
    cid = _resolve(args.construction)
    kind, _ = V.parse_construction(cid)
    grid = parse_counts(args.grid) if args.grid else (
        cfg.surface_grid if kind in SURFACE_KINDS + ("generator",) else cfg.hyper_grid)
    tol = cfg.tolerance_overrides()
    tol.update(parse_params(",".join(args.tol)) if args.tol else {})
    unknown = set(tol) - set(V.THRESHOLDS)
    if unknown:
        raise UsageError(f"unknown tolerance keys {sorted(unknown)}; known: {sorted(V.THRESHOLDS)}")
    t_range = parse_range(args.t_range) if args.t_range else None
    rep = V.run_suite(cid, grid, tol, parse_params(args.params), t_range, cfg.seed, cfg.fd_step)
    out.write(rep.to_json(indent=2) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


SWEEP_COLUMNS = ("t", "lambda", "v", "inv_lambda2", "fit_a", "fit_b", "fit_d", "fit_residual")


def sweep_rows(cid, x, t_range, params=None, field_step=Hy.FIELD_STEP):
    """Rows of a lambda-profile sweep along the nullity line through ``x``."""
    lo, hi, n = t_range
    n = 41 if n is None else n
    ts = np.linspace(lo, hi, n) if n > 0 else np.array([])
    kind, _ = V.parse_construction(cid)
    if kind not in ("suspension", "polar"):
        raise UsageError("sweep needs a suspension or polar construction")
    pad = 2 * field_step
    f = V.build_construction(cid, params, (lo - pad, hi + pad))
    fit = Hy.lambda_profile_fit(f, x, ts)
    _check_point(f.domain[:2], x)
    rows = []
    for t in ts:
        r = Hy.uv_fields(f, np.append(x, t), field_step)
        rows.append((t, r.lam, r.v, 1.0 / r.lam ** 2, fit.a, fit.b, fit.d, fit.residual))
    return rows


def cmd_sweep(args, cfg, out):
    cid = _resolve(args.construction)
    rows = sweep_rows(cid, parse_floats(args.x), parse_range(args.t_range, with_count=True),
                      parse_params(args.params), cfg.field_step)
    text = io.StringIO()
    w = csv.writer(text, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row in rows:
        w.writerow([repr(float(v)) for v in row])
    _emit(text.getvalue(), args.out, out, cfg.output_dir)
    return EXIT_OK


def project(x, projection="poincare", drop_axis=4):
    """Ball-model coordinates of hyperboloid points with one spatial axis dropped."""
    x = np.asarray(x, dtype=float)
    if projection == "poincare":
        denom = 1.0 + x[..., 0]
    elif projection == "klein":
        denom = x[..., 0]
    elif projection == "none":
        denom = np.ones(x.shape[:-1])
    else:
        raise UsageError(f"unknown projection {projection!r}")
    if projection != "none" and np.any(denom <= 0):
        raise DomainError("points are not on the upper hyperboloid sheet")
    if drop_axis not in (1, 2, 3, 4):
        raise UsageError("drop axis must be one of 1, 2, 3, 4")
    p = x[..., 1:] / denom[..., None]
    keep = [i for i in range(4) if i != drop_axis - 1]
    return p[..., keep]


def mesh_faces(counts):
    """Triangles (0-based) of a row-major vertex grid.

    For a 2-parameter grid every quad is split into two triangles. For a
    3-parameter grid ``(nu, nv, nt)`` the quads of the ``(u, v)`` slice at
    ``t_k`` are emitted for ``k = 0 .. nt - 2`` (one sheet per t-slab).
    """
    if len(counts) == 2:
        nu, nv = counts
        idx = lambda i, j: i * nv + j
        slabs = [None]
    else:
        nu, nv, nt = counts
        idx = lambda i, j, k: (i * nv + j) * nt + k
        slabs = range(nt - 1)
    faces = []
    for k in slabs:
        for i in range(nu - 1):
            for j in range(nv - 1):
                ids = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
                a, b, c, d = (idx(*q) if k is None else idx(*q, k) for q in ids)
                faces.append((a, b, c))
                faces.append((a, c, d))
    return faces


def mesh_data(cid, counts, params=None, t_range=None):
    obj = V.build_construction(cid, params, t_range)
    if len(counts) != len(obj.domain):
        raise UsageError(f"grid needs {len(obj.domain)} counts for {cid}")
    pts = C.box_grid(obj.domain, counts)
    return obj, pts, obj.chart.evaluate(pts)


def write_obj(stream, verts, faces):
    stream.write(f"# {len(verts)} vertices, {len(faces)} triangles\n")
    for v in verts:
        stream.write("v " + " ".join(f"{c:.12g}" for c in v) + "\n")
    for f in faces:
        stream.write("f " + " ".join(str(i + 1) for i in f) + "\n")


def vertex_curvatures(obj, kind, pts):
    """Per-vertex ``k1, k2, k3, tau`` (hypersurfaces) or ``K, Kperp`` (surfaces)."""
    rows = []
    if kind in SURFACE_KINDS:
        for p in pts:
            try:
                r = S.analyse(obj, p)
                rows.append((r.K, r.Kperp))
            except GeometryError:
                rows.append((np.nan, np.nan))
        return ("K", "Kperp"), rows
    if kind == "generator":
        return (), [() for _ in pts]
    mj = obj.chart.jet(pts)
    for n, p in enumerate(pts):
        try:
            r = Hy.hyper_frame(obj, p, mj.at(n))
            rows.append((*r.k, r.tau))
        except GeometryError:
            rows.append((np.nan,) * 4)
    return ("k1", "k2", "k3", "tau"), rows


def cmd_mesh(args, cfg, out):
    cid = _resolve(args.construction)
    kind, _ = V.parse_construction(cid)
    t_range = parse_range(args.t_range) if args.t_range else None
    counts = parse_counts(args.grid) if args.grid else (
        (21, 21) if kind in SURFACE_KINDS + ("generator",) else (21, 21, 9))
    obj, pts, xs = mesh_data(cid, counts, parse_params(args.params), t_range)
    fmt = args.format or ("csv" if args.out.lower().endswith(".csv") else "obj")
    text = io.StringIO()
    if fmt == "obj":
        projection = args.projection
        if kind in SURFACE_KINDS and projection != "none":
            raise UsageError("surfaces in de Sitter space need --projection none")
        write_obj(text, project(xs, projection, args.drop_axis), mesh_faces(counts))
    else:
        names, extra = vertex_curvatures(obj, kind, pts)
        w = csv.writer(text, lineterminator="\n")
        w.writerow(["x0", "x1", "x2", "x3", "x4", *names])
        for x, e in zip(xs, extra):
            w.writerow([repr(float(c)) for c in (*x, *e)])
    _emit(text.getvalue(), args.out, out, cfg.output_dir)
    return EXIT_OK


def _emit(text, path, out, output_dir="."):
    """Write to ``out`` for no path or ``-``; relative paths resolve against ``output_dir``."""
    if path in (None, "-"):
        out.write(text)
    else:
        with open(os.path.join(output_dir, path), "w") as fh:
            fh.write(text)


# -- entry point ---------------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="gkflat", description="Minimal GK-flat hypersurfaces of H^4 and their generators.")
    p.add_argument("--config", help="key=value configuration file")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol-alg", type=float)
    p.add_argument("--tol-fd", type=float)
    p.add_argument("--field-step", type=float)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("catalog", help="list constructions")
    c.add_argument("--json", action="store_true")
    c.add_argument("--construction")

    def common(q, required=True):
        q.add_argument("--construction", required=required, help="kind:name or a generator name")
        q.add_argument("--params", default="", help="k=v,k=v")
        q.add_argument("--t-range", help="a:b")

    r = sub.add_parser("report", help="geometry at one parameter point")
    common(r)
    r.add_argument("--point", required=True, help="comma-separated parameters")
    r.add_argument("--json", action="store_true")

    k = sub.add_parser("check", help="run the property suite (JSON, exit 0 iff pass)")
    common(k)
    k.add_argument("--grid", help="counts per axis, e.g. 9x9x9")
    k.add_argument("--tol", action="append", help="threshold override key=value (repeatable)")

    s = sub.add_parser("sweep", help="lambda profile along a nullity line (CSV)")
    s.add_argument("--construction", required=True)
    s.add_argument("--params", default="")
    s.add_argument("--x", required=True, help="surface parameters u,v")
    s.add_argument("--t-range", default="-2:2:41", help="a:b:n")
    s.add_argument("--out", help="output file (default stdout)")

    m = sub.add_parser("mesh", help="export a grid mesh (OBJ or CSV)")
    common(m)
    m.add_argument("--out", required=True)
    m.add_argument("--grid", help="counts per axis, default 21x21x9")
    m.add_argument("--projection", choices=("poincare", "klein", "none"), default="poincare")
    m.add_argument("--drop-axis", type=int, default=4)
    m.add_argument("--format", choices=("obj", "csv"))
    return p


COMMANDS = {"catalog": cmd_catalog, "report": cmd_report, "check": cmd_check,
            "sweep": cmd_sweep, "mesh": cmd_mesh}


VALUE_OPTIONS = ("--t-range", "--point", "--x")


def _glue_negative_values(argv):
    """Let ``--t-range -2:2`` through: argparse would read ``-2:2`` as an option."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1][:2].replace("-", "", 1)[:1] in "0123456789.":
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = load_config(args.config, flags={"seed": args.seed, "tol_alg": args.tol_alg,
                                              "tol_fd": args.tol_fd, "field_step": args.field_step})
    except (OSError, ValueError, KeyError) as exc:
        err.write(f"gkflat: configuration error: {exc}\n")
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, cfg, out)
    except (UsageError, UnknownName) as exc:
        err.write(f"gkflat: {exc}\n")
        return EXIT_USAGE
    except IllConditionedFit as exc:
        err.write(f"gkflat: {exc}\n")
        return EXIT_FAIL
    except (GeometryError, DomainError, StencilOutOfDomain, OSError, ValueError) as exc:
        err.write(f"gkflat: {type(exc).__name__}: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
