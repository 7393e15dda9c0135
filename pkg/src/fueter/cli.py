"""Command-line front end: reproducible verification runs with JSON/CSV output.

Every subcommand emits a single JSON envelope
{"command", "params", "results", "pass", "version"} (schema in
schemas/report.json), sorted keys, no timestamps — fixed inputs give
byte-identical reports.  Exit codes: 0 all checks within tolerance (queries
always exit 0, a negative verdict is a valid answer), 1 a tolerance check
failed (the failing assertion is named on stderr), 2 configuration error.

Worker caps: --threads, falling back to the FUETER_THREADS environment
variable.
"""

import argparse
import json
import os
import sys

import numpy as np

from . import __version__, quat
from .acceptance import run_all, format_line, _shell_points
from .cf import FDConfig, is_monogenic
from .cp1 import (BUMP_GRADE, QuadratureConfig, h1_dimension,
                  harmonic_representative, cohomology_coefficients, exact_form)
from .domains import parse_domain
from .fields import get_field, field_names, ScalarField
from .hull import (hull_contains, hull_distance, hull_witness, NotInHullError,
                   ImUnitSphereSampler)
from .penrose import (sharp, penrose_transform, penrose_transform_complex,
                      diagram_check, ClosednessError)
from .twistor import line_sweep, hull_contains_via_lines, hopf_grid

__all__ = ["main"]


class CheckFailure(RuntimeError):
    """A tolerance check failed; main() maps this to exit code 1."""


def _jsonable(o):
    if isinstance(o, dict):
        return {k: _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, np.ndarray):
        return _jsonable(o.tolist())
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, complex):
        return [o.real, o.imag]
    return o


def _emit(args, command, params, results, passed):
    env = _jsonable({"command": command, "params": params, "results": results,
                     "pass": bool(passed), "version": __version__})
    text = json.dumps(env, sort_keys=True, indent=2) + "\n"
    if getattr(args, "report", None):
        with open(args.report, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return env


def _parse_complex(s):
    try:
        return complex(s.replace(" ", ""))
    except ValueError:
        raise ValueError("cannot parse complex number from %r" % s)


def _parse_matrix(obj):
    arr = np.asarray(obj, dtype=float)
    if arr.ndim == 3 and arr.shape[-1] == 2 and arr.shape[-2] == 2:
        return arr[..., 0] + 1j * arr[..., 1]
    if arr.ndim == 2 and arr.shape[-1] == 2:
        return arr.astype(complex)
    raise ValueError("matrix must be a (2n, 2) nested list, entries either "
                     "numbers or [re, im] pairs")


def _parse_sigma(s):
    """A biquaternion point from JSON: {"x": [...], "y": [...]} or a matrix."""
    obj = json.loads(s)
    if isinstance(obj, dict) and "x" in obj and "y" in obj:
        x = np.asarray(obj["x"], dtype=float)
        y = np.asarray(obj["y"], dtype=float)
        return quat.BiquaternionPoint(x, y)
    if isinstance(obj, dict) and "matrix" in obj:
        return quat.BiquaternionPoint.from_matrix(_parse_matrix(obj["matrix"]))
    if isinstance(obj, list):
        return quat.BiquaternionPoint.from_matrix(_parse_matrix(obj))
    raise ValueError('sigma must be {"x": [...], "y": [...]}, '
                     '{"matrix": [...]}, or a bare matrix list')


def _parse_kv_spec(s, kind):
    """Parse 'name:key=value:key=value' fixture specs for cp1 coeffs."""
    parts = s.split(":")
    name, kvs = parts[0], parts[1:]
    out = {}
    for kv in kvs:
        if "=" not in kv:
            raise ValueError("bad %s option %r (expected key=value)" % (kind, kv))
        k, v = kv.split("=", 1)
        out[k.strip()] = v.strip()
    return name, out


def _sampler(args):
    count = getattr(args, "count", None)
    return ImUnitSphereSampler(count) if count else None


# ---------------------------------------------------------------------------
# handlers (return process exit code)
# ---------------------------------------------------------------------------

def _pair_field(name, n):
    field = get_field(name, n)
    if not isinstance(field, ScalarField):
        raise ValueError("%r is a matrix-extension field; this command needs "
                         "a pair field (see its restriction instead)" % name)
    return field


def _cmd_cf_check(args):
    field = _pair_field(args.field, args.n)
    rng = np.random.default_rng(args.seed)
    pts = _shell_points(rng, args.points, args.rmin, args.rmax, n=args.n)
    cfg = FDConfig(step=args.step, scheme=args.scheme)
    rep = is_monogenic(field, pts, tol=args.tol, cfg=cfg, threads=args.threads)
    _emit(args, "cf check",
          {"field": args.field, "n": args.n, "points": args.points,
           "seed": args.seed, "tol": args.tol, "rmin": args.rmin,
           "rmax": args.rmax, "scheme": args.scheme, "step": args.step},
          rep, rep["verdict"])
    if not rep["verdict"]:
        raise CheckFailure("max residual %.3e exceeds tol %.3e at %s"
                           % (rep["max_residual"], args.tol, rep["worst_point"]))
    return 0


def _cmd_hull(args):
    U = parse_domain(args.domain)
    pt = _parse_sigma(args.sigma)
    sampler = _sampler(args)
    params = {"domain": args.domain, "sigma": pt.tolist(),
              "count": getattr(args, "count", None)}
    if args.mode == "contains":
        q = hull_contains(pt, U, sampler=sampler)
        _emit(args, "hull contains", params, q.to_json(), True)
        return 0
    if args.mode == "distance":
        try:
            d = hull_distance(pt, U, sampler=sampler)
        except NotInHullError as e:
            _emit(args, "hull distance", params, {"error": str(e)}, False)
            raise CheckFailure("hull distance: %s" % e)
        _emit(args, "hull distance", params, {"distance": d}, True)
        return 0
    try:
        w, q = hull_witness(pt, U, sampler=sampler)
    except NotInHullError as e:
        _emit(args, "hull witness", params, {"error": str(e)}, False)
        raise CheckFailure("hull witness: %s" % e)
    _emit(args, "hull witness", params,
          {"witness": w.tolist(), "distance": q.inf_value / np.sqrt(2.0),
           "query": q.to_json()}, True)
    return 0


def _cmd_twistor(args):
    pt = _parse_sigma(args.sigma)
    if args.mode == "sweep":
        pts = line_sweep(pt, hopf_grid(args.nt, args.ntheta))
        params = {"sigma": pt.tolist(), "nt": args.nt, "ntheta": args.ntheta}
        if args.csv:
            dim = pts.shape[1]
            with open(args.csv, "w") as f:
                f.write(",".join("x%d" % i for i in range(dim)) + "\n")
                for row in pts:
                    f.write(",".join("%.17g" % v for v in row) + "\n")
            _emit(args, "twistor sweep", params,
                  {"points": len(pts), "csv": args.csv}, True)
        else:
            _emit(args, "twistor sweep", params,
                  {"points": len(pts), "sweep": pts.tolist()}, True)
        return 0
    U = parse_domain(args.domain)
    q = hull_contains_via_lines(pt, U, sampler=_sampler(args), return_query=True)
    _emit(args, "twistor hull-lines",
          {"domain": args.domain, "sigma": pt.tolist()}, q.to_json(), True)
    return 0


def _cmd_cp1(args):
    if args.mode == "dim":
        d = h1_dimension(args.k)
        print(d)
        if args.report:
            _emit(args, "cp1 dim", {"k": args.k}, {"dimension": d}, True)
        return 0
    if args.mode == "harmonic":
        a0 = _parse_complex(args.a0)
        a1 = _parse_complex(args.a1)
        c = cohomology_coefficients(harmonic_representative(a0, a1))
        err = float(max(abs(c[0] - a0), abs(c[1] - a1)))
        ok = err < args.tol
        _emit(args, "cp1 harmonic",
              {"a0": a0, "a1": a1, "tol": args.tol},
              {"coefficients": list(c), "roundtrip_error": err}, ok)
        if not ok:
            raise CheckFailure("harmonic roundtrip error %.3e exceeds %.3e"
                               % (err, args.tol))
        return 0
    # coeffs
    name, kv = _parse_kv_spec(args.form, "form")
    if name == "harmonic":
        w = harmonic_representative(_parse_complex(kv.get("a0", "1")),
                                    _parse_complex(kv.get("a1", "0")))
        if args.k != -3:
            raise ValueError("the harmonic fixture is a degree -3 form")
        cfg = None
    elif name == "exact":
        w = exact_form(args.k, p=int(kv.get("p", "0")), q=int(kv.get("q", "0")),
                       r_in=float(kv.get("rin", "0.5")),
                       r_out=float(kv.get("rout", "2.0")))
        cfg = BUMP_GRADE
    else:
        raise ValueError("unknown form fixture %r (use harmonic:... or exact:...)"
                         % name)
    c = cohomology_coefficients(w, cfg, check=False)
    _emit(args, "cp1 coeffs", {"k": args.k, "form": args.form},
          {"coefficients": list(c)}, True)
    return 0


def _cmd_penrose(args):
    rng = np.random.default_rng(args.seed)
    if args.mode == "complex":
        field = _pair_field(args.field, args.n)
        form = sharp(field)
        pt = _parse_sigma(args.sigma)
        params = {"field": args.field, "n": args.n, "sigma": pt.tolist(),
                  "tol": args.tol}
        try:
            out = penrose_transform_complex(form, pt)
        except (NotInHullError, ClosednessError, ValueError) as e:
            if isinstance(e, ValueError) and "extension" not in str(e):
                raise
            _emit(args, "penrose complex", params, {"error": str(e)}, False)
            raise CheckFailure("penrose complex: %s" % e)
        results = {"psi0": out[0], "psi1": out[1]}
        passed = True
        ext = getattr(field, "extension", None)
        if ext is not None:
            p0, p1 = ext.pair(pt.matrix)
            err = float(max(abs(out[0] - p0), abs(out[1] - p1)))
            results["extension_error"] = err
            passed = err < args.tol
        _emit(args, "penrose complex", params, results, passed)
        if not passed:
            raise CheckFailure("extension mismatch %.3e exceeds %.3e"
                               % (results["extension_error"], args.tol))
        return 0

    field = _pair_field(args.field, args.n)
    pts = _shell_points(rng, args.points, args.rmin, args.rmax, n=args.n)
    params = {"field": args.field, "n": args.n, "points": args.points,
              "seed": args.seed, "tol": args.tol, "rmin": args.rmin,
              "rmax": args.rmax}
    if args.mode == "diagram":
        rep = diagram_check(field, pts)
        ok = rep["max_discrepancy"] < args.tol
        _emit(args, "penrose diagram", params, rep, ok)
        if not ok:
            raise CheckFailure("diagram discrepancy %.3e exceeds %.3e"
                               % (rep["max_discrepancy"], args.tol))
        return 0
    try:
        res = penrose_transform(sharp(field), pts)
    except ClosednessError as e:
        _emit(args, "penrose %s" % args.mode, params, {"error": str(e)}, False)
        raise CheckFailure("closedness certificate: %s" % e)
    results = res.to_json()
    if args.mode == "forward":
        _emit(args, "penrose forward", params, results, True)
        return 0
    # roundtrip
    v = quat.real_to_ab(pts)
    exact = np.stack([np.asarray(field.pair0(v), dtype=complex),
                      np.asarray(field.pair1(v), dtype=complex)], axis=-1)
    err = float(np.max(np.abs(res.values - exact)))
    results["max_error"] = err
    ok = err < args.tol
    _emit(args, "penrose roundtrip", params, results, ok)
    if not ok:
        raise CheckFailure("roundtrip error %.3e exceeds %.3e" % (err, args.tol))
    return 0


def _cmd_verify(args):
    n_values = (args.n,) if args.n else (1, 2)
    criteria = None
    if args.criteria:
        criteria = [int(c) for c in args.criteria.split(",")]
    report = run_all(seed=args.seed, n_values=n_values, criteria=criteria)
    for rec in report["criteria"]:
        print(format_line(rec))
    print("OVERALL: %s" % ("PASS" if report["passed"] else "FAIL"))
    _emit(args, "verify all",
          {"n": args.n, "seed": args.seed, "criteria": args.criteria},
          report, report["passed"])
    if not report["passed"]:
        first = next(r for r in report["criteria"] if not r["passed"])
        raise CheckFailure("criterion %d: %s" % (first["id"], first["summary"]))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _build_parser():
    p = argparse.ArgumentParser(
        prog="fueter",
        description="Quaternionic-analysis toolkit: operator checks, monogenic "
                    "hulls, twistor lines, sphere-bundle cohomology, and the "
                    "integral transform.")
    p.add_argument("--threads", type=int, default=None,
                   help="cap worker threads (falls back to FUETER_THREADS)")
    sub = p.add_subparsers(dest="group", required=True)

    def common(sp):
        sp.add_argument("--report", default=None,
                        help="write the JSON report to this path instead of stdout")

    # cf
    cf = sub.add_parser("cf", help="operator residual checks").add_subparsers(
        dest="mode", required=True)
    ck = cf.add_parser("check", help="finite-difference monogenicity report")
    ck.add_argument("--field", required=True, choices=field_names())
    ck.add_argument("--n", type=int, default=1)
    ck.add_argument("--points", type=int, default=200)
    ck.add_argument("--seed", type=int, default=7)
    ck.add_argument("--tol", type=float, default=1e-5)
    ck.add_argument("--rmin", type=float, default=0.2)
    ck.add_argument("--rmax", type=float, default=5.0)
    ck.add_argument("--step", type=float, default=None)
    ck.add_argument("--scheme", choices=("central", "richardson"),
                    default="central")
    common(ck)
    ck.set_defaults(func=_cmd_cf_check)

    # hull
    hull = sub.add_parser("hull", help="monogenic-hull queries").add_subparsers(
        dest="mode", required=True)
    for mode in ("contains", "distance", "witness"):
        hp = hull.add_parser(mode)
        hp.add_argument("--domain", required=True)
        hp.add_argument("--sigma", required=True)
        hp.add_argument("--count", type=int, default=None,
                        help="imaginary-sphere sample count")
        common(hp)
        hp.set_defaults(func=_cmd_hull)

    # twistor
    tw = sub.add_parser("twistor", help="twistor-line geometry").add_subparsers(
        dest="mode", required=True)
    sw = tw.add_parser("sweep", help="swept base set of a line")
    sw.add_argument("--sigma", required=True)
    sw.add_argument("--nt", type=int, default=24)
    sw.add_argument("--ntheta", type=int, default=24)
    sw.add_argument("--csv", default=None)
    common(sw)
    sw.set_defaults(func=_cmd_twistor)
    hl = tw.add_parser("hull-lines", help="hull membership via line containment")
    hl.add_argument("--domain", required=True)
    hl.add_argument("--sigma", required=True)
    hl.add_argument("--count", type=int, default=None)
    common(hl)
    hl.set_defaults(func=_cmd_twistor)

    # cp1
    cp = sub.add_parser("cp1", help="sphere line-bundle cohomology").add_subparsers(
        dest="mode", required=True)
    co = cp.add_parser("coeffs", help="cohomology coefficients of a fixture form")
    co.add_argument("--k", type=int, default=-3)
    co.add_argument("--form", required=True,
                    help="harmonic:a0=..:a1=..  or  exact:p=..:q=..:rin=..:rout=..")
    common(co)
    co.set_defaults(func=_cmd_cp1)
    ha = cp.add_parser("harmonic", help="roundtrip check of the harmonic form")
    ha.add_argument("--a0", default="1")
    ha.add_argument("--a1", default="0")
    ha.add_argument("--tol", type=float, default=1e-6)
    common(ha)
    ha.set_defaults(func=_cmd_cp1)
    dm = cp.add_parser("dim", help="print dim H^1 for degree k")
    dm.add_argument("--k", type=int, required=True)
    common(dm)
    dm.set_defaults(func=_cmd_cp1)

    # penrose
    pe = sub.add_parser("penrose", help="integral-transform pipeline").add_subparsers(
        dest="mode", required=True)
    for mode, extras in (("roundtrip", True), ("forward", True),
                         ("diagram", True), ("complex", False)):
        pp = pe.add_parser(mode)
        pp.add_argument("--field", required=True, choices=field_names())
        pp.add_argument("--n", type=int, default=1)
        pp.add_argument("--tol", type=float, default=1e-4)
        pp.add_argument("--seed", type=int, default=7)
        if extras:
            pp.add_argument("--points", type=int, default=10)
            pp.add_argument("--rmin", type=float, default=0.6)
            pp.add_argument("--rmax", type=float, default=2.5)
        else:
            pp.add_argument("--sigma", required=True)
        common(pp)
        pp.set_defaults(func=_cmd_penrose)

    # verify
    ve = sub.add_parser("verify", help="acceptance suite").add_subparsers(
        dest="mode", required=True)
    va = ve.add_parser("all")
    va.add_argument("--n", type=int, default=None,
                    help="restrict multi-n criteria to this n")
    va.add_argument("--seed", type=int, default=7)
    va.add_argument("--criteria", default=None,
                    help="comma-separated criterion ids to run")
    common(va)
    va.set_defaults(func=_cmd_verify)

    return p


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None:
        if args.threads < 1:
            print("config error: --threads must be >= 1", file=sys.stderr)
            return 2
        os.environ["FUETER_THREADS"] = str(args.threads)
    try:
        return args.func(args)
    except CheckFailure as e:
        print("check failed: %s" % e, file=sys.stderr)
        return 1
    except (NotInHullError, ClosednessError) as e:
        print("check failed: %s" % e, file=sys.stderr)
        return 1
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as e:
        print("config error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
