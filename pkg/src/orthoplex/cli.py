"""Command-line front end.

Subcommands:

  construct   emit a family member or parametrized orthocentric simplex
  analyze     full analysis (centers, shape flags, Euler/sphere data) of a
              simplex document read from a file or stdin
  lift-rect   realize an orthocentric simplex with interior orthocenter as
              the hypotenuse facet of a rectangular simplex
  verify      run the numerical verification suites

All input and output is JSON.  Keys are emitted sorted and floats use the
shortest round-trip representation, so documents are stable and diffable.
Exit codes: 0 ok, 1 input error, 2 verification failure.  The environment
variable ORTHOPLEX_TOL overrides the default relative tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .errors import InputError, OrthoplexError
from .numerics import TolerancePolicy
from . import centers
from . import families
from . import orthocentric as oc
from . import simplex as sx
from . import verify as vf

__all__ = ["main", "simplex_to_doc", "simplex_from_doc", "analysis_doc"]


def _policy_from_env(tol: float | None = None) -> TolerancePolicy:
    if tol is None:
        env = os.environ.get("ORTHOPLEX_TOL")
        if env:
            try:
                tol = float(env)
            except ValueError as exc:
                raise OrthoplexError(f"ORTHOPLEX_TOL={env!r} is not a number") from exc
    return TolerancePolicy(rel=tol) if tol is not None else TolerancePolicy()


def _pyify(obj):
    if isinstance(obj, dict):
        return {k: _pyify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_pyify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _pyify(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    return obj


def _dump(doc, compact: bool = False) -> str:
    if compact:
        return json.dumps(_pyify(doc), sort_keys=True, separators=(",", ":"))
    return json.dumps(_pyify(doc), sort_keys=True, indent=2)


def simplex_to_doc(s: sx.Simplex, label: str | None = None) -> dict:
    doc = {"dim": s.dim, "vertices": s.vertices.tolist()}
    if label:
        doc["metadata"] = {"label": label}
    return doc


def simplex_from_doc(doc: dict, policy: TolerancePolicy) -> sx.Simplex:
    if not isinstance(doc, dict) or "dim" not in doc or "vertices" not in doc:
        raise OrthoplexError("document must carry 'dim' and 'vertices'")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 2:
        raise OrthoplexError(f"'dim' must be an integer >= 2, got {dim!r}")
    return sx.from_vertices(dim, doc["vertices"], policy)


def analysis_doc(s: sx.Simplex, policy: TolerancePolicy) -> dict:
    """Full analysis: centers, shape predicates, orthocentric parameters
    when applicable, Euler-line and mid-face sphere data, facet radii."""
    report = centers.center_report(s, policy)
    shape = sx.shape_predicates(s, policy)
    facet_radii = [
        centers.circumcenter(sx.face(s, sx.facet_indices(s, i), policy))[1]
        for i in range(s.n)
    ]
    doc = {
        "dim": s.dim,
        "volume": sx.volume(s),
        "diameter": sx.diameter(s),
        "centers": {
            "centroid": report.centroid,
            "circumcenter": report.circumcenter,
            "circumradius": report.circumradius,
            "incenter": report.incenter,
            "inradius": report.inradius,
            "monge": report.monge,
            "orthocenter": report.orthocenter,
        },
        "coincident_pairs": [list(p) for p in report.coincident_pairs],
        "shape": {
            "is_regular": shape.is_regular,
            "is_equiareal": shape.is_equiareal,
            "is_equiradial": shape.is_equiradial,
            "has_well_distributed_edges": shape.has_well_distributed_edges,
        },
        "facet_circumradii": facet_radii,
        "orthocentric": report.orthocenter is not None,
        "ortho_params": None,
        "euler": None,
        "feuerbach": None,
    }
    if report.orthocenter is not None:
        try:
            p = oc.params_of(s, policy)
        except InputError:
            p = None  # parametrization degenerate at the active tolerance
        if p is not None:
            doc["ortho_params"] = {
                "bary": p.bary,
                "obtuseness": p.obtuseness,
                "class": p.klass,
            }
        euler = centers.euler_line(s, policy)
        doc["euler"] = {
            "ratio": euler.ratio,
            "collinearity_residual": euler.collinearity_residual,
            "coincident": euler.coincident,
        }
        ks = range(s.dim)
    else:
        ks = [s.dim - 1]
    doc["feuerbach"] = [
        {
            "k": sphere.k,
            "radius": sphere.radius,
            "max_residual": sphere.max_residual,
        }
        for sphere in (centers.feuerbach_sphere(s, k, policy) for k in ks)
    ]
    return doc


# ---------------------------------------------------------------------------
# subcommands


def _cmd_construct(args) -> int:
    policy = _policy_from_env(args.tol)
    kind = args.kind
    if kind == "regular":
        _need(args, "dim", "edge")
        s = families.regular(args.dim, args.edge, policy)
        label = f"regular-{args.dim}"
    elif kind == "ortho":
        _need(args, "bary")
        s = oc.construct(_floats(args.bary), args.obtuseness, policy)
        label = "ortho"
    elif kind == "kite":
        _need(args, "dim", "base_edge", "apex_edge")
        s = families.kite(
            families.KiteSpec(args.dim, args.base_edge, args.apex_edge), policy
        )
        label = f"kite-{args.dim}"
    elif kind == "rect":
        _need(args, "legs")
        legs = _floats(args.legs)
        s = families.rectangular(families.RectSpec(len(legs), tuple(legs)), policy)
        label = f"rect-{len(legs)}"
    else:  # equiradial
        _need(args, "dim", "m")
        s, _ = families.equiradial_general(args.dim, args.m, args.branch, policy)
        label = f"equiradial-{args.dim}-{args.m}-{args.branch}"
    text = _dump(simplex_to_doc(s, label), compact=args.json)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise OrthoplexError(f"construct {args.kind} requires --{name.replace('_', '-')}")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError as exc:
        raise OrthoplexError(f"could not parse float list {text!r}") from exc


def _read_doc(path: str | None) -> dict:
    raw = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise OrthoplexError(f"malformed JSON input: {exc}") from exc


def _cmd_analyze(args) -> int:
    policy = _policy_from_env(args.tol)
    s = simplex_from_doc(_read_doc(args.input), policy)
    print(_dump(analysis_doc(s, policy), compact=args.json))
    return 0


def _cmd_lift_rect(args) -> int:
    policy = _policy_from_env(args.tol)
    t = simplex_from_doc(_read_doc(args.input), policy)
    spec, lifted = families.lift_to_rectangular(t, policy)
    print(json.dumps({"legs": list(spec.legs)}), file=sys.stderr)
    print(_dump(simplex_to_doc(lifted, "lifted-rect"), compact=args.json))
    return 0


def _cmd_verify(args) -> int:
    policy = _policy_from_env(args.tol)
    names = vf.SUITE_NAMES if args.suite == "all" else (args.suite,)
    config = vf.SuiteConfig(
        suites=vf.canonical_suites(names),
        samples=args.samples,
        seed=args.seed,
        d_min=args.dim_min,
        d_max=args.dim_max,
        policy=policy,
    )
    report = vf.run_all(config)
    print(_dump(report.to_json_dict(timings=args.timings), compact=args.json))
    return 0 if report.passed else 2


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="orthoplex",
        description="Construct, analyze and verify orthocentric simplices.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="emit a simplex document")
    con.add_argument("kind", choices=["regular", "ortho", "kite", "rect", "equiradial"])
    con.add_argument("--dim", type=int)
    con.add_argument("--edge", type=float)
    con.add_argument("--bary", help="comma-separated orthocenter barycentrics")
    con.add_argument("--obtuseness", type=float, default=1.0,
                     help="|obtuseness| scale for ortho construction")
    con.add_argument("--base-edge", dest="base_edge", type=float)
    con.add_argument("--apex-edge", dest="apex_edge", type=float)
    con.add_argument("--legs", help="comma-separated leg lengths")
    con.add_argument("--m", type=int, help="size of the first coordinate group")
    con.add_argument("--branch", type=int, default=1, choices=[1, 2])
    con.add_argument("--out", help="output file (default stdout)")
    con.add_argument("--tol", type=float)
    con.add_argument("--json", action="store_true", help="compact single-line JSON")
    con.set_defaults(func=_cmd_construct)

    ana = sub.add_parser("analyze", help="analyze a simplex document")
    ana.add_argument("input", nargs="?", help="input file (default stdin)")
    ana.add_argument("--tol", type=float)
    ana.add_argument("--json", action="store_true", help="compact single-line JSON")
    ana.set_defaults(func=_cmd_analyze)

    lift = sub.add_parser("lift-rect", help="lift to a rectangular simplex")
    lift.add_argument("input", nargs="?", help="input file (default stdin)")
    lift.add_argument("--tol", type=float)
    lift.add_argument("--json", action="store_true", help="compact single-line JSON")
    lift.set_defaults(func=_cmd_lift_rect)

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("--suite", default="all",
                     help="suite name or 'all' (aliases: centers, euler, rect)")
    ver.add_argument("--samples", type=int, default=60)
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--dim-min", dest="dim_min", type=int, default=2)
    ver.add_argument("--dim-max", dest="dim_max", type=int, default=6)
    ver.add_argument("--timings", action="store_true",
                     help="include wall times (breaks byte determinism)")
    ver.add_argument("--tol", type=float)
    ver.add_argument("--json", action="store_true", help="compact single-line JSON")
    ver.set_defaults(func=_cmd_verify)

    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OrthoplexError, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
