"""Command-line interface.

Subcommands: analyze (full pipeline), ehrhart, triangulate, weights, lambda,
chow-test. Exit codes: 0 = certified polystable (or successful query),
1 = not certified / destabilizing, 2 = error. All rationals in JSON output
are "p/q" strings; reports are byte-identical across runs for a fixed seed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .ehrhart import ehrhart_polynomial, fo_vanishes, futaki_ono_FO, sum_polynomial
from .plfunc import AffinePiece, PLConvexFunction, envelope_from_values
from .polytope import build_polytope
from .serialize import dump_json, jsonable, parse_rational
from .stability import (
    NoCertificate,
    affine_vanishing_defect,
    chow_functional,
    evaluate_criteria,
    lambda_certificate,
)
from .triangulation import cone_triangulations, load_hints
from .weights import classify


def load_polytope(path):
    with open(path) as fp:
        data = json.load(fp)
    verts = data["vertices"]
    if "dim" in data and verts and len(verts[0]) != data["dim"]:
        raise ValueError("vertex length disagrees with declared dim")
    poly = build_polytope(verts, name=data.get("name", ""))
    lam = data.get("lambda")
    return poly, (parse_rational(lam) if lam is not None else None)


def load_hint_file(path):
    if path is None:
        return None
    with open(path) as fp:
        return load_hints(json.load(fp))


def load_function(path, poly=None, k=1):
    with open(path) as fp:
        data = json.load(fp)
    if "pieces" in data:
        pieces = [AffinePiece(tuple(parse_rational(g) for g in p["grad"]),
                              parse_rational(p["const"]))
                  for p in data["pieces"]]
        return PLConvexFunction(pieces)
    if "latticeValues" in data:
        if poly is None:
            raise ValueError("latticeValues mode needs a polytope")
        values = {}
        for key, val in data["latticeValues"].items():
            coords = tuple(int(t) for t in key.strip("() ").split(","))
            values[coords] = parse_rational(val)
        return envelope_from_values(poly, k, values)
    raise ValueError("function file needs 'pieces' or 'latticeValues'")


# -- fragments -----------------------------------------------------------------


def ehrhart_fragment(poly):
    E = ehrhart_polynomial(poly)
    s = sum_polynomial(poly)
    samples = []
    for j in range(poly.dim):
        ell = (tuple(1 if c == j else 0 for c in range(poly.dim)), 0)
        for k in (1, 2, 3):
            samples.append({
                "coordinate": j,
                "k": k,
                "value": futaki_ono_FO(poly, ell, k),
            })
    return {
        "ehrhart": list(E.coefficients),
        "sumPolynomial": [list(c) for c in s.coefficients],
        "foVanishes": fo_vanishes(poly),
        "foSamples": samples,
    }


def reflexivity_fragment(poly):
    r = poly.classify_reflexivity
    return {
        "weaklyReflexive": r["weaklyReflexive"],
        "c": r["c"],
        "reflexive": r["reflexive"],
        "symmetric": r["symmetric"],
        "fixedPoint": list(r["fixedPoint"]) if r["fixedPoint"] else None,
    }


def classification_fragment(poly, hints, k_max, dim_limit):
    if poly.dim > dim_limit:
        return None, {
            "class": "none",
            "skipped": True,
            "reason": "dimension %d exceeds classification limit %d"
                      % (poly.dim, dim_limit),
        }
    tris = cone_triangulations(poly, hints)
    report = classify(poly, tris, k_max=k_max)
    frag = {
        "vertices": [
            {k: v[k] for k in
             ("p", "alpha", "beta", "gamma", "small", "medium", "failing")}
            for v in report["vertices"]],
        "class": report["class"],
        "alpha": report["alpha"],
        "beta": report["beta"],
        "gamma": report["gamma"],
        "kMax": report["kMax"],
        "skipped": False,
    }
    return tris, frag


def lambda_fragment(poly, user_lambda, seed):
    if poly.dim > 4:
        try:
            cert = lambda_certificate(poly, user_lambda, seed=seed,
                                      estimate=False)
        except NoCertificate:
            return None, {"lambda": None, "basis": "unavailable",
                          "certifying": False}
    else:
        cert = lambda_certificate(poly, user_lambda, seed=seed)
    frag = {
        "lambda": cert["lambda"],
        "basis": cert["basis"],
        "certifying": cert["certifying"],
    }
    if "witness" in cert:
        frag["witness"] = [
            {"grad": list(p.grad), "const": p.const}
            for p in cert["witness"].pieces]
    return cert, frag


# -- commands -------------------------------------------------------------------


def _emit(args, report, text_lines):
    for line in text_lines:
        print(line)
    if args.json:
        with open(args.json, "w") as fp:
            dump_json(report, fp)


def _timed(label, fn, timings):
    t0 = time.perf_counter()
    out = fn()
    timings.append("[time] %s: %.3fs" % (label, time.perf_counter() - t0))
    return out


def cmd_analyze(args):
    poly, file_lambda = load_polytope(args.polytope)
    user_lambda = parse_rational(args.lam) if args.lam else file_lambda
    hints = load_hint_file(args.hints)
    timings = []
    report = {
        "name": poly.name,
        "dim": poly.dim,
        "vertices": [list(v) for v in poly.vertices],
        "options": {"kMax": args.k_max, "seed": args.seed},
    }
    report["ehrhart"] = _timed("ehrhart", lambda: ehrhart_fragment(poly), timings)
    report["reflexivity"] = _timed(
        "reflexivity", lambda: reflexivity_fragment(poly), timings)
    report["affineDefect"] = list(affine_vanishing_defect(poly))
    tris, cls_frag = _timed(
        "classification",
        lambda: classification_fragment(poly, hints, args.k_max,
                                        args.classify_dim_limit),
        timings)
    report["classification"] = cls_frag
    cert, lam_frag = _timed(
        "lambda", lambda: lambda_fragment(poly, user_lambda, args.seed),
        timings)
    report["lambda"] = lam_frag
    if cert is not None and not cls_frag.get("skipped"):
        criteria = _timed(
            "criteria",
            lambda: evaluate_criteria(poly, cert, cls_frag,
                                      report["ehrhart"]["foVanishes"]),
            timings)
        criteria["evaluated"] = True
    else:
        criteria = {"evaluated": False,
                    "reason": "classification skipped or no lambda available",
                    "certified": False}
    report["criteria"] = criteria

    lines = ["polytope %s (dim %d, %d vertices)"
             % (poly.name or args.polytope, poly.dim, len(poly.vertices))]
    lines.append("ehrhart: " + ", ".join(
        str(c) for c in report["ehrhart"]["ehrhart"]))
    lines.append("foVanishes: %s" % report["ehrhart"]["foVanishes"])
    r = report["reflexivity"]
    lines.append("weaklyReflexive: %s (c=%s), symmetric: %s"
                 % (r["weaklyReflexive"], r["c"], r["symmetric"]))
    lines.append("class: %s (gamma=%s)"
                 % (cls_frag["class"], cls_frag.get("gamma")))
    lines.append("lambda: %s (%s)" % (lam_frag["lambda"], lam_frag["basis"]))
    lines.append("certified polystable: %s" % criteria["certified"])
    lines.extend(timings)
    if args.diagram and tris is not None:
        from .figures import render_diagram

        render_diagram(poly, tris, args.diagram, k=min(args.k_max, 2))
        lines.append("diagram written to %s" % args.diagram)
    _emit(args, report, lines)
    return 0 if criteria["certified"] else 1


def cmd_ehrhart(args):
    poly, _ = load_polytope(args.polytope)
    frag = ehrhart_fragment(poly)
    lines = ["ehrhart: " + ", ".join(str(c) for c in frag["ehrhart"]),
             "foVanishes: %s" % frag["foVanishes"]]
    _emit(args, frag, lines)
    return 0


def cmd_triangulate(args):
    poly, _ = load_polytope(args.polytope)
    hints = load_hint_file(args.hints)
    tris = cone_triangulations(poly, hints)
    report = {"vertices": []}
    lines = []
    for i in sorted(tris):
        k = min(args.k_max, 2)
        count = len(tris[i].simplices_in(k))
        report["vertices"].append({
            "p": list(poly.vertices[i]),
            "simplicesInDilation": count,
            "k": k,
        })
        lines.append("cone at %s: %d simplices inside %d*Delta"
                     % (poly.vertices[i], count, k))
    if args.diagram:
        from .figures import render_diagram

        render_diagram(poly, tris, args.diagram, k=min(args.k_max, 2))
        lines.append("diagram written to %s" % args.diagram)
    _emit(args, report, lines)
    return 0


def cmd_weights(args):
    poly, _ = load_polytope(args.polytope)
    hints = load_hint_file(args.hints)
    _, frag = classification_fragment(poly, hints, args.k_max,
                                      args.classify_dim_limit)
    lines = []
    for v in frag.get("vertices", []):
        lines.append("vertex %s: (alpha, beta) = (%d, %d), gamma = %d"
                     % (tuple(v["p"]), v["alpha"], v["beta"], v["gamma"]))
    lines.append("class: %s" % frag["class"])
    _emit(args, frag, lines)
    return 0


def cmd_lambda(args):
    poly, file_lambda = load_polytope(args.polytope)
    user_lambda = parse_rational(args.lam) if args.lam else file_lambda
    _, frag = lambda_fragment(poly, user_lambda, args.seed)
    frag["affineDefect"] = list(affine_vanishing_defect(poly))
    lines = ["lambda: %s (%s, certifying=%s)"
             % (frag["lambda"], frag["basis"], frag["certifying"])]
    _emit(args, frag, lines)
    return 0


def cmd_chow_test(args):
    poly, _ = load_polytope(args.polytope)
    if not args.function:
        raise ValueError("chow-test needs --function")
    f = load_function(args.function, poly=poly, k=args.k)
    value = chow_functional(poly, f, args.k)
    report = {"k": args.k, "value": value, "destabilizing": value < 0}
    if value < 0:
        lines = ["%s < 0: destabilizing" % value]
    else:
        lines = ["%s >= 0: not destabilizing" % value]
    _emit(args, report, lines)
    return 1 if value < 0 else 0


def build_parser():
    p = argparse.ArgumentParser(
        prog="chowcert",
        description="Exact Chow-polystability certificates for lattice polytopes")
    sub = p.add_subparsers(dest="command", required=True)
    handlers = {
        "analyze": cmd_analyze,
        "ehrhart": cmd_ehrhart,
        "triangulate": cmd_triangulate,
        "weights": cmd_weights,
        "lambda": cmd_lambda,
        "chow-test": cmd_chow_test,
    }
    for name, fn in handlers.items():
        sp = sub.add_parser(name)
        sp.add_argument("polytope", help="polytope JSON file")
        sp.add_argument("--k-max", type=int, default=4, dest="k_max")
        sp.add_argument("--lambda", dest="lam", default=None,
                        help="rational lambda, e.g. 1/4")
        sp.add_argument("--hints", default=None,
                        help="triangulation hint JSON file")
        sp.add_argument("--json", default=None, help="write JSON report here")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--diagram", default=None,
                        help="write an SVG (2D) or OBJ (3D) diagram here")
        sp.add_argument("--classify-dim-limit", type=int, default=4,
                        dest="classify_dim_limit")
        if name == "chow-test":
            sp.add_argument("--function", default=None,
                            help="test-function JSON file")
            sp.add_argument("--k", type=int, default=1)
        sp.set_defaults(handler=fn)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except Exception as exc:  # module-level domain errors
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
