"""Command line front end.

Reads marked graphs from JSON files, runs the library, prints JSON with
every number as an exact rational string plus a decimal approximation.

Exit codes: 0 success, 1 I/O or parse failure, 2 domain validation
failure, 3 computation budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .candidates import enumerate_candidates
from .envelopes import reference_witness, star_system, starstar_system, support
from .errors import BudgetExceeded, CvnError, ParamOutOfRange
from .geodesics import (
    check_gluing,
    general_position,
    is_rigid,
    on_geodesic,
    piecewise_rigid_geodesic,
    ray_dimension_audit,
)
from .graphs import (
    graph_from_json,
    point_to_json,
    rose_type,
    theta_point,
    twisted_theta_point,
    validate_and_normalize,
)
from .metric import distance, stretch, stretch_report
from .polytope import Polytope, feasible
from .svg import envelope_vertices_json, render_envelope_svg
from .words import ConjClass, conj_class

_NAMES = "xyzuvw"


def _rat(q) -> dict:
    q = Fraction(q)
    return {"exact": f"{q.numerator}/{q.denominator}"
            if q.denominator != 1 else str(q.numerator),
            "approx": float(q)}


def parse_word(text: str, rank: int) -> ConjClass:
    """Accept 'x y^-1', 'xy^-1' or a JSON letter list like [1,-2]."""
    text = text.strip()
    if text.startswith("["):
        return conj_class(json.loads(text), rank)
    letters = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch not in _NAMES:
            raise ValueError(f"unknown generator {ch!r}")
        val = _NAMES.index(ch) + 1
        i += 1
        if text[i:i + 3] == "^-1":
            val = -val
            i += 3
        letters.append(val)
    return conj_class(letters, rank)


def _load_point(path: str):
    with open(path) as fh:
        return validate_and_normalize(graph_from_json(fh.read()))


def _separating_edges(p) -> list[str]:
    t = p.ttype
    out = []
    for e in t.edges:
        if e.is_loop():
            continue
        adj: dict = {v: set() for v in t.vertices}
        for f in t.edges:
            if f.id == e.id:
                continue
            adj[f.u].add(f.v)
            adj[f.v].add(f.u)
        seen = {t.vertices[0]}
        stack = [t.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(t.vertices):
            out.append(e.id)
    return out


def _emit(obj, json_path=None):
    text = json.dumps(obj, indent=2, sort_keys=True)
    print(text)
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(text + "\n")


def cmd_validate(args) -> int:
    p = _load_point(args.graph)
    if args.reduced:
        sep = _separating_edges(p)
        if sep:
            print(f"separating edge: {', '.join(sep)}", file=sys.stderr)
            return 2
    _emit({"ok": True, "normalized": point_to_json(p)})
    return 0


def cmd_candidates(args) -> int:
    p = _load_point(args.graph)
    out = []
    for c in enumerate_candidates(p.ttype):
        out.append({"word": str(c.word),
                    "letters": list(c.word.rep.letters),
                    "kind": c.kind})
    _emit({"candidates": out})
    return 0


def cmd_distance(args) -> int:
    a = _load_point(args.a)
    b = _load_point(args.b)
    d = distance(a, b, args.mode)
    _emit({"mode": d.mode, "stretch": _rat(d.lam), "log": d.log})
    return 0


def cmd_witnesses(args) -> int:
    a = _load_point(args.a)
    b = _load_point(args.b)
    rep = stretch_report(a, b)
    cw = sorted(rep.candidate_witnesses,
                key=lambda g: (len(g.rep), g.rep.letters))
    _emit({
        "stretch": _rat(rep.lam),
        "witnesses": [{"word": str(g), "letters": list(g.rep.letters)}
                      for g in cw],
        "per_candidate": {str(g): _rat(r)
                          for g, r in sorted(rep.per_candidate.items(),
                                             key=lambda kv: str(kv[0]))},
    })
    return 0


def cmd_envelope(args) -> int:
    a = _load_point(args.a)
    b = _load_point(args.b)
    slices = envelope_vertices_json(a, b, budget=args.budget)
    obj = {"stretch": _rat(stretch(a, b)),
           "witness": str(reference_witness(a, b)),
           "slices": slices}
    _emit(obj, args.json)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_envelope_svg(a, b, budget=args.budget))
    return 0


def cmd_support(args) -> int:
    a = _load_point(args.a)
    b = _load_point(args.b)
    sup = support(a, b, args.budget)
    _emit({"simplices": [
        {"edges": [e.id for e in t.edges],
         "labels": {e.id: list(e.label.letters) for e in t.non_tree_edges()}}
        for t in sup.simplices]})
    return 0


def cmd_geodesic(args) -> int:
    a = _load_point(args.a)
    b = _load_point(args.b)
    path = piecewise_rigid_geodesic(a, b, budget=args.budget)
    rigid = is_rigid(path, budget=args.budget)
    obj = {
        "breakpoints": [point_to_json(p) for p in path.breakpoints],
        "segment_witnesses": [sorted(str(g) for g in w)
                              for w in path.segment_witnesses],
        "rigid_segments": list(path.rigid_segments),
        "rigid": rigid,
        "stretch": _rat(stretch(a, b)),
    }
    _emit(obj, args.json)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_envelope_svg(a, b, path=path.breakpoints,
                                         budget=args.budget))
    return 0


def cmd_general_position(args) -> int:
    a = _load_point(args.a)
    b = _load_point(args.b)
    ok, cert = general_position(a, b, via=args.via)
    obj = {"general_position": ok}
    if cert is not None:
        obj["witness"] = str(cert.gamma)
        obj["strict_constraints"] = [list(s) for s in cert.strict]
    _emit(obj)
    return 0


def cmd_ray_audit(args) -> int:
    a = _load_point(args.graph)
    direction = [parse_word(w, a.ttype.rank) for w in args.direction]
    audit = ray_dimension_audit(a, direction, args.steps,
                                budget=args.budget)
    obj = {
        "points": [point_to_json(p) for p in audit.points],
        "crossings": list(audit.crossings),
        "dims": [{"i": i, "j": j, "dim": d}
                 for (i, j), d in sorted(audit.dims.items())],
        "stable_from": audit.stable_from,
    }
    _emit(obj, args.json)
    return 0


def _frac(text: str) -> Fraction:
    return Fraction(text)


def _default(value, fallback):
    return fallback if value is None else value


def _verify_a1(args):
    a0 = _default(args.a, Fraction(1, 2))
    delta = _default(args.delta, Fraction(1, 100))
    eps = _default(args.eps, Fraction(1, 10))
    if not (0 < eps and 0 < delta < a0 * eps and a0 + delta + eps < 1):
        raise ParamOutOfRange("need 0 < delta < a*eps and valid lengths")
    A = theta_point(a0 + delta, eps, 1 - (a0 + delta) - eps)
    C = twisted_theta_point(a0 - delta, eps, 1 - (a0 - delta) - eps)
    rank2 = 2
    xy_inv = conj_class([1, -2], rank2)
    xy = conj_class([1, 2], rank2)
    cw_ac = stretch_report(A, C).candidate_witnesses
    cw_ca = stretch_report(C, A).candidate_witnesses
    rose = rose_type(2)
    g1 = reference_witness(A, C)
    g2 = reference_witness(C, A)
    joint = (star_system(A, g1, rose) + starstar_system(C, g1, rose)
             + star_system(C, g2, rose) + starstar_system(A, g2, rose))
    both_ways = feasible(joint, 2)
    from .metric import conj_length

    checks = {
        "cw_a_to_c_is_xy_inverse": cw_ac == frozenset({xy_inv}),
        "cw_c_to_a_is_xy": cw_ca == frozenset({xy}),
        "no_common_rose_point": not both_ways,
    }
    return {
        "scenario": "A1",
        "params": {k: _rat(v) for k, v in
                   (("a", a0), ("delta", delta), ("eps", eps))},
        "ratio_x": _rat(conj_length(A, conj_class([1], 2))
                        / conj_length(C, conj_class([1], 2))),
        "ratio_xy": _rat(conj_length(A, xy) / conj_length(C, xy)),
        "checks": checks,
        "pass": all(checks.values()),
    }


def _verify_a2(args):
    from .graphs import barbell_point, rose_point

    a0 = _default(args.a, Fraction(1, 4))
    b0 = _default(args.b, Fraction(1, 4))
    c0 = _default(args.c, Fraction(3, 10))
    d0 = _default(args.d, Fraction(1, 5))
    if not (0 < a0 and 0 < b0 and a0 + b0 < 1 and 0 < c0 and 0 < d0
            and c0 + d0 < 1):
        raise ParamOutOfRange("lengths must be positive and sum below 1")
    if Fraction(a0, 1) / (c0 + d0) > (1 - a0 - b0) / (1 - c0):
        raise ParamOutOfRange("parameters fall in the mirrored branch; "
                              "swap the roles of the two loops")
    A = barbell_point(a0, b0, 1 - a0 - b0)
    C = twisted_theta_point(c0, d0, 1 - c0 - d0)
    lo = a0 / (1 - b0)
    hi = (c0 + d0) / (1 + d0)
    nonempty = lo <= hi
    result = {"scenario": "A2",
              "params": {k: _rat(v) for k, v in
                         (("a", a0), ("b", b0), ("c", c0), ("d", d0))},
              "interval": [_rat(lo), _rat(hi)],
              "checks": {"interval_nonempty": nonempty}}
    if nonempty:
        alpha = (lo + hi) / 2
        B = rose_point([alpha, 1 - alpha])
        result["midpoint"] = _rat(alpha)
        result["checks"]["forward"] = on_geodesic(A, B, C)
        result["checks"]["backward"] = on_geodesic(C, B, A)
    result["pass"] = all(result["checks"].values())
    return result


def _verify_r2i(args):
    A = theta_point(1, 1, 1)
    B = theta_point(2, 1, 1)
    C = theta_point(1, Fraction(1, 3), 1)
    x = conj_class([1], 2)
    y = conj_class([2], 2)
    xy_inv = conj_class([1, -2], 2)
    w_ab = stretch_report(A, B).candidate_witnesses
    w_bc = stretch_report(B, C).candidate_witnesses
    w_ca = stretch_report(C, A).candidate_witnesses
    checks = {
        "witnesses_a_b": {x, xy_inv} <= w_ab,
        "witnesses_b_c": {y, xy_inv} <= w_bc,
        "witnesses_c_a": {x, y} <= w_ca,
        "glue_at_b": bool(check_gluing(A, B, C)),
        "glue_at_c": bool(check_gluing(B, C, A)),
        "glue_at_a": bool(check_gluing(C, A, B)),
    }
    return {
        "scenario": "R2i",
        "stretches": {"a_to_b": _rat(stretch(A, B)),
                      "b_to_a": _rat(stretch(B, A))},
        "witness_sets": {"a_b": sorted(str(g) for g in w_ab),
                         "b_c": sorted(str(g) for g in w_bc),
                         "c_a": sorted(str(g) for g in w_ca)},
        "checks": checks,
        "pass": all(checks.values()),
    }


def cmd_verify_appendix(args) -> int:
    if args.which == "A1":
        result = _verify_a1(args)
    elif args.which == "A2":
        result = _verify_a2(args)
    else:
        result = _verify_r2i(args)
    _emit(result, args.json)
    return 0 if result["pass"] else 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cvn",
        description="Exact computations in rank n Outer Space with the "
                    "asymmetric Lipschitz metric.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a marked graph file")
    p.add_argument("graph")
    p.add_argument("--reduced", action="store_true",
                   help="also reject separating edges")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("candidates", help="list candidate loops")
    p.add_argument("graph")
    p.set_defaults(func=cmd_candidates)

    p = sub.add_parser("distance", help="one sided or symmetrized distance")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--mode", default="right",
                   choices=["right", "left", "symmetric"])
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("witnesses", help="maximally stretched candidates")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_witnesses)

    p = sub.add_parser("envelope", help="envelope polytope of a pair")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--svg")
    p.add_argument("--json")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_envelope)

    p = sub.add_parser("support", help="simplices meeting the envelope")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_support)

    p = sub.add_parser("geodesic", help="piecewise rigid geodesic")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--svg")
    p.add_argument("--json")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("general-position", help="general position test")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--via", default="out", choices=["out", "in"])
    p.set_defaults(func=cmd_general_position)

    p = sub.add_parser("ray-audit",
                       help="walk an out-envelope ray and record "
                            "envelope dimensions")
    p.add_argument("graph")
    p.add_argument("--direction", nargs="+", required=True,
                   help="words such as x y or 'xy^-1'")
    p.add_argument("--steps", type=int, default=2)
    p.add_argument("--json")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_ray_audit)

    p = sub.add_parser("verify-appendix",
                       help="re-run a worked scenario and report pass/fail")
    p.add_argument("which", choices=["A1", "A2", "R2i"])
    p.add_argument("--a", type=_frac)
    p.add_argument("--b", type=_frac)
    p.add_argument("--c", type=_frac)
    p.add_argument("--d", type=_frac)
    p.add_argument("--delta", type=_frac)
    p.add_argument("--eps", type=_frac)
    p.add_argument("--json")
    p.set_defaults(func=cmd_verify_appendix)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError, ZeroDivisionError,
            KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except CvnError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
