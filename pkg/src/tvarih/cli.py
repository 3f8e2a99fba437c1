"""Command-line interface.

Exit codes: 0 ok, 1 mathematical validation failure, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .divisors import hf_poset, is_complete_variety, is_proper, validate_fan
from .downgrade import DowngradeError, downgrade
from .examples import corpus_text
from .engine import EngineConfig, EngineError, poincare_complete, poincare_surface_closed_form, \
    poincare_threefold_closed_form
from .fans import FanError
from .polynomials import LaurentPolynomial
from .toric import g_cone, h_fan

OK, MATH_FAIL, USAGE = 0, 1, 2


class Failure(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("message", ""))
        self.code = code
        self.payload = payload


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise Failure(USAGE, {"error": "io", "message": str(exc)}) from exc


def _load_fan(args):
    return jsonio.parse(_read(args.file), args.policy)


def _validation_errors(e) -> list[str]:
    rep = validate_fan(e)
    errors = list(rep.errors)
    for i, d in enumerate(e.generators):
        if d.locus.complete:
            res = is_proper(d, e.curve)
            if not res.ok:
                errors.append(f"{d.name or f'divisor {i}'}: not proper: {res.reason}")
    if not errors and not is_complete_variety(e):
        errors.append("the variety is not complete")
    return list(dict.fromkeys(errors))


def _betti(p: LaurentPolynomial) -> dict:
    return {f"b{k}": c for k, c in enumerate(p.to_list())}


def cmd_validate(args) -> int:
    e = _load_fan(args)
    errors = _validation_errors(e)
    out = {"ok": not errors, "errors": errors, "divisors": len(e.divisors),
           "added_by_intersection": len(e.added)}
    _emit(args, out, "ok" if not errors else "\n".join(errors))
    return OK if not errors else MATH_FAIL


def cmd_poincare(args) -> int:
    e = _load_fan(args)
    errors = _validation_errors(e)
    if errors:
        raise Failure(MATH_FAIL, {"error": "validation", "message": "; ".join(errors)})
    rep = poincare_complete(e, EngineConfig())
    p = rep.poincare
    out = {"poincare": p.to_list(), "pretty": str(p), "betti": _betti(p),
           "diagnostics": {"rank": rep.rank, "genus": rep.genus, "refine_index": rep.refine_index,
                           "support": rep.support, "tail_rays": rep.tail_rays,
                           "fiber_rays": rep.fiber_rays,
                           "orbits_by_dim": {str(k): v for k, v in
                                             sorted(rep.hf.count_by_orbit_dim().items())} if rep.hf else {},
                           "base": str(rep.base)}}
    if args.trace:
        out["trace"] = [{"tau": [list(r) for r in o.element.tau.rays],
                         "coefficient_faces": {y: jsonio.emit_polyhedron(f) for y, f in o.element.coeff_faces},
                         "orbit_dim": o.orbit_dim, "corank": o.corank,
                         "relative_spectrum": str(o.relative_spectrum), "attractive": str(o.attractive),
                         "S": o.multiplicity.to_json(), "closure": str(o.closure),
                         "R": {str(b): rep.r(a, b).to_json() for b in rep.hf.above(a)}}
                        for a, o in enumerate(rep.orbits)]
    if args.closed_form_check:
        if rep.rank in (1, 2):
            cf = (poincare_surface_closed_form if rep.rank == 1 else poincare_threefold_closed_form)(e)
            out["closed_form"] = str(cf)
            if cf != p:
                _emit(args, out, f"{p}\nclosed form disagrees: {cf}")
                return MATH_FAIL
        else:
            out["closed_form"] = None
    _emit(args, out, str(p))
    return OK


def cmd_orbits(args) -> int:
    e = _load_fan(args)
    hf = hf_poset(e)
    nodes = [{"id": i, "orbit_dim": hf.orbit_dim(i),
              "tau": [list(r) for r in el.tau.rays],
              "coefficient_faces": {y: jsonio.emit_polyhedron(f) for y, f in el.coeff_faces}}
             for i, el in enumerate(hf.elements)]
    edges = hf.hasse_edges()
    if args.dot:
        lines = ["digraph orbits {"]
        for nd in nodes:
            lines.append(f'  n{nd["id"]} [label="dim {nd["orbit_dim"]}\\ntau {nd["tau"]}"];')
        for a, b in edges:
            lines.append(f"  n{b} -> n{a};")
        lines.append("}")
        print("\n".join(lines))
    else:
        print(jsonio.dumps({"nodes": nodes, "edges": [list(x) for x in edges]}), end="")
    return OK


def cmd_downgrade(args) -> int:
    e = _load_fan(args)
    if not 0 <= args.divisor < len(e.generators):
        raise Failure(USAGE, {"error": "usage", "message": f"no divisor {args.divisor}"})
    u = None
    if args.u:
        try:
            u = tuple(int(x) for x in args.u.split(","))
        except ValueError as exc:
            raise Failure(USAGE, {"error": "usage", "message": f"bad --u {args.u!r}"}) from exc
    try:
        out = downgrade(e.generators[args.divisor], e.curve, u)
    except DowngradeError as exc:
        raise Failure(MATH_FAIL, {"error": "downgrade", "message": str(exc)}) from exc
    print(jsonio.dumps(jsonio.emit(out)), end="")
    return OK


def cmd_toric_h(args) -> int:
    f = jsonio.build_fan(jsonio.loads(_read(args.file)))
    p = h_fan(f)
    _emit(args, {"h": p.to_list(), "pretty": p.ascending()}, p.ascending())
    return OK


def cmd_toric_g(args) -> int:
    c = jsonio.build_cone(jsonio.loads(_read(args.file)))
    p = g_cone(c)
    _emit(args, {"g": p.to_list(), "pretty": p.ascending()}, p.ascending())
    return OK


# documents shipped with the package and their expected polynomials
SELFCHECK = [
    ("poincare", "quadric.json", "t^6 + t^4 + t^2 + 1"),
    ("poincare", "p2-surface.json", "t^4 + t^2 + 1"),
    ("toric-g", "square-cone.json", "1 + t^2"),
    ("toric-g", "cube-cone.json", "1 + 4*t^2"),
    ("toric-h", "p2-fan.json", "1 + t^2 + t^4"),
    ("toric-h", "p1xp1-fan.json", "1 + 2*t^2 + t^4"),
]


def cmd_selfcheck(args) -> int:
    from .randomgen import RandomFanConfig, random_surface_fans

    failures = 0
    for kind, name, want in SELFCHECK:
        text = corpus_text(name)
        if kind == "poincare":
            got = str(poincare_complete(jsonio.parse(text)).poincare)
        elif kind == "toric-g":
            got = g_cone(jsonio.build_cone(jsonio.loads(text))).ascending()
        else:
            got = h_fan(jsonio.build_fan(jsonio.loads(text))).ascending()
        ok = got == want
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'} {kind} {name}: {got}" + ("" if ok else f" (expected {want})"))
    cfg = RandomFanConfig(seed=args.seed)
    bad = 0
    fans = random_surface_fans(cfg, args.samples)
    for e in fans:
        bad += poincare_complete(e).poincare != poincare_surface_closed_form(e)
    print(f"{'PASS' if not bad else 'FAIL'} random surfaces: {len(fans) - bad}/{len(fans)} agree with closed form")
    failures += bad > 0
    return OK if not failures else MATH_FAIL


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(jsonio.dumps(payload), end="")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tvarih", description=__doc__.splitlines()[0])
    ap.add_argument("--policy", choices=["genus0", "generic"], default=None,
                    help="override the document's principality policy")
    ap.add_argument("--json", action="store_true", help="machine-readable output and errors")
    sub = ap.add_subparsers(dest="command", required=True)
    # --json is also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    p = sub.add_parser("validate", parents=[common], help="check a divisorial fan")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("poincare", parents=[common], help="IH Poincare polynomial of a complete variety")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="include per-orbit terms (implies --json)")
    p.add_argument("--closed-form-check", action="store_true",
                   help="compare with the surface/threefold closed forms")
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("orbits", parents=[common], help="orbit poset of the contraction locus")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit a graphviz digraph")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("downgrade", parents=[common], help="quotient of one divisor by a one-parameter subgroup")
    p.add_argument("file")
    p.add_argument("--divisor", type=int, default=0)
    p.add_argument("--u", default=None, help="interior lattice direction, e.g. 1,2")
    p.set_defaults(func=cmd_downgrade)

    p = sub.add_parser("toric-h", parents=[common], help="h-polynomial of a complete fan")
    p.add_argument("file")
    p.set_defaults(func=cmd_toric_h)

    p = sub.add_parser("toric-g", parents=[common], help="g-polynomial of a cone")
    p.add_argument("file")
    p.set_defaults(func=cmd_toric_g)

    p = sub.add_parser("selfcheck", parents=[common], help="run the bundled examples")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selfcheck)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if getattr(args, "trace", False):
        args.json = True
    try:
        return args.func(args)
    except Failure as exc:
        code, payload = exc.code, exc.payload
    except jsonio.InputError as exc:
        code, payload = USAGE, exc.to_json()
    except (EngineError, DowngradeError, FanError, ValueError) as exc:
        code, payload = MATH_FAIL, {"error": type(exc).__name__, "message": str(exc)}
    if args.json:
        sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        where = f"{payload['where']}: " if payload.get("where") else ""
        sys.stderr.write(f"error: {where}{payload.get('message', payload)}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
