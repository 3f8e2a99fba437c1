"""JSON documents for divisorial fans, cones and fans.

Rationals are written as integers or "p/q" strings so that every number
round-trips exactly. Output is canonical: sorted labels, sorted vertices and
no floating point anywhere.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .divisors import Curve, DivisorialFan, Locus, PolyDivisor, QDivisor
from .fans import Fan
from .polyhedra import Cone, Polyhedron
from .polynomials import LaurentPolynomial

SCHEMA_VERSION = 1


class InputError(ValueError):
    """Malformed document. ``where`` is a JSON path or a line/column position."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
        self.detail = message

    def to_json(self) -> dict:
        return {"error": "input", "where": self.where, "message": self.detail}


# --- numbers -----------------------------------------------------------------

def parse_rational(x: Any, where: str = "") -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"expected a rational, got {x!r}", where)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise InputError(f"expected an integer or a 'p/q' string, got {x!r}", where)


def parse_int(x: Any, where: str = "") -> int:
    if isinstance(x, int) and not isinstance(x, bool):
        return x
    raise InputError(f"expected an integer, got {x!r}", where)


def emit_rational(q) -> int | str:
    q = Fraction(q)
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _vector(x, n, where, integral=False) -> tuple:
    if not isinstance(x, list):
        raise InputError("expected a list", where)
    if n is not None and len(x) != n:
        raise InputError(f"expected length {n}, got {len(x)}", where)
    conv = parse_int if integral else parse_rational
    return tuple(conv(c, f"{where}[{i}]") for i, c in enumerate(x))


def _vectors(x, n, where, integral=False) -> list[tuple]:
    if not isinstance(x, list):
        raise InputError("expected a list of vectors", where)
    return [_vector(v, n, f"{where}[{i}]", integral) for i, v in enumerate(x)]


def _get(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise InputError("expected an object", where)
    if key not in obj:
        raise InputError(f"missing field {key!r}", where)
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise InputError(f"field {key!r} has the wrong type", f"{where}.{key}")
    return val


def loads(text: str | bytes) -> Any:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"not UTF-8: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]", re.S)


def dumps(obj: Any) -> str:
    """Indented, key-sorted JSON with lists of scalars kept on one line."""
    text = json.dumps(obj, indent=2, sort_keys=True)
    return _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text) + "\n"


# --- divisorial fans ---------------------------------------------------------

def build_curve(doc: dict, policy: str | None = None) -> Curve:
    where = "curve"
    genus = parse_int(_get(doc, "genus", where), f"{where}.genus")
    points = _get(doc, "points", where, list)
    for i, p in enumerate(points):
        if not isinstance(p, str):
            raise InputError("point labels must be strings", f"{where}.points[{i}]")
    raw = policy if policy is not None else doc.get("principality", "genus0" if genus == 0 else "generic")
    table: tuple = ()
    if isinstance(raw, dict):
        entries = _get(raw, "table", f"{where}.principality", list)
        table = tuple(QDivisor({y: parse_rational(c, f"{where}.principality.table[{i}].{y}")
                                for y, c in _mapping(e, f"{where}.principality.table[{i}]").items()})
                      for i, e in enumerate(entries))
        raw = "table"
    if raw not in ("genus0", "generic", "table"):
        raise InputError(f"unknown principality policy {raw!r}", f"{where}.principality")
    try:
        return Curve(genus, tuple(points), raw, table)
    except ValueError as exc:
        raise InputError(str(exc), where) from exc


def _mapping(x, where) -> dict:
    if not isinstance(x, dict):
        raise InputError("expected an object", where)
    return x


def build_divisor(doc: dict, n: int, points: set, where: str) -> PolyDivisor:
    tail_doc = _get(doc, "tail", where, dict)
    tail = Cone(_vectors(_get(tail_doc, "rays", f"{where}.tail", list), n, f"{where}.tail.rays", True), n)
    locus_doc = doc.get("locus", "complete")
    if locus_doc == "complete":
        locus = Locus()
    elif isinstance(locus_doc, dict) and isinstance(locus_doc.get("exclude"), list):
        excl = locus_doc["exclude"]
        for y in excl:
            if y not in points:
                raise InputError(f"unknown point {y!r}", f"{where}.locus.exclude")
        locus = Locus.affine(excl)
    else:
        raise InputError("locus must be 'complete' or {\"exclude\": [...]}", f"{where}.locus")
    coeffs = {}
    for y, c in _mapping(doc.get("coefficients", {}), f"{where}.coefficients").items():
        cw = f"{where}.coefficients.{y}"
        if y not in points:
            raise InputError(f"unknown point {y!r}", cw)
        verts = _vectors(_get(c, "vertices", cw, list), n, f"{cw}.vertices")
        if not verts:
            raise InputError("a coefficient needs at least one vertex", f"{cw}.vertices")
        rays = _vectors(c.get("rays", [list(r) for r in tail.rays]), n, f"{cw}.rays", True)
        p = Polyhedron(verts, rays, n)
        if p.recession_cone() != tail:
            raise InputError("recession cone differs from the tail", cw)
        coeffs[y] = p
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise InputError("name must be a string", f"{where}.name")
    return PolyDivisor(tail, coeffs, locus, name)


def build(doc: Any, policy: str | None = None) -> DivisorialFan:
    if not isinstance(doc, dict):
        raise InputError("top level must be an object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {version!r}", "schema_version")
    curve = build_curve(_get(doc, "curve", "", dict), policy)
    n = parse_int(_get(doc, "lattice_rank", ""), "lattice_rank")
    if n < 0:
        raise InputError("lattice_rank must be nonnegative", "lattice_rank")
    divs = _get(doc, "divisors", "", list)
    if not divs:
        raise InputError("empty divisors list", "divisors")
    pts = set(curve.points)
    gens = [build_divisor(d, n, pts, f"divisors[{i}]") for i, d in enumerate(divs)]
    return DivisorialFan(curve, gens, n)


def parse(text: str | bytes, policy: str | None = None) -> DivisorialFan:
    return build(loads(text), policy)


def load(path, policy: str | None = None) -> DivisorialFan:
    with open(path, "rb") as fh:
        return parse(fh.read(), policy)


def emit_polyhedron(p: Polyhedron) -> dict:
    return {"vertices": [[emit_rational(x) for x in v] for v in p.vertices],
            "rays": [list(r) for r in p.rays]}


def emit_divisor(d: PolyDivisor) -> dict:
    out: dict = {"tail": {"rays": [list(r) for r in d.tail.rays]},
                 "locus": "complete" if d.locus.complete else {"exclude": sorted(d.locus.excluded)},
                 "coefficients": {y: emit_polyhedron(p) for y, p in sorted(d.coeffs.items())}}
    if d.name:
        out["name"] = d.name
    return out


def emit_curve(c: Curve) -> dict:
    pol: Any = c.policy
    if c.policy == "table":
        pol = {"table": [{y: emit_rational(q) for y, q in t.coeffs.items()} for t in c.table]}
    return {"genus": c.genus, "points": list(c.points), "principality": pol}


def emit(e: DivisorialFan) -> dict:
    return {"schema_version": SCHEMA_VERSION, "curve": emit_curve(e.curve),
            "lattice_rank": e.rank, "divisors": [emit_divisor(d) for d in e.generators]}


# --- cones, fans, polynomials ------------------------------------------------

def build_cone(doc: Any) -> Cone:
    rays = _vectors(_get(doc, "rays", "", list), None, "rays", True)
    n = doc.get("dim", len(rays[0]) if rays else None)
    if n is None:
        raise InputError("a cone without rays needs 'dim'", "dim")
    rays = _vectors(doc["rays"], n, "rays", True)
    return Cone(rays, n)


def build_fan(doc: Any) -> Fan:
    rays = _vectors(_get(doc, "rays", "", list), None, "rays", True)
    n = doc.get("dim", len(rays[0]) if rays else 0)
    rays = _vectors(doc["rays"], n, "rays", True)
    cones = []
    for i, c in enumerate(_get(doc, "cones", "", list)):
        idx = _vector(c, None, f"cones[{i}]", True)
        for j in idx:
            if not 0 <= j < len(rays):
                raise InputError(f"ray index {j} out of range", f"cones[{i}]")
        cones.append(Cone([rays[j] for j in idx], n))
    return Fan(cones, n)


def emit_fan(f: Fan) -> dict:
    rays = sorted({r for c in f.cones for r in c.rays})
    pos = {r: i for i, r in enumerate(rays)}
    return {"dim": f.ambient_dim, "rays": [list(r) for r in rays],
            "cones": [sorted(pos[r] for r in c.rays) for c in f.maximal_cones]}


def emit_polynomial(p: LaurentPolynomial) -> dict:
    out: dict = {"pretty": str(p)}
    if p.is_polynomial() and p.is_integral():
        out["coefficients"] = p.to_list()
    else:
        out["laurent"] = {k: emit_rational(v) for k, v in p.to_json().items()}
    return out
