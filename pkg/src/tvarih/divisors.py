"""Curves, polyhedral divisors, divisorial fans and their orbit posets.

Points of the curve are opaque string labels. A divisor's locus is either the
whole (projective) curve or the complement of a finite set of labels; points
that are never named carry trivial coefficients everywhere.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .fans import Fan, FanError, fiber_fan as _fiber_fan, is_complete
from .polyhedra import NEG_INF, Cone, Polyhedron, eval_support, intersect, minkowski_sum

GENERIC = "__generic__"


class Principality(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class QDivisor:
    """Finite formal sum of points with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[str, object] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        out: dict[str, Fraction] = {}
        for y, c in items:
            out[y] = out.get(y, Fraction(0)) + Fraction(c)
        self.coeffs = {y: c for y, c in sorted(out.items()) if c}

    def degree(self) -> Fraction:
        return sum(self.coeffs.values(), Fraction(0))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        return QDivisor(list(self.coeffs.items()) + list(other.coeffs.items()))

    def __mul__(self, k):
        return QDivisor({y: c * k for y, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, QDivisor) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}[{y}]" for y, c in self.coeffs.items())


@dataclass(frozen=True)
class Curve:
    genus: int
    points: tuple[str, ...]
    policy: str = "genus0"
    table: tuple[QDivisor, ...] = ()

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if self.policy not in ("genus0", "generic", "table"):
            raise ValueError(f"unknown principality policy {self.policy!r}")
        if self.genus == 0 and self.policy != "genus0":
            object.__setattr__(self, "policy", "genus0")
        if self.genus > 0 and self.policy == "genus0":
            raise ValueError("genus0 policy needs genus 0")
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point labels")
        for d in self.table:
            if not d.is_integral() or d.degree() != 0:
                raise ValueError("table entries must be integral of degree 0")

    def with_points(self, labels: Iterable[str]) -> "Curve":
        extra = [y for y in labels if y not in self.points]
        if not extra:
            return self
        return Curve(self.genus, self.points + tuple(extra), self.policy, self.table)

    def fresh_label(self, taken: Iterable[str] = ()) -> str:
        used = set(self.points) | set(taken)
        k = 1
        while f"_g{k}" in used:
            k += 1
        return f"_g{k}"


def is_principal(div: QDivisor, curve: Curve) -> Principality:
    if div.is_zero():
        return Principality.YES
    if not div.is_integral() or div.degree() != 0:
        return Principality.NO
    if curve.policy == "genus0":
        return Principality.YES
    if curve.policy == "generic":
        return Principality.NO
    return Principality.YES if _in_integer_span(div, curve.table) else Principality.UNKNOWN


def _labels(divs: Sequence[QDivisor]) -> list[str]:
    return sorted({y for d in divs for y in d.coeffs})


def _in_rational_span(div: QDivisor, gens: Sequence[QDivisor]) -> bool:
    labels = _labels(list(gens) + [div])
    rows = [tuple(g.coeffs.get(y, 0) for y in labels) for g in gens]
    target = tuple(div.coeffs.get(y, 0) for y in labels)
    return la.rank(rows + [target], len(labels)) == la.rank(rows, len(labels))


def _in_integer_span(div: QDivisor, gens: Sequence[QDivisor]) -> bool:
    if not _in_rational_span(div, gens):
        return False
    labels = _labels(list(gens) + [div])
    # x in Z-span(G) iff (x, -1) lies in the saturation of the relation lattice
    cols = [tuple(g.coeffs.get(y, 0) for g in gens) + (-div.coeffs.get(y, 0),) for y in labels]
    k = len(gens) + 1
    ker = la.integer_kernel(cols, k)
    # the kernel is saturated; some integer combination has last coordinate 1 iff gcd is 1
    g = 0
    for v in ker:
        g = gcd(g, int(v[-1]))
    return g == 1


@dataclass(frozen=True)
class Locus:
    complete: bool = True
    excluded: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        if self.complete and self.excluded:
            raise ValueError("a complete locus excludes nothing")

    @classmethod
    def affine(cls, excluded: Iterable[str]) -> "Locus":
        return cls(False, frozenset(excluded))

    def contains(self, y: str) -> bool:
        return self.complete or y not in self.excluded

    def meet(self, other: "Locus", extra: Iterable[str] = ()) -> "Locus":
        excl = set(self.excluded) | set(other.excluded) | set(extra)
        if self.complete and other.complete and not excl:
            return Locus()
        return Locus.affine(excl)

    def relabel(self, mapping: Mapping[str, str]) -> "Locus":
        if self.complete:
            return self
        return Locus.affine(mapping.get(y, y) for y in self.excluded)


class PolyDivisor:
    """sigma-polyhedral divisor: tail cone, nontrivial coefficients, locus."""

    def __init__(self, tail: Cone, coefficients: Mapping[str, Polyhedron] = (),
                 locus: Locus | None = None, name: str | None = None):
        self.tail = tail
        self.locus = locus if locus is not None else Locus()
        self.name = name
        trivial = Polyhedron.from_cone(tail)
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        self.coeffs = {y: p for y, p in sorted(items)
                       if p != trivial and self.locus.contains(y)}
        self._trivial = trivial

    @property
    def rank(self) -> int:
        return self.tail.ambient_dim

    def coefficient(self, y: str) -> Polyhedron:
        return self.coeffs.get(y, self._trivial)

    @property
    def is_complete_locus(self) -> bool:
        return self.locus.complete

    @cached_property
    def key(self):
        return (self.tail.key, tuple((y, p.key) for y, p in self.coeffs.items()),
                self.locus.complete, tuple(sorted(self.locus.excluded)))

    def __eq__(self, other):
        return self is other or (isinstance(other, PolyDivisor) and self.key == other.key)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash(self.key)

    def __repr__(self):
        loc = "complete" if self.locus.complete else f"Y - {sorted(self.locus.excluded)}"
        cs = ", ".join(f"{y}: {p}" for y, p in self.coeffs.items())
        label = f"{self.name}: " if self.name else ""
        return f"PolyDivisor({label}tail={self.tail}, {{{cs}}}, {loc})"

    def support(self) -> list[str]:
        return list(self.coeffs)

    def relabel(self, mapping: Mapping[str, str]) -> "PolyDivisor":
        return PolyDivisor(self.tail, {mapping.get(y, y): p for y, p in self.coeffs.items()},
                           self.locus.relabel(mapping), self.name)

    def transform(self, rows: Sequence[Sequence]) -> "PolyDivisor":
        """Apply the linear map x -> rows . x to tail and coefficients."""
        return PolyDivisor(self.tail.image(rows),
                           {y: p.image(rows) for y, p in self.coeffs.items()},
                           self.locus, self.name)


@lru_cache(maxsize=100_000)
def degree(d: PolyDivisor) -> Polyhedron | None:
    """Sum of all coefficients; None (the empty marker) for affine loci."""
    if not d.locus.complete:
        return None
    out = Polyhedron.from_cone(d.tail)
    for p in d.coeffs.values():
        out = minkowski_sum(out, p)
    return out


def evaluate(d: PolyDivisor, m: Sequence) -> QDivisor:
    if not d.tail.dual().contains(m):
        raise ValueError(f"{tuple(m)} is not in the dual of the tail")
    out = {}
    for y, p in d.coeffs.items():
        v = eval_support(p, m)
        if v == NEG_INF:
            raise ValueError("coefficient unbounded below")
        out[y] = v
    return QDivisor(out)


@lru_cache(maxsize=100_000)
def intersect_divisors(a: PolyDivisor, b: PolyDivisor) -> PolyDivisor:
    tail = a.tail.intersect(b.tail)
    labels = sorted(set(a.coeffs) | set(b.coeffs))
    coeffs, empty = {}, []
    for y in labels:
        if not (a.locus.contains(y) and b.locus.contains(y)):
            continue
        p = intersect(a.coefficient(y), b.coefficient(y))
        if p is None:
            empty.append(y)
        else:
            coeffs[y] = p
    return PolyDivisor(tail, coeffs, a.locus.meet(b.locus, empty))


# --- properness --------------------------------------------------------------

@dataclass
class ProperResult:
    ok: bool
    reason: str = ""
    unknown: bool = False

    def __bool__(self):
        return self.ok


def critical_faces(d: PolyDivisor, deg: Polyhedron) -> list[Cone]:
    """Faces tau of the tail meeting the degree."""
    out = []
    for tau in d.tail.faces:
        if intersect(deg, Polyhedron.from_cone(tau)) is not None:
            out.append(tau)
    return out


def dual_face(tail: Cone, tau: Cone) -> Cone:
    """sigma^vee cap tau^perp."""
    return Cone.from_inequalities(list(tail.generators), list(tau.generators) or [],
                                  tail.ambient_dim)


def face_weights(d: PolyDivisor, tau: Cone) -> tuple[tuple, dict]:
    """(m0, w) with D(m)_y = <m, w_y> for all m in sigma^vee cap tau^perp."""
    m0 = dual_face(d.tail, tau).relative_interior_point()
    w = {y: p.face_minimizing(m0).vertices[0] for y, p in d.coeffs.items()}
    return m0, w


def is_proper(d: PolyDivisor, curve: Curve) -> ProperResult:
    if not d.locus.complete:
        return ProperResult(True)
    deg = degree(d)
    tail = d.tail
    if not all(tail.contains(v) for v in deg.vertices):
        return ProperResult(False, "degree is not contained in the tail")
    if deg.contains((0,) * d.rank):
        return ProperResult(False, "degree is not strictly contained in the tail")
    for tau in critical_faces(d, deg):
        _, w = face_weights(d, tau)
        basis = la.integer_kernel(list(tau.generators), d.rank)
        for m in basis:
            div = QDivisor({y: la.dot(m, wy) for y, wy in w.items()})
            status = _semi_principal(div, curve)
            if status is Principality.NO:
                return ProperResult(False, f"evaluation at {m} on face {tau} is not semi-principal")
            if status is Principality.UNKNOWN:
                return ProperResult(False, f"principality of the evaluation at {m} is unknown",
                                    unknown=True)
    return ProperResult(True)


def _semi_principal(div: QDivisor, curve: Curve) -> Principality:
    """Is some positive multiple of div principal?"""
    if div.degree() != 0:
        return Principality.NO
    if curve.policy == "genus0":
        return Principality.YES
    if curve.policy == "generic":
        return Principality.YES if div.is_zero() else Principality.NO
    if div.is_zero() or _in_rational_span(div, curve.table):
        return Principality.YES
    return Principality.UNKNOWN


# --- divisorial fans ---------------------------------------------------------

@dataclass
class ValidationReport:
    errors: list[str] = field(default_factory=list)
    added: list[PolyDivisor] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self):
        return self.ok


class DivisorialFan:
    """Divisorial fan over a curve; stored closed under intersections."""

    def __init__(self, curve: Curve, divisors: Iterable[PolyDivisor], rank: int | None = None):
        gens = list(divisors)
        if not gens:
            raise ValueError("a divisorial fan needs at least one divisor")
        self.rank = gens[0].rank if rank is None else rank
        extra = sorted({y for d in gens for y in d.locus.excluded} | {y for d in gens for y in d.coeffs})
        self.curve = curve.with_points(extra)
        self.generators = tuple(gens)
        self.divisors, self.added = _close(gens)

    def __repr__(self):
        return (f"DivisorialFan(rank={self.rank}, genus={self.curve.genus}, "
                f"{len(self.generators)} generators, {len(self.divisors)} after closure)")

    @property
    def genus(self) -> int:
        return self.curve.genus

    def support(self) -> list[str]:
        return support(self)

    def tail_fan(self) -> Fan:
        return tail_fan(self)

    def fiber_fan(self, y: str) -> Fan:
        return _fiber_fan(self, y)

    def complete_divisors(self) -> list[PolyDivisor]:
        return [d for d in self.divisors if d.locus.complete]

    def relabel(self, mapping: Mapping[str, str]) -> "DivisorialFan":
        curve = Curve(self.curve.genus, tuple(mapping.get(y, y) for y in self.curve.points),
                      self.curve.policy,
                      tuple(QDivisor({mapping.get(y, y): c for y, c in t.coeffs.items()})
                            for t in self.curve.table))
        return DivisorialFan(curve, [d.relabel(mapping) for d in self.generators], self.rank)

    def transform(self, rows: Sequence[Sequence]) -> "DivisorialFan":
        return DivisorialFan(self.curve, [d.transform(rows) for d in self.generators], len(rows))


def _close(gens: list[PolyDivisor]):
    seen = list(dict.fromkeys(gens))
    have = set(seen)
    added = []
    i = 0
    while i < len(seen):
        for j in range(i):
            x = intersect_divisors(seen[i], seen[j])
            if x not in have:
                have.add(x)
                seen.append(x)
                added.append(x)
        i += 1
    return tuple(seen), added


def support(e: DivisorialFan) -> list[str]:
    out = set()
    for d in e.divisors:
        out.update(y for y in d.coeffs if d.locus.contains(y))
    return sorted(out)


def tail_fan(e: DivisorialFan) -> Fan:
    return Fan([d.tail for d in e.divisors], e.rank)


def fiber_fan(e: DivisorialFan, y: str) -> Fan:
    return _fiber_fan(e, y)


def _check_points(e: DivisorialFan) -> list[str]:
    """Labels whose fiber data can differ from a generic point, plus one generic point."""
    return list(e.curve.points) + [GENERIC]


def validate_fan(e: DivisorialFan) -> ValidationReport:
    rep = ValidationReport(added=list(e.added))
    pts = set(e.curve.points)
    for i, d in enumerate(e.generators):
        tag = d.name or f"divisor {i}"
        if d.rank != e.rank:
            rep.errors.append(f"{tag}: lattice rank {d.rank} differs from {e.rank}")
            continue
        if not d.tail.is_strictly_convex:
            rep.errors.append(f"{tag}: tail is not strictly convex")
        for y, p in d.coeffs.items():
            if y not in pts:
                rep.errors.append(f"{tag}: unknown point label {y!r}")
            if p.recession_cone() != d.tail:
                rep.errors.append(f"{tag}: coefficient at {y} has recession cone != tail")
        if not d.locus.complete and not d.locus.excluded:
            rep.errors.append(f"{tag}: affine locus must exclude at least one point")
        res = is_proper(d, e.curve)
        if not res:
            rep.errors.append(f"{tag}: not proper ({res.reason})")
    if rep.errors:
        return rep
    divs = e.divisors
    try:
        tail_fan(e)
    except FanError as exc:
        rep.errors.append(f"tails do not form a fan: {exc}")
    for i in range(len(divs)):
        for j in range(i + 1, len(divs)):
            a, b = divs[i], divs[j]
            for y in sorted(set(a.coeffs) | set(b.coeffs)):
                if not (a.locus.contains(y) and b.locus.contains(y)):
                    continue
                p, q = a.coefficient(y), b.coefficient(y)
                x = intersect(p, q)
                if x is None:
                    continue
                if x not in set(p.faces) or x not in set(q.faces):
                    rep.errors.append(f"face relation fails at {y} between {a} and {b}")
            rep.errors.extend(_degree_relation(a, b) + _degree_relation(b, a))
    for y in _check_points(e):
        if not any(d.locus.contains(y) for d in divs):
            rep.errors.append(f"point {y} is not covered by any locus")
    return rep


def _degree_relation(a: PolyDivisor, b: PolyDivisor) -> list[str]:
    if not b.locus.complete:
        return []  # both sides are the empty marker
    lhs = degree(intersect_divisors(a, b))
    rhs = intersect(degree(b), Polyhedron.from_cone(a.tail.intersect(b.tail)))
    if lhs != rhs:
        return [f"degree relation fails for {a} and {b}"]
    return []


def is_complete_variety(e: DivisorialFan) -> bool:
    return all(is_complete(_fiber_fan(e, y)) for y in _check_points(e))


# --- orbit poset -------------------------------------------------------------

@dataclass(frozen=True)
class HFElement:
    tau: Cone
    coeff_faces: tuple  # sorted (label, Polyhedron) pairs, nontrivial ones only
    sources: tuple = ()

    @property
    def key(self):
        return (self.tau.key, tuple((y, p.key) for y, p in self.coeff_faces))

    def orbit_dim(self, n: int) -> int:
        return n - self.tau.dim

    def __repr__(self):
        cs = ", ".join(f"{y}: {p}" for y, p in self.coeff_faces)
        return f"HFElement(tau={self.tau}, {{{cs}}})"


class HFPoset:
    def __init__(self, elements: Sequence[HFElement], rank: int):
        self.rank = rank
        self.elements = tuple(sorted(elements, key=lambda e: (e.tau.dim, e.key)))
        self.index = {e.key: i for i, e in enumerate(self.elements)}
        k = len(self.elements)
        self._leq = [[_hf_leq(self.elements[a], self.elements[b]) for b in range(k)]
                     for a in range(k)]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leq(self, a: int, b: int) -> bool:
        return self._leq[a][b]

    def orbit_dim(self, a: int) -> int:
        return self.elements[a].orbit_dim(self.rank)

    def below(self, b: int) -> list[int]:
        return [a for a in range(len(self.elements)) if self._leq[a][b]]

    def above(self, a: int) -> list[int]:
        return [b for b in range(len(self.elements)) if self._leq[a][b]]

    def count_by_orbit_dim(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i in range(len(self.elements)):
            out[self.orbit_dim(i)] = out.get(self.orbit_dim(i), 0) + 1
        return out

    def hasse_edges(self) -> list[tuple[int, int]]:
        k = len(self.elements)
        edges = []
        for a in range(k):
            for b in range(k):
                if a != b and self._leq[a][b] and not any(
                        c not in (a, b) and self._leq[a][c] and self._leq[c][b] for c in range(k)):
                    edges.append((a, b))
        return edges


def _hf_leq(a: HFElement, b: HFElement) -> bool:
    if not b.tau.has_face(a.tau):
        return False
    fa, fb = dict(a.coeff_faces), dict(b.coeff_faces)
    for y in set(fa) | set(fb):
        pa = fa.get(y, Polyhedron.from_cone(a.tau))
        pb = fb.get(y, Polyhedron.from_cone(b.tau))
        if pa not in set(pb.faces):
            return False
    return True


def hf_poset(e: DivisorialFan) -> HFPoset:
    found: dict = {}
    for idx, d in enumerate(e.divisors):
        if not d.locus.complete:
            continue
        deg = degree(d)
        for tau in critical_faces(d, deg):
            m0 = dual_face(d.tail, tau).relative_interior_point()
            faces = []
            triv = Polyhedron.from_cone(tau)
            for y, p in d.coeffs.items():
                f = p.face_minimizing(m0)
                if f != triv:
                    faces.append((y, f))
            el = HFElement(tau, tuple(faces))
            prev = found.get(el.key)
            found[el.key] = HFElement(tau, tuple(faces),
                                      (prev.sources if prev else ()) + (idx,))
    return HFPoset(list(found.values()), e.rank)


def hyperface_divisor(e: DivisorialFan, el: HFElement) -> PolyDivisor:
    return PolyDivisor(el.tau, dict(el.coeff_faces), Locus())
