"""Intersection cohomology Poincare polynomials of complexity-one T-varieties.

The top-level entry is :func:`poincare_complete`. It starts from the formula for
the contraction-free model and subtracts, orbit by orbit, the defect caused by
the contraction map. The defects are local quantities computed from affine
pieces, which sends the computation back to a projective variety of smaller
rank via :mod:`tvarih.downgrade`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import linalg as la
from .divisors import (Curve, DivisorialFan, HFElement, HFPoset, Locus, PolyDivisor,
                       Principality, QDivisor, degree, hf_poset,
                       hyperface_divisor, is_principal, support)
from .downgrade import downgrade
from .fans import Fan, cayley_cone, is_complete, ray_count, star_quotient
from .polyhedra import Cone, Polyhedron
from .polynomials import ONE, LaurentPolynomial, T
from .toric import g_cone, h_fan


class EngineError(RuntimeError):
    """An internal consistency check failed (bad input or a bug)."""


@dataclass(frozen=True)
class EngineConfig:
    u: tuple | None = None            # explicit downgrade direction (used when the rank fits)
    direction: str = "sum"            # "sum": sum of tail rays; "shifted": 2*sum + first ray
    strict: bool = True               # enforce positivity/symmetry/palindromy checks
    refine: bool = True               # rescale the lattice before using hyperfaces


DEFAULT = EngineConfig()


# --- incidence algebra -------------------------------------------------------

class IncidenceFunction:
    """Function on comparable pairs (a, b), a <= b, of a finite poset."""

    def __init__(self, size: int, leq: Callable[[int, int], bool], values: dict | None = None):
        self.size = size
        self.leq = leq
        self.values = {k: v for k, v in (values or {}).items() if v}
        for a, b in self.values:
            if not leq(a, b):
                raise ValueError(f"value on incomparable pair {(a, b)}")

    def __call__(self, a: int, b: int) -> LaurentPolynomial:
        return self.values.get((a, b), LaurentPolynomial())

    @classmethod
    def identity(cls, size, leq):
        return cls(size, leq, {(a, a): ONE for a in range(size)})

    def order(self) -> list[int]:
        """A linear extension of the poset."""
        return sorted(range(self.size),
                      key=lambda b: sum(1 for a in range(self.size) if self.leq(a, b)))

    def __mul__(self, other: "IncidenceFunction") -> "IncidenceFunction":
        out = {}
        for a in range(self.size):
            for b in range(self.size):
                if not self.leq(a, b):
                    continue
                acc = LaurentPolynomial()
                for c in range(self.size):
                    if self.leq(a, c) and self.leq(c, b):
                        acc = acc + self(a, c) * other(c, b)
                out[(a, b)] = acc
        return IncidenceFunction(self.size, self.leq, out)

    def __eq__(self, other):
        return isinstance(other, IncidenceFunction) and self.values == other.values

    def is_identity(self) -> bool:
        return self == IncidenceFunction.identity(self.size, self.leq)


def _unit_inverse(p: LaurentPolynomial) -> LaurentPolynomial:
    if len(p.coeffs) != 1:
        raise EngineError(f"diagonal value {p} is not a unit")
    (e, c), = p.coeffs.items()
    if c not in (1, -1):
        raise EngineError(f"diagonal value {p} is not a unit")
    return LaurentPolynomial({-e: c})


def incidence_invert(alpha: IncidenceFunction) -> IncidenceFunction:
    """Two-sided inverse, by triangular substitution along a linear extension."""
    n = alpha.size
    order = alpha.order()
    inv_diag = {b: _unit_inverse(alpha(b, b)) for b in range(n)}
    out: dict = {}
    for a in range(n):
        out[(a, a)] = inv_diag[a]
        for b in order:
            if b == a or not alpha.leq(a, b):
                continue
            acc = LaurentPolynomial()
            for c in order:
                if c == b:
                    break
                if alpha.leq(a, c) and alpha.leq(c, b):
                    acc = acc + out.get((a, c), LaurentPolynomial()) * alpha(c, b)
            out[(a, b)] = -acc * inv_diag[b]
    return IncidenceFunction(n, alpha.leq, out)


def r_function(hf: HFPoset) -> IncidenceFunction:
    """R(O1, O2) = t^(-dim O1) g(tau_O2 / tau_O1; t^2)."""
    vals = {}
    for a in range(len(hf)):
        for b in hf.above(a):
            ta, tb = hf.elements[a].tau, hf.elements[b].tau
            vals[(a, b)] = T ** (-hf.orbit_dim(a)) * g_cone(star_quotient(tb, ta))
    return IncidenceFunction(len(hf), hf.leq, vals)


# --- affine pieces -----------------------------------------------------------

def _genus_factor(rho: int, r: int) -> LaurentPolynomial:
    """(1 - r) t^2 + 2 rho t + 1 - r."""
    return LaurentPolynomial({2: 1 - r, 1: 2 * rho, 0: 1 - r})


def poincare_relative_spectrum(d: PolyDivisor, curve: Curve) -> LaurentPolynomial:
    if not d.locus.complete or not d.tail.is_full_dim:
        raise EngineError("relative spectrum formula needs full tail and complete locus")
    if degree(d) == Polyhedron.from_cone(d.tail):
        raise EngineError("divisor with trivial coefficients is not proper")
    supp = d.support()
    r = len(supp)
    out = LaurentPolynomial({2: 1, 1: 2 * curve.genus, 0: 1 - r}) * g_cone(d.tail)
    for y in supp:
        out = out + g_cone(cayley_cone(d.tail, d.coefficient(y)))
    return out


_ATTRACTIVE_CACHE: dict = {}


def poincare_attractive(d: PolyDivisor, curve: Curve, config: EngineConfig = DEFAULT,
                        u: Sequence[int] | None = None) -> LaurentPolynomial:
    """Local IH Poincare polynomial at the attractive fixed point of X(d)."""
    n = d.rank
    if not d.locus.complete or not d.tail.is_full_dim:
        raise EngineError("attractive point formula needs full tail and complete locus")
    if n == 0:
        raise EngineError("rank 0 has no attractive fixed point")
    if n == 1:
        base = LaurentPolynomial({0: 1, 1: 2 * curve.genus, 2: 1})
        return ((1 - T * T) * base).truncate(1)
    if u is None:
        fits = config.u is not None and len(config.u) == n
        u = config.u if fits else choose_direction(d.tail, config.direction)
    u = tuple(u)
    key = (d.key, curve, u, config)
    hit = _ATTRACTIVE_CACHE.get(key)
    if hit is None:
        fan = downgrade(d, curve, u)
        p = poincare_complete(fan, config).poincare
        hit = ((1 - T * T) * p).truncate(n)
        _ATTRACTIVE_CACHE[key] = hit
    return hit


def choose_direction(tail: Cone, rule: str = "sum") -> tuple:
    """A primitive lattice point in the interior of a full-dimensional tail."""
    total = tail.relative_interior_point()
    if rule == "sum":
        return la.primitive(total)
    if rule == "shifted":
        return la.primitive(la.add(la.scale(2, total), tail.rays[0]))
    raise ValueError(f"unknown direction rule {rule!r}")


def torus_factor(s: int) -> LaurentPolynomial:
    return (1 + T) ** s


def decomposability(d: PolyDivisor, curve: Curve) -> tuple[bool, str]:
    try:
        _split(d, curve)
    except EngineError as exc:
        return False, str(exc)
    return True, ""


def _split(d: PolyDivisor, curve: Curve):
    n = d.rank
    tail = d.tail
    sat = la.saturated_basis(list(tail.rays), n)
    comp = la.complete_basis(sat, n)
    coords = la.inverse(la.transpose(list(sat) + list(comp)))
    k = len(sat)
    keep, drop = coords[:k], coords[k:]
    w = {}
    for y, p in d.coeffs.items():
        vals = {la.mat_vec(drop, v) for v in p.vertices}
        if len(vals) != 1:
            raise EngineError(f"coefficient at {y} is not parallel to the tail")
        w[y] = vals.pop()
    s = n - k
    for j in range(s):
        div = QDivisor({y: wy[j] for y, wy in w.items()})
        if is_principal(div, curve) is not Principality.YES:
            raise EngineError(f"not decomposable: {div} is not principal")
    return keep, drop, w


def pointed_reduction(d: PolyDivisor, curve: Curve) -> tuple[PolyDivisor, int]:
    """Split off the torus factor: a divisor with full tail plus the corank."""
    if d.tail.is_full_dim:
        return d, 0
    if not d.locus.complete:
        raise EngineError("pointed reduction needs a complete locus")
    keep, _, _ = _split(d, curve)
    k = len(keep)
    tail = Cone([la.mat_vec(keep, r) for r in d.tail.rays], k)
    coeffs = {y: Polyhedron([la.mat_vec(keep, v) for v in p.vertices],
                            [la.mat_vec(keep, r) for r in p.rays], k)
              for y, p in d.coeffs.items()}
    return PolyDivisor(tail, coeffs, Locus()), d.rank - k


def poincare_affine_product(d: PolyDivisor, curve: Curve,
                            config: EngineConfig = DEFAULT) -> LaurentPolynomial:
    """(1 + t)^s times the attractive-point polynomial of the pointed divisor."""
    pointed, s = pointed_reduction(d, curve)
    return torus_factor(s) * poincare_attractive(pointed, curve, config)


def refine_lattice(e: DivisorialFan) -> tuple[DivisorialFan, int]:
    """Rescale N so that every hyperface divisor becomes decomposable."""
    curve = e.curve
    if curve.policy == "generic":
        k = 1
    else:
        k = la.denominator_lcm(x for d in e.generators for p in d.coeffs.values()
                               for v in p.vertices for x in v)
    out = e if k == 1 else scale_lattice(e, k)
    for el in hf_poset(out):
        ok, why = decomposability(hyperface_divisor(out, el), out.curve)
        if not ok:
            raise EngineError(f"hyperface {el} is not decomposable after refinement: {why}")
    return out, k


def scale_lattice(e: DivisorialFan, k: int) -> DivisorialFan:
    """Scale all coefficients by k (the same variety up to a finite quotient)."""
    gens = [PolyDivisor(d.tail, {y: p.scale(k) for y, p in d.coeffs.items()}, d.locus, d.name)
            for d in e.generators]
    return DivisorialFan(e.curve, gens, e.rank)


# --- projective varieties ----------------------------------------------------

def poincare_contraction_free(e: DivisorialFan) -> LaurentPolynomial:
    supp = support(e)
    out = _genus_factor(e.genus, len(supp)) * h_fan(e.tail_fan())
    for y in supp:
        out = out + h_fan(e.fiber_fan(y))
    return out


def orbit_closure_poincare(hf: HFPoset, a: int) -> LaurentPolynomial:
    tau = hf.elements[a].tau
    cones = [star_quotient(hf.elements[b].tau, tau) for b in hf.above(a)]
    d = hf.rank - tau.dim
    if d == 0:
        return ONE
    fan = Fan(cones, d)
    if not is_complete(fan):
        raise EngineError(f"orbit closure fan of {hf.elements[a]} is not complete")
    return h_fan(fan)


@dataclass
class OrbitTerm:
    element: HFElement
    orbit_dim: int
    corank: int
    relative_spectrum: LaurentPolynomial
    attractive: LaurentPolynomial
    stalk: LaurentPolynomial          # (P_rel - P_attr) t^(-dim X)
    multiplicity: LaurentPolynomial   # S_O
    closure: LaurentPolynomial        # P of the orbit closure


@dataclass
class PoincareReport:
    poincare: LaurentPolynomial
    rank: int
    genus: int
    base: LaurentPolynomial
    refine_index: int = 1
    support: list = field(default_factory=list)
    tail_rays: int = 0
    fiber_rays: dict = field(default_factory=dict)
    orbits: list[OrbitTerm] = field(default_factory=list)
    hf: HFPoset | None = None
    r: IncidenceFunction | None = None

    @property
    def dim(self) -> int:
        return self.rank + 1

    def stalk_identity_holds(self) -> bool:
        """Re-substitute S into Q(O2) = sum_{O <= O2} S_O R(O, O2)."""
        if self.hf is None:
            return True
        for b, ob in enumerate(self.orbits):
            acc = LaurentPolynomial()
            for a in self.hf.below(b):
                acc = acc + self.orbits[a].multiplicity * self.r(a, b)
            if acc != ob.stalk:
                return False
        return True


def multiplicities(e: DivisorialFan, config: EngineConfig = DEFAULT):
    """(hf, R, orbit terms) for an already refined fan."""
    hf = hf_poset(e)
    n = e.rank
    r = r_function(hf)
    rinv = incidence_invert(r)
    pieces = []
    for el in hf.elements:
        pointed, s = pointed_reduction(hyperface_divisor(e, el), e.curve)
        rel = poincare_relative_spectrum(pointed, e.curve)
        att = poincare_attractive(pointed, e.curve, config)
        pieces.append((el, s, rel, att, (rel - att) * T ** (-(n + 1))))
    terms = []
    for b, (el, s, rel, att, q) in enumerate(pieces):
        mult = LaurentPolynomial()
        for a in hf.below(b):
            mult = mult + rinv(a, b) * pieces[a][4]
        terms.append(OrbitTerm(el, hf.orbit_dim(b), s, rel, att, q, mult,
                               orbit_closure_poincare(hf, b)))
    return hf, r, terms


def poincare_complete(e: DivisorialFan, config: EngineConfig = DEFAULT) -> PoincareReport:
    n = e.rank
    rho = e.genus
    if n == 0:
        p = LaurentPolynomial({0: 1, 1: 2 * rho, 2: 1})
        return PoincareReport(p, 0, rho, p)
    k = 1
    if config.refine:
        e, k = refine_lattice(e)
    supp = support(e)
    base = poincare_contraction_free(e)
    rep = PoincareReport(base, n, rho, base, k, supp, ray_count(e.tail_fan()),
                         {y: ray_count(e.fiber_fan(y)) for y in supp})
    hf, r, terms = multiplicities(e, config)
    rep.hf, rep.r, rep.orbits = hf, r, terms
    p = base
    for term in terms:
        p = p - term.multiplicity * term.closure * T ** (term.element.tau.dim + 1)
    rep.poincare = p
    if config.strict:
        check_report(rep)
    return rep


def check_report(rep: PoincareReport) -> None:
    p = rep.poincare
    problems = []
    if not p.is_polynomial() or not p.is_integral():
        problems.append(f"P = {p} is not an integer polynomial")
    if p.coeff(0) != 1:
        problems.append(f"P = {p} has constant term != 1")
    if not p.has_nonnegative_coefficients():
        problems.append(f"P = {p} has a negative coefficient")
    if not p.is_palindromic(2 * rep.dim):
        problems.append(f"P = {p} is not palindromic of degree {2 * rep.dim}")
    for o in rep.orbits:
        s = o.multiplicity
        if not s.has_nonnegative_coefficients() or s != s.substitute_power(-1):
            problems.append(f"S = {s} for {o.element} is negative or not symmetric")
    if problems:
        raise EngineError("; ".join(problems))


# --- closed forms ------------------------------------------------------------

def poincare_surface_closed_form(e: DivisorialFan) -> LaurentPolynomial:
    if e.rank != 1:
        raise ValueError("surface closed form needs rank 1")
    supp = support(e)
    out = _genus_factor(e.genus, len(supp)) * LaurentPolynomial({0: 1, 2: 1})
    out = out - len(hf_poset(e)) * T ** 2
    for y in supp:
        delta = ray_count(e.fiber_fan(y))
        out = out + LaurentPolynomial({4: 1, 2: delta - 2, 0: 1})
    return out


def poincare_threefold_closed_form(e: DivisorialFan) -> LaurentPolynomial:
    if e.rank != 2:
        raise ValueError("threefold closed form needs rank 2")
    supp = support(e)
    d_sigma = ray_count(e.tail_fan())
    out = _genus_factor(e.genus, len(supp)) * LaurentPolynomial({4: 1, 2: d_sigma - 2, 0: 1})
    for y in supp:
        delta = ray_count(e.fiber_fan(y))
        out = out + LaurentPolynomial({6: 1, 4: delta - 3, 2: delta - 3, 0: 1})
    hf = hf_poset(e)
    codim2 = sum(1 for i in range(len(hf)) if hf.orbit_dim(i) == 1)
    return out - codim2 * (T ** 2 + 1) * T ** 2
