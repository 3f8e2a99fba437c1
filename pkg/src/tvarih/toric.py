"""Combinatorial intersection cohomology invariants of cones and fans.

g-polynomials are computed on intervals of Eulerian face posets. Everything is
first done in the variable s = t^2 and converted at the end, so the returned
polynomials are even in t.
"""
from __future__ import annotations

from typing import Iterable

from . import linalg as la
from .fans import Fan, FanError, is_complete, quotient_map, restrict_to_span
from .polyhedra import Cone, FaceLattice
from .polynomials import ONE, LaurentPolynomial, T

S_MINUS_1 = LaurentPolynomial({0: -1, 1: 1})
ONE_MINUS_S = LaurentPolynomial({0: 1, 1: -1})


def g_interval(lat: FaceLattice, lo, hi, memo: dict | None = None) -> LaurentPolynomial:
    """g-polynomial (in s) of the Eulerian interval [lo, hi]."""
    if memo is None:
        memo = {}
    key = (lo, hi)
    if key in memo:
        return memo[key]
    r = lat.dims[hi] - lat.dims[lo]
    if r <= 2:
        out = ONE
    else:
        b = LaurentPolynomial()
        for c in lat.interval(lo, hi):
            if c == hi:
                continue
            b = b + S_MINUS_1 ** (lat.dims[hi] - lat.dims[c] - 1) * g_interval(lat, lo, c, memo)
        out = (ONE_MINUS_S * b).truncate((r - 1) // 2)
    memo[key] = out
    return out


_G_CACHE: dict = {}


def g_cone_s(c: Cone) -> LaurentPolynomial:
    if not c.is_strictly_convex:
        raise ValueError("g-polynomial needs a strictly convex cone")
    hit = _G_CACHE.get(c.key)
    if hit is None:
        lat = c.face_lattice()
        hit = g_interval(lat, lat.bottom, lat.top)
        _G_CACHE[c.key] = hit
    return hit


def g_cone(c: Cone) -> LaurentPolynomial:
    """g(c; t^2) as a polynomial in t."""
    return g_cone_s(c).substitute_power(2)


def h_fan(f: Fan) -> LaurentPolynomial:
    """Sum over cones of (t^2 - 1)^(n - dim) g(cone; t^2): the IH Poincare polynomial."""
    if not is_complete(f):
        raise FanError("h-polynomial needs a complete fan")
    return h_fan_unchecked(f)


def h_fan_unchecked(f: Fan, g=g_cone) -> LaurentPolynomial:
    n = f.ambient_dim
    t2m1 = T * T - 1
    out = LaurentPolynomial()
    for c in f.cones:
        out = out + t2m1 ** (n - c.dim) * g(c)
    return out


def relative_g(lat: FaceLattice, e, f, memo: dict | None = None) -> LaurentPolynomial:
    """Relative g-polynomial g(e, f; t^2) for f <= e in ``lat``.

    Determined by g([bottom, Q]) = sum_{f <= E <= Q} g(E, f) g([E, Q]) for every
    Q >= f, solved by forward substitution in rank order.
    """
    if not f <= e:
        raise ValueError("relative g needs f <= e")
    if memo is None:
        memo = {}
    return _relative_g_s(lat, e, f, memo, {}).substitute_power(2)


def _relative_g_s(lat, q, f, memo_g, memo_rel):
    key = (q, f)
    if key in memo_rel:
        return memo_rel[key]
    out = g_interval(lat, lat.bottom, q, memo_g)
    for e in lat.interval(f, q):
        if e == q:
            continue
        out = out - _relative_g_s(lat, e, f, memo_g, memo_rel) * g_interval(lat, e, q, memo_g)
    memo_rel[key] = out
    return out


def relative_g_identity_holds(lat: FaceLattice, f) -> bool:
    """Re-substitute relative g values into their defining identity for all Q >= f."""
    memo_g: dict = {}
    memo_rel: dict = {}
    for q in lat.elements:
        if not f <= q:
            continue
        total = LaurentPolynomial()
        for e in lat.interval(f, q):
            total = total + _relative_g_s(lat, e, f, memo_g, memo_rel) * g_interval(lat, e, q, memo_g)
        if total != g_interval(lat, lat.bottom, q, memo_g):
            return False
    return True


# --- independent oracle: projection along an interior ray --------------------

def g_cone_by_projection(c: Cone) -> LaurentPolynomial:
    """g(c; t^2) via the complete fan of proper faces projected along an interior ray.

    Slow; used only to cross-check :func:`g_cone`.
    """
    c = restrict_to_span(c)
    d = c.dim
    if d <= 2:
        return ONE
    v = la.primitive(c.relative_interior_point())
    rows = quotient_map(Cone([v], d))
    proper = [f.image(rows) for f in c.faces if f.dim == d - 1]
    fan = Fan(proper, d - 1)
    b = h_fan_unchecked(fan, g=g_cone_by_projection)
    return ((1 - T * T) * b).truncate(d - 1)


def simplicial_cone(d: int) -> Cone:
    return Cone([tuple(int(i == j) for j in range(d)) for i in range(d)], d)


def polygon_cone(m: int) -> Cone:
    """Cone over a lattice m-gon placed at height 1."""
    pts = _convex_lattice_polygon(m)
    return Cone([p + (1,) for p in pts], 3)


def _convex_lattice_polygon(m: int) -> list[tuple]:
    # points on a parabola are all vertices of their convex hull
    return [(i, i * i) for i in range(m)]


def cube_cone(k: int = 3) -> Cone:
    from itertools import product
    return Cone([p + (1,) for p in product((1, -1), repeat=k)], k + 1)


def projective_space_fan(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    cones = [Cone([r for j, r in enumerate(rays) if j != i], n) for i in range(n + 1)]
    return Fan(cones, n)


def fan_from_rays(rays: Iterable, cones: Iterable[Iterable[int]], n: int) -> Fan:
    rays = list(rays)
    return Fan([Cone([rays[i] for i in c], n) for c in cones], n)
