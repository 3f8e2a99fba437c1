"""Fans of strictly convex cones and the constructions built from them."""
from __future__ import annotations

from functools import cached_property
from typing import Iterable, Sequence

from . import linalg as la
from .polyhedra import Cone, Polyhedron


class FanError(ValueError):
    """Raised when a collection of cones violates the fan axioms."""

    def __init__(self, message: str, pair: tuple | None = None):
        super().__init__(message)
        self.pair = pair


class Fan:
    """A fan given by its maximal cones; the face closure is derived."""

    def __init__(self, cones: Iterable[Cone], ambient_dim: int | None = None, check: bool = True):
        cones = list(dict.fromkeys(cones))
        if ambient_dim is None:
            if not cones:
                raise ValueError("ambient_dim required for an empty fan")
            ambient_dim = cones[0].ambient_dim
        self.ambient_dim = ambient_dim
        for c in cones:
            if c.ambient_dim != ambient_dim:
                raise FanError("cones live in different ambient spaces")
            if not c.is_strictly_convex:
                raise FanError(f"cone {c} is not strictly convex")
        faces: set[Cone] = set()
        for c in cones:
            faces.update(c.faces)
        if not cones:
            faces.add(Cone.zero(ambient_dim))
        self.cones = tuple(sorted(faces, key=lambda c: (c.dim, c.rays)))
        # a cone is maximal when it is not a proper face of another member
        proper = set()
        for c in cones:
            proper.update(f for f in c.faces if f != c)
        given = set(cones) or faces
        self.maximal_cones = tuple(c for c in self.cones if c in given and c not in proper)
        if check:
            self.validate()

    def validate(self) -> None:
        mx = self.maximal_cones
        for i in range(len(mx)):
            for j in range(i + 1, len(mx)):
                a, b = mx[i], mx[j]
                inter = a.intersect(b)
                if inter not in self._face_set(a) or inter not in self._face_set(b):
                    raise FanError(f"{a} and {b} do not meet in a common face", (a, b))

    @staticmethod
    def _face_set(c: Cone) -> set:
        return set(c.faces)

    @cached_property
    def rays(self) -> tuple:
        return tuple(c.rays[0] for c in self.cones if c.dim == 1)

    def ray_count(self) -> int:
        return len(self.rays)

    def cones_of_dim(self, k: int) -> list[Cone]:
        return [c for c in self.cones if c.dim == k]

    def __contains__(self, c: Cone) -> bool:
        return c in self._cone_set

    @cached_property
    def _cone_set(self) -> frozenset:
        return frozenset(self.cones)

    def __eq__(self, other):
        return isinstance(other, Fan) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @cached_property
    def key(self):
        return (self.ambient_dim, tuple(sorted(c.key for c in self.maximal_cones)))

    def __repr__(self):
        return f"Fan({len(self.maximal_cones)} maximal cones, {self.ray_count()} rays, dim={self.ambient_dim})"

    def is_complete(self) -> bool:
        return is_complete(self)

    def star(self, tau: Cone) -> list[Cone]:
        """Cones of the fan having tau as a face."""
        return [c for c in self.cones if tau in self._face_set(c)]

    def image(self, rows: Sequence[Sequence]) -> "Fan":
        return Fan([c.image(rows) for c in self.maximal_cones], len(rows))


def is_complete(f: Fan) -> bool:
    n = f.ambient_dim
    if n == 0:
        return True
    mx = f.maximal_cones
    if not mx or any(c.dim != n for c in mx):
        return False
    count: dict[Cone, int] = {}
    for c in mx:
        for facet in c.faces_of_dim(n - 1):
            count[facet] = count.get(facet, 0) + 1
    return all(v == 2 for v in count.values())


def ray_count(f: Fan) -> int:
    return f.ray_count()


def cayley_cone(tail: Cone, coeff: Polyhedron) -> Cone:
    """Cone over (tail x {0}) and (coeff x {1})."""
    n = tail.ambient_dim
    gens = [tuple(g) + (0,) for g in tail.generators]
    gens += [tuple(v) + (1,) for v in coeff.vertices]
    return Cone(gens, n + 1)


def downward_cone(tail: Cone) -> Cone:
    """Cone over (tail x {0}) and (0, ..., 0, -1)."""
    n = tail.ambient_dim
    gens = [tuple(g) + (0,) for g in tail.generators] + [(0,) * n + (-1,)]
    return Cone(gens, n + 1)


def fiber_fan(dfan, y) -> Fan:
    """Fan in N x Q made of the Cayley cones over y and the downward cones.

    ``dfan`` is a divisorial fan: an object with ``divisors``, each having
    ``tail``, ``locus.contains(y)`` and ``coefficient(y)``.
    """
    n = dfan.rank
    cones = []
    for d in dfan.divisors:
        if d.locus.contains(y):
            cones.append(cayley_cone(d.tail, d.coefficient(y)))
        cones.append(downward_cone(d.tail))
    return Fan(cones, n + 1)


def quotient_map(small: Cone) -> list[tuple]:
    """Rows of a lattice map N -> N / (span(small) cap N), surjective on lattices."""
    n = small.ambient_dim
    sat = la.saturated_basis(list(small.rays) + list(small.lineality), n)
    comp = la.complete_basis(sat, n)
    basis = list(sat) + list(comp)
    inv = la.inverse(la.transpose(basis))  # coordinates w.r.t. basis
    k = len(sat)
    return [tuple(int(x) for x in row) for row in inv[k:]]


def star_quotient(big: Cone, small: Cone) -> Cone:
    """Image of big in N / span(small), for small a face of big."""
    if small not in set(big.faces):
        raise ValueError("small cone is not a face of big cone")
    rows = quotient_map(small)
    return big.image(rows) if rows else Cone.zero(0)


def star_fan(f: Fan, tau: Cone) -> Fan:
    """Fan of the orbit closure of tau: cones containing tau pushed to N / span(tau)."""
    rows = quotient_map(tau)
    d = len(rows)
    if d == 0:
        return Fan([], 0)
    return Fan([c.image(rows) for c in f.star(tau)], d)


def restrict_to_span(c: Cone) -> Cone:
    """The cone written in a lattice basis of its own span."""
    n = c.ambient_dim
    sat = la.saturated_basis(list(c.rays) + list(c.lineality), n)
    if not sat:
        return Cone.zero(0)
    comp = la.complete_basis(sat, n)
    inv = la.inverse(la.transpose(list(sat) + list(comp)))
    rows = [tuple(int(x) for x in row) for row in inv[:len(sat)]]
    return c.image(rows)


def apply_unimodular(c: Cone, rows: Sequence[Sequence[int]]) -> Cone:
    return c.image(rows)


def product_fan(a: Fan, b: Fan) -> Fan:
    da, db = a.ambient_dim, b.ambient_dim
    cones = []
    for x in a.maximal_cones:
        for y in b.maximal_cones:
            gens = [tuple(g) + (0,) * db for g in x.rays] + [(0,) * da + tuple(g) for g in y.rays]
            cones.append(Cone(gens, da + db))
    return Fan(cones, da + db)


def normal_fan_from_vertices(vertices: Sequence[Sequence]) -> Fan:
    """Inner normal fan of a full-dimensional polytope."""
    p = Polyhedron(vertices)
    d = p.ambient_dim
    cones = []
    for v in p.vertices:
        normals = [a for a, b in p.inequalities if la.dot(a, v) == b]
        cones.append(Cone(normals, d))
    return Fan(cones, d)

