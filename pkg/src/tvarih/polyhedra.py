"""Exact cones and polyhedra over the rationals.

Everything is driven by one double description routine (``_dd``), which turns
a system ``a.x >= 0, e.x = 0`` into a lineality basis plus extreme rays.
Generator descriptions go through the dual first, so every object ends up
with both representations and a canonical, hashable key.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import linalg as la
from .linalg import dot, idot, primitive

NEG_INF = float("-inf")


class EmptyPolyhedron(ValueError):
    pass


# --- double description ------------------------------------------------------

def _dd(ineqs: Sequence[Sequence], eqs: Sequence[Sequence], d: int):
    """Extreme rays and lineality of {x : a.x >= 0 (a in ineqs), e.x = 0}.

    Returns (lineality, rays) as lists of primitive integer tuples. Rays are
    only determined modulo the lineality space.
    """
    ineqs = tuple(primitive(a) for a in ineqs)
    eqs = tuple(sorted({primitive(e) for e in eqs if not la.is_zero(e)}))
    lin, rays = _dd_int(ineqs, eqs, d)
    return list(lin), list(rays)


@lru_cache(maxsize=200_000)
def _dd_int(ineqs: tuple, eqs: tuple, d: int):
    lin = [primitive(v) for v in la.nullspace(eqs, d)]
    eq_rank = d - len(lin)
    rays: list[tuple[tuple, frozenset]] = []
    done: list[int] = []
    for k, a in enumerate(ineqs):
        if not any(a):
            continue
        hit = next((i for i, l in enumerate(lin) if idot(a, l) != 0), None)
        if hit is not None:
            l0 = lin.pop(hit)
            s0 = idot(a, l0)
            if s0 < 0:
                l0, s0 = tuple(-x for x in l0), -s0

            def push(v):
                c = idot(a, v)
                if not c:
                    return v
                return primitive(tuple(s0 * x - c * y for x, y in zip(v, l0)))

            lin = [w for w in (push(v) for v in lin) if any(w)]
            rays = [(push(r), t | {k}) for r, t in rays]
            rays.append((l0, frozenset(done)))
            done.append(k)
            continue
        vals = [idot(a, r) for r, _ in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            rays = [(r, t | {k}) if v == 0 else (r, t) for (r, t), v in zip(rays, vals)]
            done.append(k)
            continue
        need = d - len(lin) - eq_rank - 2
        new = []
        for i in pos:
            p, tp = rays[i]
            for j in neg:
                q, tq = rays[j]
                common = tp & tq
                if len(common) < need:
                    continue
                if any(common <= rays[m][1] for m in range(len(rays)) if m != i and m != j):
                    continue
                vi, vj = vals[i], vals[j]
                r = primitive(tuple(vi * y - vj * x for x, y in zip(p, q)))
                new.append((r, common | {k}))
        kept = [(r, t | {k}) if v == 0 else (r, t)
                for (r, t), v in zip(rays, vals) if v >= 0]
        rays = kept + new
        done.append(k)
    return tuple(lin), tuple(r for r, _ in rays)


def _project_off(v: Sequence, lin_basis: Sequence[Sequence]) -> tuple:
    """Orthogonal projection of v onto the complement of span(lin_basis)."""
    if not lin_basis:
        return tuple(v)
    gram = [[dot(a, b) for b in lin_basis] for a in lin_basis]
    coeffs = la.solve(gram, [dot(v, b) for b in lin_basis])
    out = tuple(Fraction(x) for x in v)
    for c, b in zip(coeffs, lin_basis):
        out = la.sub(out, la.scale(c, b))
    return out


def _canonical_lineality(lin: Sequence[Sequence], d: int) -> tuple:
    return tuple(primitive(r) for r in la.span_basis(lin, d))


# --- face lattices -----------------------------------------------------------

class FaceLattice:
    """Face poset of a cone, faces keyed by the set of ray indices they contain.

    For polyhedra the keys are indices into the homogenized generator list and
    the empty face is added as bottom.
    """

    def __init__(self, keys: Iterable[frozenset], dims: dict):
        self.elements = sorted(set(keys), key=lambda f: (dims[f], sorted(f)))
        self.dims = dims
        self.bottom = self.elements[0]
        self.top = self.elements[-1]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def dim(self, f) -> int:
        return self.dims[f]

    def leq(self, f, g) -> bool:
        return f <= g

    def of_dim(self, k: int) -> list:
        return [f for f in self.elements if self.dims[f] == k]

    def interval(self, f, g) -> list:
        return [h for h in self.elements if f <= h <= g]

    def counts(self) -> list[int]:
        lo = self.dims[self.bottom]
        out = [0] * (self.dims[self.top] - lo + 1)
        for f in self.elements:
            out[self.dims[f] - lo] += 1
        return out

    def is_eulerian(self) -> bool:
        for f in self.elements:
            for g in self.elements:
                if f < g:
                    s = sum((-1) ** self.dims[h] for h in self.interval(f, g))
                    if s != 0:
                        return False
        return True


def _closure(full: frozenset, facet_sets: Sequence[frozenset]) -> set:
    faces = {full}
    stack = [full]
    while stack:
        f = stack.pop()
        for s in facet_sets:
            g = f & s
            if g not in faces:
                faces.add(g)
                stack.append(g)
    return faces


# --- cones -------------------------------------------------------------------

# Cones and polyhedra are immutable, so equal inputs share one instance (and its
# cached faces). Plain dict writes are idempotent, which is all we rely on.
_CONE_INPUTS: dict = {}
_CONES: dict = {}
_POLY_INPUTS: dict = {}
_POLYS: dict = {}


class Cone:
    """Polyhedral cone: extreme rays (primitive, modulo lineality) plus lineality.

    Construct from generators; use :meth:`from_inequalities` for H-input.
    """

    __slots__ = ("ambient_dim", "rays", "lineality", "equations", "facets", "__dict__")

    def __new__(cls, generators: Iterable[Sequence] = (), ambient_dim: int | None = None,
                lineality: Iterable[Sequence] = ()):
        gens = [primitive(g) for g in generators]
        lin_in = [primitive(g) for g in lineality]
        if ambient_dim is None:
            if not gens and not lin_in:
                raise ValueError("ambient_dim required for the zero cone")
            ambient_dim = len((gens or lin_in)[0])
        d = ambient_dim
        if any(len(g) != d for g in gens + lin_in):
            raise ValueError("generator of wrong length")
        gens = sorted({g for g in gens if any(g)})
        lin_in = sorted({g for g in lin_in if any(g)})
        ikey = (d, tuple(gens), tuple(lin_in))
        obj = _CONE_INPUTS.get(ikey)
        if obj is None:
            obj = object.__new__(cls)
            all_gens = gens + lin_in + [tuple(-x for x in g) for g in lin_in]
            eqs, normals = _dd(all_gens, [], d)
            obj._build(eqs, normals, d)
            obj = _CONES.setdefault(obj.key, obj)
            _CONE_INPUTS[ikey] = obj
        return obj

    def __init__(self, *args, **kwargs):
        pass

    def _build(self, eqs, normals, d):
        self.ambient_dim = d
        lin, rays = _dd(normals, eqs, d)
        lin = _canonical_lineality(lin, d)
        if lin:
            rays = [primitive(_project_off(r, lin)) for r in rays]
        rays = sorted(set(rays))
        rays = [r for r in rays if not la.is_zero(r)]
        self.lineality = lin
        self.rays = tuple(rays)
        self.equations = tuple(primitive(e) for e in la.span_basis(eqs, d))
        # dual extreme rays are the facet normals; reduce them modulo the equations
        fac = set()
        for n in normals:
            v = primitive(_project_off(n, self.equations)) if self.equations else n
            if not la.is_zero(v):
                fac.add(v)
        self.facets = tuple(sorted(fac))

    @classmethod
    def from_inequalities(cls, ineqs: Iterable[Sequence], eqs: Iterable[Sequence] = (),
                          ambient_dim: int | None = None) -> "Cone":
        ineqs = [tuple(Fraction(x) for x in a) for a in ineqs]
        eqs = [tuple(Fraction(x) for x in e) for e in eqs]
        if ambient_dim is None:
            ambient_dim = len((ineqs or eqs)[0])
        lin, rays = _dd(ineqs, eqs, ambient_dim)
        return cls(rays, ambient_dim, lineality=lin)

    @classmethod
    def full_space(cls, d: int) -> "Cone":
        return cls((), d, lineality=[tuple(int(i == j) for j in range(d)) for i in range(d)])

    @classmethod
    def zero(cls, d: int) -> "Cone":
        return cls((), d)

    # basic data
    @cached_property
    def dim(self) -> int:
        return la.rank(list(self.rays) + list(self.lineality), self.ambient_dim)

    @property
    def lineality_dim(self) -> int:
        return len(self.lineality)

    @property
    def is_strictly_convex(self) -> bool:
        return not self.lineality

    @property
    def is_full_dim(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def generators(self) -> tuple:
        return self.rays + self.lineality + tuple(tuple(-x for x in l) for l in self.lineality)

    @cached_property
    def key(self):
        return (self.ambient_dim, self.rays, self.lineality)

    def __eq__(self, other):
        return self is other or (isinstance(other, Cone) and self.key == other.key)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash(self.key)

    def __repr__(self):
        r = ", ".join(str(tuple(int(x) for x in v)) for v in self.rays)
        extra = f", lineality={list(self.lineality)}" if self.lineality else ""
        return f"Cone([{r}], dim={self.ambient_dim}{extra})"

    # predicates
    def contains(self, v: Sequence) -> bool:
        return (all(dot(e, v) == 0 for e in self.equations)
                and all(dot(n, v) >= 0 for n in self.facets))

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators)

    def in_relative_interior(self, v: Sequence) -> bool:
        return (all(dot(e, v) == 0 for e in self.equations)
                and all(dot(n, v) > 0 for n in self.facets))

    def relative_interior_point(self) -> tuple:
        out = tuple(0 for _ in range(self.ambient_dim))
        for r in self.rays:
            out = la.add(out, r)
        return tuple(int(x) for x in out)

    # faces
    @cached_property
    def _facet_ray_sets(self):
        return [frozenset(i for i, r in enumerate(self.rays) if dot(n, r) == 0)
                for n in self.facets]

    def face_lattice(self) -> FaceLattice:
        full = frozenset(range(len(self.rays)))
        keys = _closure(full, self._facet_ray_sets)
        ld = self.lineality_dim
        dims = {f: la.rank([self.rays[i] for i in f], self.ambient_dim) + ld if f else ld
                for f in keys}
        return FaceLattice(keys, dims)

    def face_from_key(self, key: frozenset) -> "Cone":
        return Cone([self.rays[i] for i in sorted(key)], self.ambient_dim, lineality=self.lineality)

    @cached_property
    def faces(self) -> tuple["Cone", ...]:
        """All faces, sorted by dimension."""
        lat = self.face_lattice()
        return tuple(self.face_from_key(k) for k in lat.elements)

    def faces_of_dim(self, k: int) -> list["Cone"]:
        return [f for f in self.faces if f.dim == k]

    def facet_cones(self) -> list["Cone"]:
        return self.faces_of_dim(self.dim - 1)

    def minimal_face_containing(self, v: Sequence) -> "Cone":
        tight = [n for n in self.facets if dot(n, v) == 0]
        return self.face_cut(tight)

    def face_cut(self, normals: Sequence[Sequence]) -> "Cone":
        keep = [r for r in self.rays if all(dot(n, r) == 0 for n in normals)]
        return Cone(keep, self.ambient_dim, lineality=self.lineality)

    def has_face(self, f: "Cone") -> bool:
        if not self.contains_cone(f):
            return False
        return self.minimal_face_containing(f.relative_interior_point_q()) == f

    def relative_interior_point_q(self) -> tuple:
        return tuple(Fraction(x) for x in self.relative_interior_point())

    def dual(self) -> "Cone":
        return Cone(self.facets, self.ambient_dim, lineality=self.equations)

    def intersect(self, other: "Cone") -> "Cone":
        return _cone_meet(self, other)

    def _meet(self, other: "Cone") -> "Cone":
        ineqs = list(self.facets) + list(other.facets)
        eqs = list(self.equations) + list(other.equations)
        return Cone.from_inequalities(ineqs, eqs, self.ambient_dim)

    def span(self) -> list[tuple]:
        return la.span_basis(list(self.rays) + list(self.lineality), self.ambient_dim)

    def image(self, rows: Sequence[Sequence]) -> "Cone":
        """Image under the linear map x -> (row . x)."""
        d = len(rows)
        return Cone([la.mat_vec(rows, g) for g in self.generators], d)

    def orthogonal_face(self, m: Sequence) -> "Cone":
        """Face of self cut out by m (assumes m in the dual cone)."""
        return self.face_cut([m])


def dual_cone(c: Cone) -> Cone:
    return c.dual()


# --- polyhedra ---------------------------------------------------------------

class Polyhedron:
    """Pointed polyhedron conv(vertices) + cone(rays), stored canonically.

    The homogenization (v, 1), (r, 0) is the working object; its facets not
    lying at infinity give the H-representation ``a.x >= b``.
    """

    def __new__(cls, vertices: Iterable[Sequence], rays: Iterable[Sequence] = (),
                ambient_dim: int | None = None):
        verts = [tuple(Fraction(x) for x in v) for v in vertices]
        rays = [primitive(r) for r in rays]
        if not verts:
            raise EmptyPolyhedron("a polyhedron needs at least one vertex")
        d = len(verts[0]) if ambient_dim is None else ambient_dim
        ikey = (d, tuple(sorted(set(verts))), tuple(sorted({r for r in rays if any(r)})))
        obj = _POLY_INPUTS.get(ikey)
        if obj is None:
            gens = [v + (Fraction(1),) for v in ikey[1]] + [r + (0,) for r in ikey[2]]
            obj = cls._from_cone(Cone(gens, d + 1), d)
            _POLY_INPUTS[ikey] = obj
        return obj

    def __init__(self, *args, **kwargs):
        pass

    @classmethod
    def _from_cone(cls, hom: Cone, d: int) -> "Polyhedron":
        obj = object.__new__(cls)
        obj._from_hom(hom, d)
        return _POLYS.setdefault(obj.key, obj)

    def _from_hom(self, hom: Cone, d: int):
        if hom.lineality:
            raise ValueError("polyhedron is not pointed")
        self.ambient_dim = d
        self.hom = hom
        vs, rs = [], []
        for g in hom.rays:
            if g[-1] > 0:
                vs.append(tuple(Fraction(x, g[-1]) for x in g[:-1]))
            else:
                rs.append(tuple(g[:-1]))
        self.vertices = tuple(sorted(vs))
        self.rays = tuple(sorted(rs))

    @classmethod
    def from_inequalities(cls, ineqs: Iterable[tuple[Sequence, object]],
                          eqs: Iterable[tuple[Sequence, object]] = (),
                          ambient_dim: int | None = None):
        """Build {x : a.x >= b for (a, b) in ineqs, e.x = c for (e, c) in eqs}.

        Returns None when the system is infeasible.
        """
        ineqs = [(tuple(Fraction(x) for x in a), Fraction(b)) for a, b in ineqs]
        eqs = [(tuple(Fraction(x) for x in e), Fraction(c)) for e, c in eqs]
        if ambient_dim is None:
            ambient_dim = len((ineqs or eqs)[0][0])
        d = ambient_dim
        hi = [a + (-b,) for a, b in ineqs] + [tuple(Fraction(int(i == d)) for i in range(d + 1))]
        he = [e + (-c,) for e, c in eqs]
        lin, rays = _dd(hi, he, d + 1)
        if lin:
            # lineality inside s = 0 means a non-pointed polyhedron
            raise ValueError("polyhedron is not pointed")
        if not any(r[-1] > 0 for r in rays):
            return None
        return cls._from_cone(Cone(rays, d + 1), d)

    @classmethod
    def point(cls, v: Sequence) -> "Polyhedron":
        return cls([v])

    @classmethod
    def from_cone(cls, c: Cone, shift: Sequence | None = None) -> "Polyhedron":
        d = c.ambient_dim
        return cls([shift if shift is not None else (0,) * d], c.rays, d)

    # canonical identity
    @cached_property
    def key(self):
        return (self.ambient_dim, self.vertices, self.rays)

    def __eq__(self, other):
        return self is other or (isinstance(other, Polyhedron) and self.key == other.key)

    def __hash__(self):
        return self._hash

    @cached_property
    def _hash(self):
        return hash(self.key)

    def __repr__(self):
        def fmt(v):
            return "(" + ", ".join(str(x) for x in v) + ")"
        vs = ", ".join(fmt(v) for v in self.vertices)
        rs = ", ".join(fmt(r) for r in self.rays)
        return f"Polyhedron(vertices=[{vs}], rays=[{rs}])"

    # H-representation
    @cached_property
    def inequalities(self) -> tuple:
        """Pairs (a, b) meaning a.x >= b, one per facet."""
        out = []
        for n in self.hom.facets:
            tight_vertex = any(r[-1] > 0 and dot(n, r) == 0 for r in self.hom.rays)
            if tight_vertex:
                out.append((tuple(n[:-1]), Fraction(-n[-1])))
        return tuple(out)

    @cached_property
    def equations(self) -> tuple:
        return tuple((tuple(e[:-1]), Fraction(-e[-1])) for e in self.hom.equations)

    @cached_property
    def dim(self) -> int:
        return self.hom.dim - 1

    @property
    def is_bounded(self) -> bool:
        return not self.rays

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1 and not self.rays

    def contains(self, x: Sequence) -> bool:
        return (all(dot(e, x) == c for e, c in self.equations)
                and all(dot(a, x) >= b for a, b in self.inequalities))

    def in_relative_interior(self, x: Sequence) -> bool:
        return (all(dot(e, x) == c for e, c in self.equations)
                and all(dot(a, x) > b for a, b in self.inequalities))

    def recession_cone(self) -> Cone:
        return Cone(self.rays, self.ambient_dim)

    def relative_interior_point(self) -> tuple:
        k = len(self.vertices)
        out = tuple(sum((v[i] for v in self.vertices), Fraction(0)) / k
                    for i in range(self.ambient_dim))
        for r in self.rays:
            out = la.add(out, r)
        return out

    def translate(self, t: Sequence) -> "Polyhedron":
        return Polyhedron([la.add(v, t) for v in self.vertices], self.rays, self.ambient_dim)

    def scale(self, k) -> "Polyhedron":
        if k <= 0:
            raise ValueError("scale factor must be positive")
        return Polyhedron([la.scale(Fraction(k), v) for v in self.vertices], self.rays,
                          self.ambient_dim)

    def image(self, rows: Sequence[Sequence]) -> "Polyhedron":
        return project(self, rows)

    # faces
    def face_lattice(self) -> FaceLattice:
        hl = self.hom.face_lattice()
        verts = {i for i, r in enumerate(self.hom.rays) if r[-1] > 0}
        keys = [f for f in hl.elements if f & verts]
        dims = {f: hl.dims[f] - 1 for f in keys}
        empty = frozenset()
        dims[empty] = -1
        return FaceLattice(keys + [empty], dims)

    def face_from_key(self, key: frozenset) -> "Polyhedron":
        gens = [self.hom.rays[i] for i in key]
        return Polyhedron._from_cone(Cone(gens, self.ambient_dim + 1), self.ambient_dim)

    @cached_property
    def faces(self) -> tuple["Polyhedron", ...]:
        """Nonempty faces sorted by dimension."""
        lat = self.face_lattice()
        return tuple(self.face_from_key(k) for k in lat.elements if k)

    def face_minimizing(self, m: Sequence) -> "Polyhedron":
        """face_m: the set of points where <m, .> attains its minimum."""
        val = eval_support(self, m)
        if val == NEG_INF:
            raise ValueError("linear form unbounded below")
        vs = [v for v in self.vertices if dot(m, v) == val]
        rs = [r for r in self.rays if dot(m, r) == 0]
        return Polyhedron(vs, rs, self.ambient_dim)


# --- free functions ----------------------------------------------------------

def minkowski_sum(p: Polyhedron, q: Polyhedron) -> Polyhedron:
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("ambient dimensions differ")
    verts = [la.add(a, b) for a in p.vertices for b in q.vertices]
    return Polyhedron(verts, list(p.rays) + list(q.rays), p.ambient_dim)


def minkowski_sum_all(ps: Iterable[Polyhedron], d: int) -> Polyhedron:
    out = Polyhedron.point((0,) * d)
    for p in ps:
        out = minkowski_sum(out, p)
    return out


@lru_cache(maxsize=100_000)
def _cone_meet(a: Cone, b: Cone) -> Cone:
    return a._meet(b)


@lru_cache(maxsize=100_000)
def intersect(p: Polyhedron, q: Polyhedron) -> Polyhedron | None:
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return Polyhedron.from_inequalities(list(p.inequalities) + list(q.inequalities),
                                        list(p.equations) + list(q.equations), p.ambient_dim)


def eval_support(p: Polyhedron, m: Sequence):
    """min of <m, .> over p, or NEG_INF when unbounded below."""
    if any(dot(m, r) < 0 for r in p.rays):
        return NEG_INF
    return min(dot(m, v) for v in p.vertices)


def recession_cone(p: Polyhedron) -> Cone:
    return p.recession_cone()


def relative_interior_point(c):
    return c.relative_interior_point()


def is_face_of(f, p) -> bool:
    """True when f is a (nonempty) face of p; works for cones and polyhedra."""
    if isinstance(p, Cone):
        return p.has_face(f)
    if f.ambient_dim != p.ambient_dim:
        return False
    if not all(p.contains(v) for v in f.vertices):
        return False
    rc = p.recession_cone()
    if not all(rc.contains(r) for r in f.rays):
        return False
    x = f.relative_interior_point()
    tight = [(a, b) for a, b in p.inequalities if dot(a, x) == b]
    vs = [v for v in p.vertices if all(dot(a, v) == b for a, b in tight)]
    rs = [r for r in p.rays if all(dot(a, r) == 0 for a, _ in tight)]
    return Polyhedron(vs, rs, p.ambient_dim) == f


def project(p, rows: Sequence[Sequence]):
    """Image of a cone or polyhedron under x -> (row . x for row in rows)."""
    if isinstance(p, Cone):
        return p.image(rows)
    d = len(rows)
    return Polyhedron([la.mat_vec(rows, v) for v in p.vertices],
                      [la.mat_vec(rows, r) for r in p.rays], d)


def lower_hull_cells(p: Polyhedron, u: Sequence, complement_basis: Sequence[Sequence]):
    """Cells of linearity of theta(v) = -min{ b : v + b u in p }.

    Coordinates on the quotient are taken with respect to ``complement_basis``:
    a point x = sum a_i B_i + b u projects to a. Returns a list of
    (cell, offset, slope) with theta(a) = offset + <slope, a> on the cell.
    """
    n = p.ambient_dim
    basis = [tuple(Fraction(x) for x in b) for b in complement_basis] + [tuple(Fraction(x) for x in u)]
    if len(basis) != n or la.rank(basis, n) != n:
        raise ValueError("complement basis and u must form a basis")
    cols = la.transpose(basis)  # x = cols . (a, b)
    inv = la.inverse(cols)
    q = Polyhedron([la.mat_vec(inv, v) for v in p.vertices],
                   [la.mat_vec(inv, r) for r in p.rays], n)
    down = tuple([0] * (n - 1) + [-1])
    if q.recession_cone().contains(down):
        raise ValueError("polyhedron is unbounded below along u")
    drop = [tuple(int(i == j) for j in range(n)) for i in range(n - 1)]
    cells = []
    pinned = [(e, c) for e, c in q.equations if e[-1] != 0]
    if pinned:
        e, c = pinned[0]
        nb = e[-1]
        slope = tuple(Fraction(x) / nb for x in e[:-1])
        cells.append((project(q, drop), -c / nb, slope))
    else:
        for a, h in q.inequalities:
            if a[-1] <= 0:
                continue
            nb = a[-1]
            vs = [v for v in q.vertices if dot(a, v) == h]
            rs = [r for r in q.rays if dot(a, r) == 0]
            face = Polyhedron(vs, rs, n)
            slope = tuple(Fraction(x) / nb for x in a[:-1])
            cells.append((project(face, drop), -h / nb, slope))
    cells.sort(key=lambda c: (c[0].key, c[1], c[2]))
    return cells
