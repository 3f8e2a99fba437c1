"""Random complete divisorial fans of small rank.

Every special point y gets the regular subdivision of Q^n cut out by a
tropical polynomial x -> min_m (<m, x> + c_{y,m}) over one fixed set A of
lattice points; the unbounded cells of all slices then share the tail fan,
the inner normal fan of conv(A). Cells become divisors:

* cells at vertices m of conv(A), collected over all y, form one divisor with
  the normal cone at m as tail; it gets the whole curve when proper and two
  affine charts otherwise;
* every other cell is its own divisor, over the curve minus the other special
  points.

Candidates are kept only if they validate and give a complete variety, so the
generator never has to be clever about edge cases.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import linalg as la
from .divisors import (Curve, DivisorialFan, Locus, PolyDivisor, is_complete_variety,
                       is_proper, validate_fan)
from .polyhedra import Polyhedron, minkowski_sum_all


@dataclass(frozen=True)
class RandomFanConfig:
    seed: int = 0
    rank: int = 1
    max_genus: int = 2
    max_points: int = 4
    box: int = 2                    # A is a subset of {0..box}^rank
    max_height: int = 2             # lifts c are in [-max_height, max_height] / denominator
    denominators: tuple = (1, 2, 3)
    max_tries: int = 50             # per accepted sample
    tangency: float = 0.0           # chance of pushing a degree onto a ray of its tail
    max_generators: int = 8         # larger candidates are skipped (closure cost is quadratic)


def _point_set(rng: random.Random, cfg: RandomFanConfig) -> list[tuple]:
    n = cfg.rank
    grid = list(product(range(cfg.box + 1), repeat=n))
    while True:
        k = rng.randint(n + 1, min(len(grid), n + 4))
        pts = sorted(rng.sample(grid, k))
        if la.rank([la.sub(p, pts[0]) for p in pts[1:]], n) == n:
            return pts


def _hull_vertices(pts: list[tuple]) -> list[tuple]:
    hull = Polyhedron(pts)
    return [tuple(int(x) for x in v) for v in hull.vertices]


def _regions(pts: list[tuple], lift: dict) -> dict:
    """Full-dimensional cells of the tropical subdivision, keyed by point of A."""
    n = len(pts[0])
    out = {}
    for m in pts:
        ineqs = [(la.sub(q, m), lift[m] - lift[q]) for q in pts if q != m]
        cell = Polyhedron.from_inequalities(ineqs, (), n)
        if cell is not None and cell.dim == n:
            out[m] = cell
    return out


def _random_lift(rng, pts, cfg) -> dict:
    out = {}
    for m in pts:
        den = rng.choice(cfg.denominators)
        out[m] = Fraction(rng.randint(-cfg.max_height * den, cfg.max_height * den), den)
    return out


def _touch_ray(rng, cells, verts, labels) -> None:
    """Translate one slice so that the degree of a vertex divisor meets a ray of its tail."""
    m = rng.choice(verts)
    tail = cells[labels[0]][m].recession_cone()
    ray = rng.choice(tail.rays)
    normals = [a for a in tail.facets if la.dot(a, ray) == 0]
    a = rng.choice(normals)
    deg = minkowski_sum_all([cells[y][m] for y in labels], tail.ambient_dim)
    v = min(deg.vertices, key=lambda x: la.dot(a, x))
    shift = la.sub(la.scale(Fraction(rng.choice((1, 2)), rng.choice((1, 2))), ray), v)
    y = rng.choice(labels)
    cells[y] = {k: c.translate(shift) for k, c in cells[y].items()}


def random_candidate(rng: random.Random, cfg: RandomFanConfig) -> DivisorialFan | None:
    """One unvalidated candidate; None when it has too many generators."""
    n = cfg.rank
    genus = rng.randint(0, cfg.max_genus)
    policy = "genus0" if genus == 0 else "generic"
    k = rng.randint(1, cfg.max_points)
    labels = tuple(str(i) for i in range(k))
    curve = Curve(genus, labels, policy)
    pts = _point_set(rng, cfg)
    verts = set(_hull_vertices(pts))
    cells = {y: _regions(pts, _random_lift(rng, pts, cfg)) for y in labels}
    if n >= 2 and rng.random() < cfg.tangency:
        _touch_ray(rng, cells, sorted(verts), labels)

    taken: list[str] = []

    def fresh():
        lab = curve.fresh_label(taken)
        taken.append(lab)
        return lab

    divs = []
    for m in sorted(verts):
        tail = cells[labels[0]][m].recession_cone()
        d = PolyDivisor(tail, {y: cells[y][m] for y in labels}, Locus())
        if is_proper(d, curve):
            divs.append(d)
        else:
            divs.append(PolyDivisor(tail, d.coeffs, Locus.affine([fresh()])))
            divs.append(PolyDivisor(tail, d.coeffs, Locus.affine([fresh()])))
    for y in labels:
        others = [z for z in labels if z != y]
        for m, cell in cells[y].items():
            if m in verts:
                continue
            divs.append(PolyDivisor(cell.recession_cone(), {y: cell},
                                    Locus.affine(others or [fresh()])))
    if len(divs) > cfg.max_generators:
        return None
    return DivisorialFan(curve.with_points(taken), divs, n)


def random_fans(cfg: RandomFanConfig, count: int) -> list[DivisorialFan]:
    """``count`` valid complete fans (deterministic in ``cfg.seed``)."""
    rng = random.Random(cfg.seed)
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > cfg.max_tries * count:
            raise RuntimeError(f"only {len(out)} valid samples after {tries - 1} tries")
        e = random_candidate(rng, cfg)
        if e is not None and validate_fan(e).ok and is_complete_variety(e):
            out.append(e)
    return out


def random_surface_fans(cfg: RandomFanConfig, count: int) -> list[DivisorialFan]:
    return random_fans(RandomFanConfig(**{**cfg.__dict__, "rank": 1}), count)


def random_threefold_fans(cfg: RandomFanConfig, count: int) -> list[DivisorialFan]:
    return random_fans(RandomFanConfig(**{**cfg.__dict__, "rank": 2}), count)
