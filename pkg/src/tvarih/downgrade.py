"""From an affine T-variety with full-dimensional tail to a projective one of rank n-1.

A proper polyhedral divisor D with full-dimensional tail sigma and an interior
lattice point u give a C*-action; the quotient is described by a divisorial
fan on the lattice N' = N / Zu. Coefficients of that fan are the cells of
linearity of theta_y(v) = -min{ b : v + b u in D_y }.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .divisors import (Curve, DivisorialFan, Locus, PolyDivisor, Principality, QDivisor,
                       _semi_principal, is_complete_variety, is_proper, validate_fan)
from .polyhedra import Cone, Polyhedron, lower_hull_cells


class DowngradeError(ValueError):
    pass


@dataclass
class Downgrade:
    fan: DivisorialFan
    u: tuple
    complement: list[tuple]
    tail_cells: list[Cone]
    cells: dict  # label -> list of (cell, offset, slope)


def default_direction(tail: Cone) -> tuple:
    """Primitive sum of the ray generators: always an interior lattice point."""
    return la.primitive(tail.relative_interior_point())


def downgrade(d: PolyDivisor, curve: Curve, u: Sequence[int] | None = None,
              check: bool = True) -> DivisorialFan:
    return downgrade_full(d, curve, u, check).fan


def downgrade_full(d: PolyDivisor, curve: Curve, u: Sequence[int] | None = None,
                   check: bool = True) -> Downgrade:
    n = d.rank
    tail = d.tail
    if not d.locus.complete:
        raise DowngradeError("downgrade needs a divisor over the whole curve")
    if not tail.is_full_dim:
        raise DowngradeError("downgrade needs a full-dimensional tail")
    if check and not is_proper(d, curve):
        raise DowngradeError("divisor is not proper")
    u = default_direction(tail) if u is None else tuple(int(x) for x in u)
    if la.primitive(u) != u or not tail.in_relative_interior(u):
        raise DowngradeError(f"u = {u} is not a primitive interior lattice point")
    comp = la.complete_basis([u], n)

    tail_cells = [cell.recession_cone()
                  for cell, _, _ in lower_hull_cells(Polyhedron.from_cone(tail), u, comp)]
    full = [c for c in tail_cells if c.dim == n - 1]
    cells = {y: lower_hull_cells(p, u, comp) for y, p in d.coeffs.items()}
    special = sorted(cells)

    out: list[PolyDivisor] = []
    taken: list[str] = []

    def fresh():
        lab = curve.fresh_label(taken)
        taken.append(lab)
        return lab

    for c in full:
        coeffs, offsets = {}, {}
        for y in special:
            match = [(cell, off) for cell, off, _ in cells[y] if cell.recession_cone() == c]
            if len(match) != 1:
                raise AssertionError(f"{len(match)} cells at {y} with recession cone {c}")
            coeffs[y], offsets[y] = match[0]
        status = _semi_principal(QDivisor(offsets), curve)
        if status is Principality.UNKNOWN:
            raise DowngradeError(f"cannot decide principality of {QDivisor(offsets)}")
        if status is Principality.YES:
            out.append(PolyDivisor(c, coeffs, Locus()))
        else:
            # two affine charts, so that the loci still cover the curve
            a, b = fresh(), fresh()
            out.append(PolyDivisor(c, coeffs, Locus.affine([a])))
            out.append(PolyDivisor(c, coeffs, Locus.affine([b])))

    for y in special:
        for cell, _, _ in cells[y]:
            kappa = cell.recession_cone()
            if kappa.dim == n - 1:
                continue
            others = [z for z in special if z != y]
            locus = Locus.affine(others or [fresh()])
            out.append(PolyDivisor(kappa, {y: cell}, locus))

    if n - 1 == 0 and not out:
        raise AssertionError("empty downgrade")
    fan = DivisorialFan(curve.with_points(taken), out, n - 1)
    if check:
        rep = validate_fan(fan)
        if not rep.ok:
            raise DowngradeError("downgraded fan is invalid: " + "; ".join(rep.errors))
        if not is_complete_variety(fan):
            raise DowngradeError("downgraded fan is not complete")
    return Downgrade(fan, u, comp, tail_cells, cells)

