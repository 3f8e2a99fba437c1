from fractions import Fraction

import pytest

from tvarih.divisors import Curve, PolyDivisor, is_complete_variety, support, validate_fan
from tvarih.downgrade import DowngradeError, default_direction, downgrade, downgrade_full
from tvarih.examples import affine_threefold, nonpointed_threefold
from tvarih.polyhedra import Cone, Polyhedron


def coefficient_intervals(fan, y):
    """Coefficients at y as (lo, hi) pairs with None for an infinite end."""
    out = set()
    for d in fan.generators:
        p = d.coefficient(y)
        lo = None if any(r[0] < 0 for r in p.rays) else min(v[0] for v in p.vertices)
        hi = None if any(r[0] > 0 for r in p.rays) else max(v[0] for v in p.vertices)
        out.add((lo, hi))
    return out


def test_affine_threefold_cells():
    d, c = affine_threefold()
    fan = downgrade(d, c)
    assert validate_fan(fan).ok and is_complete_variety(fan)
    assert support(fan) == ["inf"]
    # up to the orientation of N / Zu: [-1, 1], [1, oo), (-oo, -1]
    cells = coefficient_intervals(fan, "inf")
    flipped = {(None if hi is None else -hi, None if lo is None else -lo) for lo, hi in cells}
    expected = {(-1, 1), (1, None), (None, -1)}
    assert cells == expected or flipped == expected


@pytest.mark.parametrize("u", [(1, 1), (1, 2), (2, 1), (3, 1)])
def test_every_interior_direction_gives_a_complete_fan(u):
    d, c = affine_threefold()
    fan = downgrade(d, c, u)
    assert fan.rank == 1
    assert validate_fan(fan).ok and is_complete_variety(fan)


def test_bad_directions():
    d, c = affine_threefold()
    with pytest.raises(DowngradeError):
        downgrade(d, c, (1, 0))   # on the boundary
    with pytest.raises(DowngradeError):
        downgrade(d, c, (2, 2))   # not primitive


def test_needs_full_tail():
    d, c = nonpointed_threefold()
    with pytest.raises(DowngradeError):
        downgrade(d, c)


def test_default_direction_is_interior():
    s = Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)])
    u = default_direction(s)
    assert s.in_relative_interior(u)


def test_rank_one_downgrade_lands_on_the_curve():
    s = Cone([(1,)])
    d = PolyDivisor(s, {"0": Polyhedron([(Fraction(1, 3),)], [(1,)])})
    res = downgrade_full(d, Curve(0, ("0",)))
    assert res.fan.rank == 0
    assert res.u == (1,)
