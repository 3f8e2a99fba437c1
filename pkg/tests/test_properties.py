"""Invariants of the engine on hypothesis-drawn random fans."""
from hypothesis import given, settings, strategies as st

from tvarih.divisors import hf_poset
from tvarih.engine import (EngineConfig, poincare_complete, poincare_surface_closed_form,
                           poincare_threefold_closed_form, r_function, scale_lattice)
from tvarih.polynomials import T
from tvarih.randomgen import RandomFanConfig, random_fans

seeds = st.integers(0, 2**20)


def one_fan(seed, rank, **kw):
    return random_fans(RandomFanConfig(seed=seed, rank=rank, max_tries=200, **kw), 1)[0]


def assert_report_invariants(rep):
    p = rep.poincare
    assert p.is_polynomial() and p.is_integral()
    assert p.coeff(0) == 1 and p.has_nonnegative_coefficients()
    assert p.is_palindromic(2 * rep.dim)
    if rep.genus == 0:
        assert all(p.coeff(i) == 0 for i in range(1, 2 * rep.dim, 2))
    # b_0 = b_top = 1
    assert p.evaluate(1) >= 2
    for o in rep.orbits:
        assert o.multiplicity.has_nonnegative_coefficients()
        assert o.multiplicity == o.multiplicity.substitute_power(-1)
    assert rep.stalk_identity_holds()


@given(seeds)
def test_random_surfaces(seed):
    e = one_fan(seed, 1)
    rep = poincare_complete(e)
    assert_report_invariants(rep)
    assert rep.poincare == poincare_surface_closed_form(e)


@settings(max_examples=8)
@given(seeds)
def test_random_threefolds(seed):
    e = one_fan(seed, 2, max_genus=1, max_points=3, tangency=0.5)
    rep = poincare_complete(e)
    assert_report_invariants(rep)
    assert rep.poincare == poincare_threefold_closed_form(e)


@settings(max_examples=15)
@given(seeds, st.integers(1, 3))
def test_scaling_does_not_matter(seed, k):
    e = one_fan(seed, 1)
    assert poincare_complete(scale_lattice(e, k)).poincare == poincare_complete(e).poincare


@settings(max_examples=15)
@given(seeds, st.sampled_from([[[1, 1], [0, 1]], [[0, 1], [1, 0]], [[2, 1], [1, 1]]]))
def test_unimodular_change_does_not_matter(seed, rows):
    e = one_fan(seed, 2, max_genus=1, max_points=2)
    assert poincare_complete(e.transform(rows)).poincare == poincare_complete(e).poincare


@settings(max_examples=5)
@given(seeds)
def test_direction_rule_does_not_matter(seed):
    e = one_fan(seed, 2, max_genus=0, max_points=3, tangency=1.0)
    a = poincare_complete(e, EngineConfig(direction="sum")).poincare
    b = poincare_complete(e, EngineConfig(direction="shifted")).poincare
    assert a == b


@settings(max_examples=15)
@given(seeds)
def test_r_diagonal(seed):
    hf = hf_poset(one_fan(seed, 2, max_genus=0, max_points=2, tangency=1.0))
    r = r_function(hf)
    assert all(r(a, a) == T ** -hf.orbit_dim(a) for a in range(len(hf)))
