import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tvarih.divisors import Curve, Locus, PolyDivisor, hf_poset
from tvarih.engine import (EngineConfig, EngineError, IncidenceFunction, choose_direction,
                           incidence_invert, orbit_closure_poincare, pointed_reduction,
                           poincare_affine_product, poincare_attractive, poincare_complete,
                           poincare_contraction_free, poincare_relative_spectrum,
                           poincare_surface_closed_form, poincare_threefold_closed_form,
                           r_function, refine_lattice, scale_lattice)
from tvarih.examples import affine_threefold, nonpointed_threefold
from tvarih.polyhedra import Cone, Polyhedron
from tvarih.polynomials import ONE, T, LaurentPolynomial, parse


# --- incidence algebra ---------------------------------------------------------

def chain(n):
    return n, (lambda a, b: a <= b)


def test_identity_inverts_to_identity():
    n, leq = chain(3)
    e = IncidenceFunction.identity(n, leq)
    assert incidence_invert(e) == e


def test_two_chain():
    n, leq = chain(2)
    f = 3 * T + 1
    alpha = IncidenceFunction(n, leq, {(0, 0): ONE, (1, 1): ONE, (0, 1): f})
    inv = incidence_invert(alpha)
    assert inv(0, 1) == -f


def test_unit_diagonal_inverts():
    n, leq = chain(1)
    alpha = IncidenceFunction(n, leq, {(0, 0): T ** -2})
    assert incidence_invert(alpha)(0, 0) == T ** 2


def test_non_unit_diagonal_is_rejected():
    n, leq = chain(1)
    with pytest.raises(EngineError):
        incidence_invert(IncidenceFunction(n, leq, {(0, 0): 2 * ONE}))


def random_poset(rng, n):
    """Subsets-of-a-set order restricted to random subsets, shuffled."""
    sets = [frozenset(x for x in range(4) if rng.random() < 0.5) for _ in range(n)]
    sets = list(dict.fromkeys(sets))
    rng.shuffle(sets)
    return len(sets), (lambda a, b: sets[a] <= sets[b])


@given(st.integers(0, 10**6), st.integers(1, 7))
def test_inverse_is_two_sided(seed, n):
    rng = random.Random(seed)
    size, leq = random_poset(rng, n)
    vals = {}
    for a in range(size):
        for b in range(size):
            if leq(a, b):
                if a == b:
                    vals[(a, b)] = rng.choice((1, -1)) * T ** rng.randint(-2, 2)
                else:
                    vals[(a, b)] = LaurentPolynomial({rng.randint(-2, 2): rng.randint(-3, 3)})
    alpha = IncidenceFunction(size, leq, vals)
    inv = incidence_invert(alpha)
    assert (alpha * inv).is_identity()
    assert (inv * alpha).is_identity()


# --- affine pieces -------------------------------------------------------------

@pytest.mark.parametrize("genus", [0, 1, 2, 3])
def test_surface_attractive_point(genus):
    s = Cone([(1,)])
    curve = Curve(genus, ("a", "b"), "genus0" if genus == 0 else "generic")
    d = PolyDivisor(s, {"a": Polyhedron([(Fraction(2, 3),)], [(1,)])})
    assert poincare_attractive(d, curve) == 1 + 2 * genus * T
    assert poincare_relative_spectrum(d, curve) == T ** 2 + 2 * genus * T + 1


def test_affine_threefold_pair():
    d, c = affine_threefold()
    assert poincare_attractive(d, c) == 2 * T ** 2 + 1
    # g(tail) = 1, Cayley cones: simplicial (g = 1) and over a segment x tail (g = 1 + t^2)
    assert poincare_relative_spectrum(d, c) == (T ** 2 - 1) + 1 + (1 + T ** 2)


@pytest.mark.parametrize("u", [(1, 1), (1, 2), (2, 1), (1, 3)])
def test_affine_threefold_direction_independent(u):
    d, c = affine_threefold()
    assert poincare_attractive(d, c, u=u) == 2 * T ** 2 + 1


@pytest.mark.parametrize("shift", [(1, 1), (1, 2), (0, 3), (2, 1)])
def test_toric_cone_attractive_matches_local_g(shift):
    """Over P^1 with one shifted coefficient, X is the affine toric variety of the cone
    spanned by (tail, 0), (D_a, 1) and (D_inf, -1) = (tail, -1); its local IH is g."""
    from tvarih.toric import g_cone
    s = Cone([(1, 0), (0, 1)])
    d = PolyDivisor(s, {"a": Polyhedron([shift], s.rays, 2)})
    c = Curve(0, ("a", "inf"))
    toric = Cone([(1, 0, 0), (0, 1, 0), shift + (1,), (0, 0, -1)], 3)
    assert poincare_attractive(d, c) == g_cone(toric)


def test_pointed_reduction_of_full_tail_is_identity():
    d, c = affine_threefold()
    assert pointed_reduction(d, c) == (d, 0)


def test_nonpointed_example():
    d, c = nonpointed_threefold()
    from tvarih.divisors import DivisorialFan
    refined, k = refine_lattice(DivisorialFan(c, [d]))
    assert k == 2
    pointed, s = pointed_reduction(refined.generators[0], c)
    assert s == 1 and pointed.rank == 1
    assert pointed.tail == Cone([(1,)])
    assert len(pointed.coeffs) == 1
    assert poincare_affine_product(refined.generators[0], c) == 1 + T


def test_nondecomposable_is_rejected():
    d, c = nonpointed_threefold()
    with pytest.raises(EngineError):
        pointed_reduction(d, c)


def test_generic_policy_needs_zero_translations():
    s = Cone([(1, 0)], 2)
    d = PolyDivisor(s, {"a": Polyhedron([(1, 0)], [(1, 0)]), "b": Polyhedron([(2, 0)], [(1, 0)])})
    c = Curve(1, ("a", "b"), "generic")
    pointed, corank = pointed_reduction(d, c)
    assert corank == 1
    assert poincare_affine_product(d, c) == (1 + T) * (1 + 2 * T)


def test_choose_direction():
    s = Cone([(1, 0), (1, 2)])
    for rule in ("sum", "shifted"):
        assert s.in_relative_interior(choose_direction(s, rule))
    assert choose_direction(s, "sum") != choose_direction(s, "shifted")


# --- complete varieties --------------------------------------------------------

def test_quadric(quadric):
    rep = poincare_complete(quadric)
    assert rep.poincare == parse("t^6 + t^4 + t^2 + 1")
    assert rep.base == -2 * parse("t^6 + 3t^4 + 3t^2 + 1") + parse("3t^6 + 11t^4 + 11t^2 + 3")
    assert poincare_contraction_free(quadric) == rep.base
    assert rep.refine_index == 2
    by_dim = {}
    for o in rep.orbits:
        by_dim.setdefault(o.orbit_dim, set()).add(o.multiplicity)
    assert by_dim[1] == {ONE}
    assert rep.stalk_identity_holds()
    assert poincare_threefold_closed_form(quadric) == rep.poincare


def test_quadric_point_orbit_multiplicity(quadric):
    """S = q - eta/t with eta the number of strictly smaller orbits."""
    rep = poincare_complete(quadric)
    for b, o in enumerate(rep.orbits):
        if o.orbit_dim == 0:
            eta = len(rep.hf.below(b)) - 1
            assert o.multiplicity == o.stalk - eta * T ** -1


def test_surface(surface):
    rep = poincare_complete(surface)
    assert rep.poincare == parse("t^4 + t^2 + 1")
    assert rep.base - 2 * T ** 2 == rep.poincare
    assert poincare_surface_closed_form(surface) == rep.poincare


def test_r_function_diagonal(quadric):
    refined, _ = refine_lattice(quadric)
    hf = hf_poset(refined)
    r = r_function(hf)
    for a in range(len(hf)):
        assert r(a, a) == T ** -hf.orbit_dim(a)
        for b in hf.above(a):
            if hf.orbit_dim(a) == 1 and hf.orbit_dim(b) == 0:
                assert r(a, b) == T ** -1


def test_orbit_closures(quadric):
    refined, _ = refine_lattice(quadric)
    hf = hf_poset(refined)
    for a in range(len(hf)):
        want = ONE if hf.orbit_dim(a) == 0 else 1 + T ** 2
        assert orbit_closure_poincare(hf, a) == want


def test_contraction_free_product():
    """Trivial coefficients over P^1: X = P^1 x (toric), P = (t^2 + 1) h."""
    from tvarih.divisors import DivisorialFan
    from tvarih.toric import h_fan, projective_space_fan
    f = projective_space_fan(2)
    e = DivisorialFan(Curve(0, ("0",)), [PolyDivisor(c, {}, Locus.affine(["0"]))
                                         for c in f.maximal_cones] +
                      [PolyDivisor(c, {}, Locus.affine(["1"])) for c in f.maximal_cones], 2)
    rep = poincare_complete(e)
    assert rep.poincare == (T ** 2 + 1) * h_fan(f)
    assert not rep.orbits


def test_rank_zero_is_the_curve():
    from tvarih.divisors import DivisorialFan
    e = DivisorialFan(Curve(2, ("a",), "generic"), [PolyDivisor(Cone.zero(0), {})], 0)
    assert poincare_complete(e).poincare == 1 + 4 * T + T ** 2


def test_scaling_does_not_change_the_answer(surface):
    assert poincare_complete(scale_lattice(surface, 6)).poincare == parse("t^4 + t^2 + 1")


def test_direction_rule_does_not_change_the_answer(quadric):
    a = poincare_complete(quadric, EngineConfig(direction="sum")).poincare
    b = poincare_complete(quadric, EngineConfig(direction="shifted")).poincare
    assert a == b
