from fractions import Fraction

from hypothesis import given, strategies as st

from tvarih import linalg as la

small = st.integers(-6, 6)


def int_matrix(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def det(m):
    m = [list(map(Fraction, r)) for r in m]
    n, out = len(m), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return out


def test_primitive():
    assert la.primitive((4, -6, 0)) == (2, -3, 0)
    assert la.primitive((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    assert la.primitive((0, 0)) == (0, 0)


def test_rref_and_rank():
    rows, piv = la.rref([(1, 2, 3), (2, 4, 6), (0, 1, 1)])
    assert piv == [0, 1]
    assert la.rank([(1, 2), (2, 4)]) == 1


@given(int_matrix(3, 3))
def test_inverse_roundtrip(m):
    if la.rank(m, 3) < 3:
        return
    inv = la.inverse(m)
    prod = [tuple(la.dot(r, c) for c in la.transpose(inv)) for r in m]
    assert prod == [tuple(int(i == j) for j in range(3)) for i in range(3)]


@given(int_matrix(2, 4))
def test_nullspace_is_orthogonal(m):
    ns = la.nullspace(m, 4)
    assert len(ns) == 4 - la.rank(m, 4)
    for v in ns:
        assert all(la.dot(r, v) == 0 for r in m)


@given(int_matrix(2, 4))
def test_integer_kernel_is_saturated_basis(m):
    ker = la.integer_kernel(m, 4)
    assert len(ker) == 4 - la.rank(m, 4)
    for v in ker:
        assert all(type(x) is int for x in v)
        assert all(la.idot(r, v) == 0 for r in m)
    if ker:
        # extending a saturated basis to a lattice basis must succeed with det +-1
        comp = la.complete_basis(ker, 4)
        assert abs(det(list(ker) + list(comp))) == 1


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_saturated_basis_spans_same_space(vectors):
    sat = la.saturated_basis(vectors, 3)
    assert len(sat) == la.rank(vectors, 3)
    assert la.rank(list(sat) + vectors, 3) == len(sat)
