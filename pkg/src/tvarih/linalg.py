"""Exact rational and integer linear algebra on plain tuples.

Vectors are tuples of ``Fraction`` (or ``int``); matrices are lists of rows.
Only what the polyhedral layer needs lives here: echelon forms, kernels,
integer column reduction, and lattice completions.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vec = tuple


def frac_vec(v: Iterable) -> tuple:
    return tuple(Fraction(x) for x in v)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def idot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def scale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def primitive(v: Sequence) -> tuple:
    """Smallest positive multiple of ``v`` with coprime integer entries."""
    if all(type(x) is int for x in v):
        g = gcd(*v)
        return tuple(v) if g in (0, 1) else tuple(x // g for x in v)
    fs = [Fraction(x) for x in v]
    if all(x == 0 for x in fs):
        return tuple(0 for _ in fs)
    den = 1
    for x in fs:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in fs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def denominator_lcm(values: Iterable) -> int:
    d = 1
    for x in values:
        d = lcm(d, Fraction(x).denominator)
    return d


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Rational basis of {x : r.x = 0 for every row r}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def span_basis(vectors: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Canonical basis (reduced echelon rows) of the span of ``vectors``."""
    if not vectors:
        return []
    return rref(vectors, ncols)[0]


def solve(matrix_rows: Sequence[Sequence], rhs: Sequence):
    """Unique solution x of A x = b for square invertible A."""
    n = len(matrix_rows)
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(matrix_rows, rhs)]
    red, piv = rref(aug, n + 1)
    if piv != list(range(n)):
        raise ValueError("singular system")
    return tuple(row[n] for row in red)


def inverse(matrix_rows: Sequence[Sequence]) -> list[tuple]:
    n = len(matrix_rows)
    aug = [list(map(Fraction, r)) + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(matrix_rows)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ValueError("singular matrix")
    return [tuple(row[n:]) for row in red]


def transpose(rows: Sequence[Sequence]) -> list[tuple]:
    return [tuple(col) for col in zip(*rows)]


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(r, v) for r in rows)


def vec_mat(v: Sequence, rows: Sequence[Sequence], ncols: int) -> tuple:
    """Row vector times matrix."""
    out = [Fraction(0)] * ncols
    for c, row in zip(v, rows):
        if c:
            for j in range(ncols):
                out[j] += c * row[j]
    return tuple(out)


# --- integer lattice helpers -------------------------------------------------

def column_reduce(rows: Sequence[Sequence[int]], ncols: int):
    """Integer column operations bringing ``rows`` to column echelon form.

    Returns (U, r) where U is unimodular (list of rows) and the product
    rows * U has its nonzero columns exactly in positions 0..r-1.
    """
    m = [[int(x) for x in r] for r in rows]
    u = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def colop(dst, src, q):
        # column dst -= q * column src
        for row in m:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    def swap(a, b):
        for row in m:
            row[a], row[b] = row[b], row[a]
        for row in u:
            row[a], row[b] = row[b], row[a]

    col = 0
    for i in range(len(m)):
        if col >= ncols:
            break
        while True:
            nz = [j for j in range(col, ncols) if m[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(m[i][j]))
            if j0 != col:
                swap(j0, col)
            done = True
            for j in range(col + 1, ncols):
                if m[i][j] != 0:
                    colop(j, col, m[i][j] // m[i][col])
                    if m[i][j] != 0:
                        done = False
            if done:
                break
        if any(m[i][j] != 0 for j in range(col, ncols)):
            col += 1
    return u, col


def integer_kernel(rows: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Z-basis of the saturated lattice {x in Z^n : r.x = 0}."""
    int_rows = [primitive(r) for r in rows if not is_zero(r)]
    if not int_rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    u, r = column_reduce(int_rows, ncols)
    return [tuple(u[i][j] for i in range(ncols)) for j in range(r, ncols)]


def saturated_basis(vectors: Sequence[Sequence], ncols: int) -> list[tuple]:
    """Z-basis of span(vectors) intersected with Z^n."""
    if not vectors or all(is_zero(v) for v in vectors):
        return []
    eqs = nullspace(vectors, ncols)
    return integer_kernel(eqs, ncols)


def complete_basis(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple]:
    """Extend a basis of a saturated sublattice to a basis of Z^n.

    Returns the extra vectors only.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    u, r = column_reduce(rows, ncols)
    if r != len(rows):
        raise ValueError("vectors are linearly dependent")
    v = inverse(u)
    prod = [[sum(a * b for a, b in zip(row, col)) for col in zip(*u)] for row in rows]
    lower = [prod[i][:r] for i in range(r)]
    det = 1
    for i in range(r):
        det *= lower[i][i]
    if abs(det) != 1:
        raise ValueError("sublattice is not saturated")
    return [tuple(int(x) for x in v[i]) for i in range(r, ncols)]
