from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from hstarlab.linalg import (
    NotSublattice,
    PointNotInLattice,
    affine_span,
    det,
    hnf,
    identity,
    int_inverse,
    inverse,
    integer_kernel,
    invariant_factors,
    lattice_from_generators,
    lattice_index,
    matmul,
    rank,
    rebase,
    refined_lattice,
    snf,
    standard_lattice,
    unimodular_completion,
)
from strategies import int_matrices, square_matrices


def is_row_hnf(h):
    last_pivot = -1
    seen_zero = False
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        j = nz[0]
        if j <= last_pivot or row[j] <= 0:
            return False
        if any(not 0 <= h[r][j] < row[j] for r in range(i)):
            return False
        last_pivot = j
    return True


# -- hnf ---------------------------------------------------------------------


def test_hnf_small_example():
    h, u = hnf([[1, 2], [3, 4]])
    assert h == [[1, 0], [0, 2]]
    assert matmul(u, [[1, 2], [3, 4]]) == h
    assert abs(det(u)) == 1


def test_hnf_identity_and_zero():
    h, u = hnf(identity(3))
    assert h == identity(3) and u == identity(3)
    h, _ = hnf([[0, 0], [0, 0]])
    assert h == [[0, 0], [0, 0]]


@given(int_matrices())
def test_hnf_invariants(m):
    h, u = hnf(m)
    assert matmul(u, m) == h
    assert abs(det(u)) == 1
    assert is_row_hnf(h)
    assert sum(1 for row in h if any(row)) == rank(m)


@given(int_matrices(max_rows=4, max_cols=4, lo=-6, hi=6))
def test_hnf_is_canonical_under_row_operations(m):
    # the row lattice determines the form; u is unipotent upper triangular
    u = [[int(i == j) + (2 if j == i + 1 else 0) for j in range(len(m))] for i in range(len(m))]
    assert hnf(matmul(u, m))[0] == hnf(m)[0]


# -- snf ---------------------------------------------------------------------


def test_snf_examples():
    d, u, v = snf([[2, 4], [6, 8]])
    assert [d[0][0], d[1][1]] == [2, 4]
    assert snf(identity(2))[0] == identity(2)
    assert snf([[6]])[0] == [[6]]


@given(int_matrices(max_rows=5, max_cols=5))
def test_snf_invariants(m):
    d, u, v = snf(m)
    assert matmul(matmul(u, m), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(x >= 0 for x in diag)
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nonzero = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert diag[len(nonzero):] == [0] * (len(diag) - len(nonzero))


@given(square_matrices(max_n=5, lo=-9, hi=9))
def test_snf_matches_sympy(m):
    ours = [x for x in invariant_factors(m)]
    oracle = smith_normal_form(Matrix(m), domain=ZZ)
    theirs = [abs(int(oracle[i, i])) for i in range(len(m))]
    assert sorted(ours) == sorted(theirs)


@given(square_matrices(max_n=5))
def test_det_matches_sympy(m):
    assert det(m) == Matrix(m).det()


# -- lattices ----------------------------------------------------------------


def test_affine_span_examples():
    assert affine_span([(0, 0), (1, 0), (0, 1)]) == standard_lattice(2)
    four = affine_span([(0, 0), (2, 0), (0, 2)])
    assert lattice_index(four, standard_lattice(2)) == 4
    three = affine_span([(0, 0), (3, 0), (0, 3), (1, 1)])
    assert lattice_index(three, standard_lattice(2)) == 3


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)), min_size=1, max_size=6))
def test_affine_span_idempotent(points):
    lat = affine_span(points)
    gens = [lat.base_point] + [tuple(b + x for b, x in zip(lat.base_point, row)) for row in lat.basis]
    assert affine_span(gens) == lat
    assert all(p in lat for p in points)


def test_lattice_index_examples():
    z2 = standard_lattice(2)
    assert lattice_index(z2, z2) == 1
    assert lattice_index(lattice_from_generators([0, 0], [[2, 0], [0, 2]]), z2) == 4
    half = refined_lattice(8, [[Fraction(1, 2)] * 8])
    assert lattice_index(standard_lattice(8), half) == 2
    with pytest.raises(NotSublattice):
        lattice_index(half, standard_lattice(8))


@given(square_matrices(max_n=3, lo=-4, hi=4), square_matrices(max_n=3, lo=-4, hi=4))
def test_lattice_index_multiplicative(a, b):
    n = min(len(a), len(b))
    a = [row[:n] for row in a[:n]]
    b = [row[:n] for row in b[:n]]
    if det(a) == 0 or det(b) == 0:
        return
    top = standard_lattice(n)
    mid = lattice_from_generators([0] * n, a)
    low = lattice_from_generators([0] * n, matmul(b, a))
    assert lattice_index(low, mid) * lattice_index(mid, top) == lattice_index(low, top)


def test_rebase_examples():
    pts = [(1, 2), (0, 0), (-3, 4)]
    assert rebase(pts, standard_lattice(2)) == pts
    half = refined_lattice(8, [[Fraction(1, 2)] * 8])
    (coords,) = rebase([(1,) * 8], half)
    assert all(isinstance(c, int) for c in coords)
    lat = lattice_from_generators([0, 0], [[3, 0], [0, 3], [1, 1]])
    assert rebase([(3, 0)], lat)[0] and (3, 0) in lat
    with pytest.raises(PointNotInLattice):
        rebase([(1, 0)], lat)


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=5), st.integers(2, 6))
def test_rebase_round_trip(points, q):
    lat = refined_lattice(2, [[Fraction(1, q), Fraction(q - 1, q)]])
    coords = rebase(points, lat)
    assert [tuple(lat.point(c)) for c in coords] == [tuple(map(Fraction, p)) for p in points]


# -- helpers -----------------------------------------------------------------


@given(st.lists(st.integers(-30, 30), min_size=1, max_size=5))
def test_unimodular_completion(u):
    from math import gcd
    from functools import reduce

    g = reduce(gcd, u)
    if g == 0:
        return
    u = [x // g for x in u]
    m = unimodular_completion(u)
    assert m[-1] == u
    assert abs(det(m)) == 1
    assert matmul(int_inverse(m), m) == identity(len(u))


@given(int_matrices(max_rows=4, max_cols=5, lo=-5, hi=5))
def test_integer_kernel_is_saturated(m):
    ker = integer_kernel(m, len(m[0]))
    assert all(all(sum(r[j] * k[j] for j in range(len(k))) == 0 for r in m) for k in ker)
    assert len(ker) == len(m[0]) - rank(m)
    if ker:
        # saturated: the kernel basis extends to a unimodular basis
        assert invariant_factors(ker)[: len(ker)] == [1] * len(ker)


@given(square_matrices())
def test_inverse_matches_sympy(m):
    if det(m) == 0:
        with pytest.raises(ValueError):
            inverse(m)
        return
    inv = Matrix(m).inv()
    assert inverse(m) == [[Fraction(int(x.p), int(x.q)) for x in inv.row(i)] for i in range(len(m))]
