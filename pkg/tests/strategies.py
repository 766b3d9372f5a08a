"""Shared hypothesis strategies."""
from hypothesis import assume
from hypothesis import strategies as st

from hstarlab.linalg import rank
from hstarlab.polytope import LatticePolytope


def int_matrices(max_rows=6, max_cols=6, lo=-20, hi=20):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def square_matrices(max_n=6, lo=-20, hi=20):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def full_dimensional(points):
    d = len(points[0])
    diffs = [[a - b for a, b in zip(p, points[0])] for p in points[1:]]
    return d == 0 or (diffs and rank(diffs) == d)


@st.composite
def polytopes(draw, min_dim=1, max_dim=4, max_coord=6, max_points=8):
    d = draw(st.integers(min_dim, max_dim))
    pts = draw(
        st.lists(
            st.tuples(*[st.integers(0, max_coord)] * d), min_size=d + 1, max_size=max_points, unique=True
        )
    )
    assume(full_dimensional(pts))
    return LatticePolytope.from_points(pts)


@st.composite
def hnf_simplices(draw, min_dim=1, max_dim=4, max_diag=5):
    d = draw(st.integers(min_dim, max_dim))
    diag = [draw(st.integers(1, max_diag)) for _ in range(d)]
    rows = []
    for i in range(d):
        row = [draw(st.integers(0, diag[i] - 1)) for _ in range(i)] + [diag[i]] + [0] * (d - i - 1)
        rows.append(tuple(row))
    return LatticePolytope(((0,) * d,) + tuple(rows))
