"""Exact integer and rational linear algebra.

Matrices are plain lists of row lists holding Python ints (or
``fractions.Fraction`` where noted).  Every routine is exact; nothing in
this module touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

IntMatrix = list[list[int]]
RatVector = tuple[Fraction, ...]


class NotSublattice(ValueError):
    pass


class PointNotInLattice(ValueError):
    def __init__(self, point):
        super().__init__(f"point {tuple(str(c) for c in point)} is not in the lattice")
        self.point = point


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for row in a
    ]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def vecmat(v: Sequence, m: Sequence[Sequence]) -> list:
    """Row vector times matrix."""
    if not m:
        return []
    return [sum(v[k] * m[k][j] for k in range(len(m))) for j in range(len(m[0]))]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> list[int]:
    g = reduce(gcd, v, 0)
    return list(v) if g in (0, 1) else [x // g for x in v]


def det(m: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    return len(_row_echelon(m))


def _row_echelon(m: Sequence[Sequence]) -> list[list[Fraction]]:
    rows = [[Fraction(x) for x in row] for row in m]
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


def hnf(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  Pivots of
    ``h`` are positive, entries above a pivot lie in ``[0, pivot)`` and zero
    rows come last.
    """
    a = [[int(x) for x in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    u = identity(nrows)
    p = 0
    for j in range(ncols):
        if p == nrows:
            break
        while True:
            nz = [i for i in range(p, nrows) if a[i][j] != 0]
            if not nz:
                break
            i_min = min(nz, key=lambda i: abs(a[i][j]))
            if i_min != p:
                a[p], a[i_min] = a[i_min], a[p]
                u[p], u[i_min] = u[i_min], u[p]
            done = True
            for i in range(p + 1, nrows):
                if a[i][j]:
                    q = a[i][j] // a[p][j]
                    a[i] = [x - q * y for x, y in zip(a[i], a[p])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[p])]
                    if a[i][j]:
                        done = False
            if done:
                break
        if a[p][j] == 0:
            continue
        if a[p][j] < 0:
            a[p] = [-x for x in a[p]]
            u[p] = [-x for x in u[p]]
        piv = a[p][j]
        for i in range(p):
            q = a[i][j] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[p])]
                u[i] = [x - q * y for x, y in zip(u[i], u[p])]
        p += 1
    return a, u


def snf(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(d, u, v)`` with ``u @ m @ v == d``.

    ``d`` is diagonal with nonnegative entries forming a divisibility chain.
    """
    a = [[int(x) for x in row] for row in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u = identity(nr)
    v = identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(nr, nc)):
        while True:
            entries = [
                (abs(a[i][j]), i, j)
                for i in range(t, nr)
                for j in range(t, nc)
                if a[i][j]
            ]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) for j in range(t + 1, nc) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            # pull the offending row into row t; next pass shrinks the pivot
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    d, _, _ = snf(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def solve_left(basis: Sequence[Sequence], v: Sequence) -> list[Fraction] | None:
    """Solve ``x @ basis == v`` exactly; ``None`` when inconsistent.

    ``basis`` must have linearly independent rows.
    """
    k = len(basis)
    n = len(v)
    if k == 0:
        return [] if all(x == 0 for x in v) else None
    # augmented system basis^T x = v
    rows = [[Fraction(basis[i][j]) for i in range(k)] + [Fraction(v[j])] for j in range(n)]
    piv_cols = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            raise ValueError("basis rows are linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, n)):
        return None
    return [rows[i][k] for i in range(k)]


def inverse(m: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse by one Gauss-Jordan pass over ``[m | I]``."""
    n = len(m)
    rows = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        rows[c], rows[piv] = rows[piv], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [x * inv for x in rows[c]]
        pivot_row = rows[c]
        for i in range(n):
            f = rows[i][c]
            if i != c and f:
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pivot_row)]
    return [row[n:] for row in rows]


def int_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    inv = inverse(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis of ``{x in Z^n : m @ x == 0}``; the result is saturated."""
    n = ncols if ncols is not None else len(m[0])
    if not m:
        return identity(n)
    h, u = hnf(transpose(m))
    return [u[i] for i in range(n) if not any(h[i])]


def orthogonal_normal(rows: Sequence[Sequence[int]], n: int) -> list[int]:
    """Primitive integer normal to ``n - 1`` independent rows in ``Z^n``."""
    if n == 1:
        return [1]
    normal = []
    for j in range(n):
        minor = [[r[c] for c in range(n) if c != j] for r in rows]
        normal.append((-1) ** j * det(minor))
    return primitive(normal)


def frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def as_ratvector(v: Iterable) -> RatVector:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class AffineLattice:
    """``base_point + Z-span(basis)`` inside ``Q^n``.

    ``basis`` rows are rational and linearly independent; they are stored as
    the HNF of the integer matrix ``denominator * basis`` divided back by
    ``denominator`` so equal lattices compare equal.
    """

    base_point: RatVector
    basis: tuple[RatVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return len(self.base_point)

    @property
    def denominator(self) -> int:
        return reduce(lcm, (x.denominator for row in self.basis for x in row), 1)

    def coordinates(self, point: Sequence) -> list[Fraction] | None:
        diff = [Fraction(p) - b for p, b in zip(point, self.base_point)]
        return solve_left(self.basis, diff)

    def __contains__(self, point) -> bool:
        x = self.coordinates(point)
        return x is not None and all(c.denominator == 1 for c in x)

    def point(self, coords: Sequence[int]) -> RatVector:
        """Map lattice coordinates back to ambient coordinates."""
        lin = vecmat(list(coords), self.basis) if self.basis else [Fraction(0)] * self.ambient_dim
        return tuple(b + x for b, x in zip(self.base_point, lin))


def _normalized_basis(gens: Sequence[Sequence[Fraction]], n: int) -> tuple[RatVector, ...]:
    den = reduce(lcm, (Fraction(x).denominator for row in gens for x in row), 1)
    scaled = [[int(Fraction(x) * den) for x in row] for row in gens]
    if not scaled:
        return ()
    h, _ = hnf(scaled)
    return tuple(tuple(Fraction(x, den) for x in row) for row in h if any(row))


def lattice_from_generators(base_point: Sequence, gens: Sequence[Sequence]) -> AffineLattice:
    n = len(base_point)
    return AffineLattice(as_ratvector(base_point), _normalized_basis(gens, n))


def standard_lattice(n: int) -> AffineLattice:
    return lattice_from_generators([0] * n, identity(n))


def refined_lattice(n: int, extra: Sequence[Sequence]) -> AffineLattice:
    """``Z^n`` plus the integer span of the rational rows ``extra``."""
    return lattice_from_generators([0] * n, identity(n) + [list(r) for r in extra])


def affine_span(points: Sequence[Sequence]) -> AffineLattice:
    """All integral affine combinations of ``points``."""
    pts = [as_ratvector(p) for p in points]
    if not pts:
        return AffineLattice((), ())
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    return AffineLattice(base, _normalized_basis(diffs, len(base)))


def lattice_index(sub: AffineLattice, sup: AffineLattice) -> int:
    """``|sup / sub|`` for full-rank nested lattices."""
    if sub.rank != sup.rank:
        raise ValueError("lattices must have equal rank")
    rows = []
    for gen in sub.basis:
        x = solve_left(sup.basis, gen)
        if x is None or any(c.denominator != 1 for c in x):
            raise NotSublattice(f"generator {gen} is not in the super lattice")
        rows.append([int(c) for c in x])
    if sub.base_point not in sup:
        raise NotSublattice("base point of sub is not in the super lattice")
    return abs(det(rows))


def rebase(points: Sequence[Sequence], lattice: AffineLattice) -> list[tuple[int, ...]]:
    out = []
    for p in points:
        x = lattice.coordinates(p)
        if x is None or any(c.denominator != 1 for c in x):
            raise PointNotInLattice(p)
        out.append(tuple(int(c) for c in x))
    return out


def unimodular_completion(u: Sequence[int]) -> IntMatrix:
    """Unimodular matrix whose last row is the primitive vector ``u``."""
    h, t = hnf([[x] for x in u])
    if h[0][0] != 1:
        raise ValueError("vector is not primitive")
    # t @ u^T = e_1, so the first column of t^{-1} is u
    tinv = int_inverse(t)
    rows = transpose(tinv)
    return rows[1:] + [rows[0]]
