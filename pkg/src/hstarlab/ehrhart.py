"""h*-vectors by independent routes.

``hstar_interp`` counts lattice points in dilations and applies the
alternating binomial transform of the Ehrhart series.  ``hstar_group``
works only for simplices and counts elements of the finite abelian group of
fractional barycentric-type tuples by height.  ``hstar_triangulated``
extends the group route to any polytope through a half-open decomposition
of a triangulation, which stays cheap in dimensions where counting does not.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import comb, lcm
from typing import Sequence

from .linalg import det, dot, inverse, snf
from .polytope import (
    LatticePolytope,
    count_interior,
    count_points,
    is_simplex,
    pulling_triangulation,
    restrict_to_affine_hull,
)
from .report import CheckReport


class NegativeCoefficient(ArithmeticError):
    pass


class NotSimplex(ValueError):
    pass


@dataclass(frozen=True)
class HStarVector:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError(f"h*_0 must be 1, got {self.coeffs}")
        if any(c < 0 for c in self.coeffs):
            raise NegativeCoefficient(f"negative h* coefficient in {self.coeffs}")

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> int:
        return max(i for i, c in enumerate(self.coeffs) if c)

    @property
    def volume(self) -> int:
        return sum(self.coeffs)

    def polynomial(self) -> str:
        """Ascending-power rendering, e.g. ``1 + 7 t + 1 t^2``."""
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(str(c) if i == 0 else f"{c} t" if i == 1 else f"{c} t^{i}")
        return " + ".join(terms)

    def __str__(self):
        return self.polynomial()


def degree(h: HStarVector) -> int:
    return h.degree


def volume(h: HStarVector) -> int:
    return h.volume


def hstar_from_counts(counts: Sequence[int]) -> tuple[int, ...]:
    """h* from ``counts[k] = |kP ∩ N|`` for ``k = 0..d``."""
    d = len(counts) - 1
    return tuple(
        sum((-1) ** i * comb(d + 1, i) * counts[j - i] for i in range(j + 1))
        for j in range(d + 1)
    )


def hstar_interp(p: LatticePolytope) -> HStarVector:
    d = p.ambient_dim
    coeffs = hstar_from_counts([count_points(p, k) for k in range(d + 1)])
    if any(c < 0 for c in coeffs):
        raise NegativeCoefficient(f"{coeffs} from {p}")
    return HStarVector(coeffs)


@dataclass(frozen=True)
class LambdaGroup:
    """The group of tuples ``r in [0,1)^{d+1}`` with ``sum r_i v_i`` in the
    lattice and ``sum r_i`` an integer, under coordinatewise addition mod 1.

    Elements are stored as integer numerators over the common
    ``denominator``; ``invariants`` are the nontrivial invariant factors.
    """

    denominator: int
    numerators: tuple[tuple[int, ...], ...]
    heights: tuple[int, ...]
    invariants: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.numerators)

    @cached_property
    def elements(self) -> tuple[tuple[Fraction, ...], ...]:
        q = self.denominator
        return tuple(tuple(Fraction(a, q) for a in r) for r in self.numerators)

    @cached_property
    def _index(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, r) -> bool:
        return tuple(Fraction(x) for x in r) in self._index

    def level(self, h: int) -> list[tuple[Fraction, ...]]:
        return [r for r, ht in zip(self.elements, self.heights) if ht == h]

    def counts(self, d: int) -> list[int]:
        out = [0] * (d + 1)
        for h in self.heights:
            out[h] += 1
        return out


def add_tuples(a, b):
    """Group addition: coordinatewise sum reduced mod 1."""
    return tuple((x + y) % 1 for x, y in zip(a, b))


def lambda_group(simplex: LatticePolytope) -> LambdaGroup:
    if not is_simplex(simplex):
        raise NotSimplex(f"{len(simplex.vertices)} vertices in dimension {simplex.ambient_dim}")
    d = simplex.ambient_dim
    a = [list(v) + [1] for v in simplex.vertices]
    dmat, u, _ = snf(a)
    diag = [dmat[i][i] for i in range(d + 1)]
    # r = y D^{-1} U (mod 1) for y in prod(range(d_j)); see module docstring
    q = lcm(*diag)
    gens = [(q // dj, u[j]) for j, dj in enumerate(diag) if dj > 1]
    numerators = []
    heights = []
    for ys in product(*(range(dj) for dj in diag if dj > 1)):
        r = [0] * (d + 1)
        for y, (scale, row) in zip(ys, gens):
            if y:
                f = y * scale
                for i in range(d + 1):
                    r[i] += f * row[i]
        r = tuple(x % q for x in r)
        s = sum(r)
        if s % q:
            raise ArithmeticError(f"non-integral height {Fraction(s, q)} for {r}")
        numerators.append(r)
        heights.append(s // q)
    invariants = tuple(dj for dj in diag if dj > 1)
    return LambdaGroup(q, tuple(numerators), tuple(heights), invariants)


def hstar_group(simplex: LatticePolytope) -> HStarVector:
    g = lambda_group(simplex)
    return HStarVector(g.counts(simplex.ambient_dim))


def _barycentric(cell) -> list[list[Fraction]]:
    """Rows ``c_i`` with ``lambda_i(x) = (x, 1) . c_i`` for the simplex ``cell``."""
    inv = inverse([list(v) + [1] for v in cell])
    return [list(col) for col in zip(*inv)]


def _generic_point(cell, coords) -> tuple[Fraction, ...]:
    """A point strictly inside the simplex ``cell`` at which no barycentric
    coordinate in ``coords`` vanishes, with a trailing 1 appended.

    ``coords[0]`` must belong to ``cell``.  The barycenter is nudged along a
    moment curve until it is generic.
    """
    d = len(cell) - 1
    centre = [Fraction(sum(v[i] for v in cell), d + 1) for i in range(d)]
    m = 7
    while True:
        q = tuple(c + Fraction(1, m ** (i + 1)) for i, c in enumerate(centre)) + (1,)
        if all(dot(c, q) > 0 for c in coords[0]) and all(dot(c, q) != 0 for rows in coords for c in rows):
            return q
        m = m * 3 + 1


def hstar_triangulated(p: LatticePolytope) -> HStarVector:
    """Sum of group-route h* over the half-open pieces of a triangulation.

    For a generic interior point ``q``, every simplex drops the facets that
    separate it from ``q``; the pieces then tile ``p``.  A dropped facet
    opposite vertex ``i`` shifts every group element with ``r_i = 0`` up by one.
    """
    d = p.ambient_dim
    if d == 0:
        return HStarVector((1,))
    simplices = pulling_triangulation(p)
    coords = [_barycentric([p.vertices[i] for i in simplex]) for simplex in simplices]
    q = _generic_point([p.vertices[i] for i in simplices[0]], coords)
    total = [0] * (d + 1)
    for simplex, bary in zip(simplices, coords):
        # facet i separates q from the cell exactly when lambda_i(q) < 0
        excluded = [i for i in range(d + 1) if dot(bary[i], q) < 0]
        g = lambda_group(LatticePolytope(tuple(p.vertices[i] for i in simplex)))
        for r, ht in zip(g.numerators, g.heights):
            total[ht + sum(1 for i in excluded if r[i] == 0)] += 1
    return HStarVector(total)


INTERP_MAX_DIM = 6


def hstar(p: LatticePolytope) -> HStarVector:
    """h* by the group route for simplices; non-simplices are counted up to
    dimension ``INTERP_MAX_DIM`` and triangulated beyond it."""
    if is_simplex(p):
        return hstar_group(p)
    if p.ambient_dim <= INTERP_MAX_DIM:
        return hstar_interp(p)
    return hstar_triangulated(p)


def simplex_volume(simplex: LatticePolytope) -> int:
    v0 = simplex.vertices[0]
    return abs(det([[a - b for a, b in zip(v, v0)] for v in simplex.vertices[1:]]))


def normalized_volume(p: LatticePolytope) -> int:
    """``d!`` times the Euclidean volume, by coning from the first vertex."""
    d = p.ambient_dim
    if d == 0:
        return 1
    if is_simplex(p):
        return simplex_volume(p)
    v0 = p.vertices[0]
    total = 0
    for n, b in p.hrep:
        height = b - sum(x * y for x, y in zip(n, v0))
        if height == 0:
            continue
        face = [v for v in p.vertices if sum(x * y for x, y in zip(n, v)) == b]
        total += height * normalized_volume(restrict_to_affine_hull(face))
    return total


def identity_checks(p: LatticePolytope, h: HStarVector) -> CheckReport:
    """Classical identities linking h* to point counts and volume."""
    d = p.ambient_dim
    s = h.degree
    npts = count_points(p, 1)
    rows = [
        ("h0", h[0], 1),
        ("h1", h[1], npts - d - 1),
        ("hs", h[s], count_interior(p, d + 1 - s) if d + 1 - s >= 1 else 1),
        ("hd", h[d], count_interior(p, 1) if d >= 1 else 1),
    ]
    rows.append(("volume", h.volume, normalized_volume(p)))
    if is_simplex(p):
        rows.append(("volume_group", h.volume, lambda_group(p).order))
    failed = [(name, (got, want)) for name, got, want in rows if got != want]
    witnesses = tuple((name, got) for name, got, _ in rows)
    if failed:
        return CheckReport("identities", False, tuple(failed))
    return CheckReport("identities", True, witnesses, "all")
