"""Lattice polytopes given by vertex lists, with exact point counting."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .linalg import (
    AffineLattice,
    affine_span,
    dot,
    integer_kernel,
    orthogonal_normal,
    primitive,
    rank,
    rebase,
)


class NotFullDimensional(ValueError):
    pass


class RedundantVertex(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


Facet = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class HRep:
    """Facets ``normal . x <= offset`` with primitive integer normals."""

    facets: tuple[Facet, ...]

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)


def _hull_facets(points: Sequence[Sequence[int]]) -> list[Facet]:
    """Facets of the convex hull of a full-dimensional point cloud."""
    pts = sorted(set(tuple(p) for p in points))
    d = len(pts[0])
    if d == 0:
        return []
    if d == 1:
        xs = [p[0] for p in pts]
        return sorted({((-1,), -min(xs)), ((1,), max(xs))})
    if comb(len(pts), d) <= SUBSET_LIMIT:
        return _facets_by_subsets(pts)
    return _facets_by_double_description(pts)


SUBSET_LIMIT = 2000


def _facets_by_subsets(pts: list[tuple[int, ...]]) -> list[Facet]:
    # candidate hyperplanes through every d-subset, kept if one-sided
    d = len(pts[0])
    found = set()
    for subset in combinations(range(len(pts)), d):
        p0 = pts[subset[0]]
        diffs = [[a - b for a, b in zip(pts[i], p0)] for i in subset[1:]]
        n = orthogonal_normal(diffs, d)
        if not any(n):
            continue
        b = dot(n, p0)
        vals = [dot(n, p) for p in pts]
        if all(v <= b for v in vals):
            found.add((tuple(n), b))
        elif all(v >= b for v in vals):
            found.add((tuple(-x for x in n), -b))
    return sorted(found)


def _facets_by_double_description(pts: list[tuple[int, ...]]) -> list[Facet]:
    """Extreme rays of the cone of valid inequalities ``(a, b)``.

    Each point ``p`` contributes the constraint ``b - a.p >= 0``; the cone is
    pointed for full-dimensional input and its extreme rays are the facets.
    """
    d = len(pts[0])
    n = d + 1
    rows = [tuple(-x for x in p) + (1,) for p in pts]
    start = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in start] + [r]) > len(start):
            start.append(i)
        if len(start) == n:
            break
    # rays tight on all starting rows but one: columns of the adjugate
    base = [rows[i] for i in start]
    rays = []
    for j in range(n):
        others = [base[i] for i in range(n) if i != j]
        ray = orthogonal_normal(others, n)
        if dot(ray, base[j]) < 0:
            ray = [-x for x in ray]
        rays.append(tuple(ray))
    zero_sets = [frozenset(start[i] for i in range(n) if i != j) for j in range(n)]
    processed = list(start)
    for idx in range(len(rows)):
        if idx in start:
            continue
        row = rows[idx]
        vals = [dot(row, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos + zer]
        new_zero = [zero_sets[i] for i in pos] + [zero_sets[i] | {idx} for i in zer]
        for i in pos:
            for j in neg:
                common = zero_sets[i] & zero_sets[j]
                if len(common) < n - 2:
                    continue
                if any(k != i and k != j and common <= zero_sets[k] for k in range(len(rays))):
                    continue
                ray = [vals[i] * b - vals[j] * a for a, b in zip(rays[i], rays[j])]
                new_rays.append(tuple(primitive(ray)))
                new_zero.append(common | {idx})
        rays, zero_sets = new_rays, new_zero
        processed.append(idx)
    return sorted((tuple(r[:d]), r[d]) for r in (tuple(primitive(r)) for r in rays))


def _affine_rank(points: Sequence[Sequence[int]]) -> int:
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


@dataclass(frozen=True)
class LatticePolytope:
    """A full-dimensional lattice polytope given by its exact vertex list.

    ``vertices`` are integer coordinates with respect to a basis of the
    ambient lattice.  When that lattice is not the standard one,
    ``refinement`` records it as an affine lattice in the original
    (standard) coordinates; the vertex coordinates are then coordinates in
    ``refinement``'s basis.
    """

    vertices: tuple[tuple[int, ...], ...]
    refinement: AffineLattice | None = field(default=None, compare=False)

    def __post_init__(self):
        verts = tuple(tuple(int(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        d = len(verts[0])
        if any(len(v) != d for v in verts):
            raise DimensionMismatch("vertices have different lengths")
        if len(set(verts)) != len(verts):
            raise RedundantVertex("duplicate vertices")
        if _affine_rank(verts) != d:
            raise NotFullDimensional(f"vertices do not span a {d}-dimensional polytope")
        if len(verts) > d + 1:
            facets = self.hrep.facets
            for v in verts:
                tight = [n for n, b in facets if dot(n, v) == b]
                if rank(tight) < d:
                    raise RedundantVertex(f"{v} is not a vertex of the convex hull")

    @classmethod
    def from_points(cls, points: Sequence[Sequence[int]], refinement=None) -> "LatticePolytope":
        """Convex hull of a point cloud (non-vertices are dropped)."""
        pts = list(dict.fromkeys(tuple(int(x) for x in p) for p in points))
        d = len(pts[0])
        if _affine_rank(pts) != d:
            raise NotFullDimensional(f"points do not span a {d}-dimensional polytope")
        if len(pts) > d + 1:
            facets = _hull_facets(pts)
            pts = [v for v in pts if rank([n for n, b in facets if dot(n, v) == b]) == d]
        return cls(tuple(pts), refinement)

    @property
    def ambient_dim(self) -> int:
        return len(self.vertices[0])

    dim = ambient_dim

    @cached_property
    def hrep(self) -> HRep:
        return HRep(tuple(_hull_facets(self.vertices)))

    @cached_property
    def _levels(self) -> list[tuple[list[Facet], list[Facet], list[Facet]]]:
        # Facets of the projection onto the first i+1 coordinates, split by
        # the sign of the coefficient of coordinate i.
        d = self.ambient_dim
        levels = []
        for i in range(d):
            if i == d - 1:
                facets = list(self.hrep.facets)
            else:
                facets = _hull_facets([v[: i + 1] for v in self.vertices])
            levels.append(
                (
                    [f for f in facets if f[0][i] > 0],
                    [f for f in facets if f[0][i] < 0],
                    [f for f in facets if f[0][i] == 0],
                )
            )
        return levels

    def standard_vertices(self) -> list[tuple[Fraction, ...]]:
        """Vertices in the original coordinates of the refinement."""
        if self.refinement is None:
            return [tuple(Fraction(x) for x in v) for v in self.vertices]
        return [self.refinement.point(v) for v in self.vertices]

    def lattice_points(self, k: int = 1, interior: bool = False) -> Iterator[tuple[int, ...]]:
        """Lattice points of ``k * self`` (or of its interior)."""
        if k == 0:
            if not interior:
                yield (0,) * self.ambient_dim
            return
        d = self.ambient_dim
        if d == 0:
            if not interior:
                yield ()
            return
        yield from _enumerate(self._levels, k, interior, d)

    def __repr__(self):
        return f"LatticePolytope({[list(v) for v in self.vertices]})"


def _bounds(level, prefix, i, k, strict):
    """Integer range of coordinate ``i`` given the fixed ``prefix``."""
    upper, lower, flat = level
    for n, b in flat:
        if dot(n[:i], prefix[:i]) > k * b - strict:
            return 1, 0
    hi = min((k * b - strict - dot(n[:i], prefix[:i])) // n[i] for n, b in upper)
    lo = max(-((k * b - strict - dot(n[:i], prefix[:i])) // -n[i]) for n, b in lower)
    return lo, hi


def _enumerate(levels, k, interior, d):
    prefix = [0] * d
    last = d - 1

    def rec(i):
        lo, hi = _bounds(levels[i], prefix, i, k, int(interior and i == last))
        for x in range(lo, hi + 1):
            prefix[i] = x
            if i == last:
                yield tuple(prefix)
            else:
                yield from rec(i + 1)

    yield from rec(0)


def _count(levels, k, interior, d):
    # Intermediate levels use the (closed) projections, which only prune;
    # strictness is imposed by the full facet list at the last level.
    prefix = [0] * d
    last = d - 1

    def rec(i):
        lo, hi = _bounds(levels[i], prefix, i, k, int(interior and i == last))
        if i == last:
            return hi - lo + 1 if hi >= lo else 0
        total = 0
        for x in range(lo, hi + 1):
            prefix[i] = x
            total += rec(i + 1)
        return total

    return rec(0)


def facets(p: LatticePolytope) -> HRep:
    return p.hrep


def contains(h: HRep | LatticePolytope, point: Sequence) -> Location:
    if isinstance(h, LatticePolytope):
        h = h.hrep
    on_boundary = False
    for n, b in h.facets:
        if len(n) != len(point):
            raise DimensionMismatch(f"point has length {len(point)}, expected {len(n)}")
        v = dot(n, [Fraction(x) for x in point])
        if v > b:
            return Location.OUTSIDE
        if v == b:
            on_boundary = True
    return Location.BOUNDARY if on_boundary else Location.INTERIOR


def count_points(p: LatticePolytope, k: int = 1) -> int:
    """Number of lattice points in the ``k``-th dilation of ``p``."""
    if k < 0:
        raise ValueError("dilation factor must be nonnegative")
    if k == 0 or p.ambient_dim == 0:
        return 1
    return _count(p._levels, k, False, p.ambient_dim)


def count_interior(p: LatticePolytope, k: int = 1) -> int:
    """Number of lattice points in the relative interior of ``k * p``."""
    if k < 1:
        raise ValueError("dilation factor must be positive")
    if p.ambient_dim == 0:
        return 1
    return _count(p._levels, k, True, p.ambient_dim)


def is_simplex(p: LatticePolytope) -> bool:
    return len(p.vertices) == p.ambient_dim + 1


def section_lattice(points: Sequence[Sequence[int]]) -> AffineLattice:
    """Lattice points of the affine hull of ``points`` (saturated)."""
    n = len(points[0])
    diffs = [[a - b for a, b in zip(p, points[0])] for p in points[1:]]
    diffs = [r for r in diffs if any(r)]
    if not diffs:
        return AffineLattice(tuple(Fraction(x) for x in points[0]), ())
    # saturate: kernel of the kernel of the span
    ortho = integer_kernel(diffs, n)
    basis = integer_kernel(ortho, n) if ortho else [[int(i == j) for j in range(n)] for i in range(n)]
    return affine_span([points[0]] + [[a + b for a, b in zip(points[0], r)] for r in basis])


def restrict_to_affine_hull(vertices: Sequence[Sequence[int]]) -> LatticePolytope:
    """Re-express ``vertices`` as a full-dimensional polytope in its own hull.

    The result lives in coordinates of a basis of ``aff(vertices) ∩ Z^n``, so
    lattice points correspond bijectively.
    """
    verts = [tuple(int(x) for x in v) for v in vertices]
    lat = section_lattice(verts)
    coords = rebase(verts, lat)
    return LatticePolytope(tuple(coords), lat)


def pulling_triangulation(p: LatticePolytope) -> list[tuple[int, ...]]:
    """Triangulate ``p`` without new vertices, as tuples of vertex indices.

    Each face is coned from its lowest-indexed vertex over the facets that
    avoid it, recursively.  Faces are handled as vertex sets: the facets of a
    face ``S`` are the maximal proper sets ``S ∩ G`` over facets ``G`` of ``p``.
    """
    tight = [
        frozenset(i for i, v in enumerate(p.vertices) if dot(n, v) == b) for n, b in p.hrep
    ]

    def rec(face: frozenset, k: int) -> list[tuple[int, ...]]:
        if len(face) == k + 1:
            return [tuple(sorted(face))]
        cuts = {face & g for g in tight} - {face}
        subfaces = [c for c in cuts if not any(c < o for o in cuts)]
        apex = min(face)
        out = []
        for sub in sorted(subfaces, key=sorted):
            if apex not in sub:
                out.extend((apex,) + t for t in rec(sub, k - 1))
        return out

    return rec(frozenset(range(len(p.vertices))), p.ambient_dim)


def unit_cube(d: int) -> LatticePolytope:
    from itertools import product

    return LatticePolytope(tuple(product((0, 1), repeat=d)))


def unit_simplex(d: int) -> LatticePolytope:
    return LatticePolytope(tuple([(0,) * d] + [tuple(int(i == j) for j in range(d)) for i in range(d)]))

