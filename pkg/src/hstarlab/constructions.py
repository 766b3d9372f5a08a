"""Polytope families: pyramids, joins, Lawrence prisms and friends."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .ehrhart import HStarVector, hstar_group
from .linalg import (
    AffineLattice,
    affine_span,
    lattice_index,
    rebase,
    refined_lattice,
    standard_lattice,
)
from .polytope import LatticePolytope, NotFullDimensional


class ConstructionSelfCheckFailed(AssertionError):
    pass


class Degenerate(ValueError):
    pass


def _e(i: int, d: int) -> tuple[int, ...]:
    return tuple(int(i == j) for j in range(d))


def point() -> LatticePolytope:
    return LatticePolytope(((),))


def segment(length: int) -> LatticePolytope:
    return LatticePolytope(((0,), (length,)))


def triangle33() -> LatticePolytope:
    return LatticePolytope(((0, 0), (3, 0), (0, 3)))


def pyramid(q: LatticePolytope) -> LatticePolytope:
    verts = [tuple(v) + (0,) for v in q.vertices]
    verts.append((0,) * q.ambient_dim + (1,))
    return LatticePolytope(tuple(verts))


def iterated_pyramid(q: LatticePolytope, times: int) -> LatticePolytope:
    for _ in range(times):
        q = pyramid(q)
    return q


def join(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    """``conv{(x, 0, 0), (0, y, 1)}`` in dimension ``m + n + 1``."""
    m, n = p.ambient_dim, q.ambient_dim
    verts = [tuple(x) + (0,) * n + (0,) for x in p.vertices]
    verts += [(0,) * m + tuple(y) + (1,) for y in q.vertices]
    return LatticePolytope(tuple(verts))


def lawrence_prism(heights: Sequence[int]) -> LatticePolytope:
    """Prism over the unimodular ``(d-1)``-simplex with vertical edges of the
    given lengths; the fiber over ``e_i`` is ``[e_i, e_i + heights[i] e_d]``.
    """
    d = len(heights)
    if d < 1 or any(a < 0 for a in heights):
        raise ValueError("heights must be a nonempty list of nonnegative integers")
    if not any(heights):
        raise Degenerate("all heights are zero")
    verts = []
    for i, a in enumerate(heights):
        base = (0,) * (d - 1) if i == 0 else _e(i - 1, d - 1)
        verts.append(base + (0,))
        if a:
            verts.append(base + (a,))
    return LatticePolytope(tuple(verts))


def exceptional_simplex(d: int) -> LatticePolytope:
    if d < 2:
        raise ValueError("exceptional simplices have dimension at least 2")
    return iterated_pyramid(LatticePolytope(((0, 0), (2, 0), (0, 2))), d - 2)


def bh_simplex(s: int, b: int) -> LatticePolytope:
    """A ``(2s-1)``-simplex with h* equal to ``1 + b t^s``.

    Realized as the standard simplex over ``Z^{2s-1} + Z w`` where the
    group generator has ``s`` coordinate pairs ``(1/(b+1), b/(b+1))``.
    """
    if s < 1 or b < 1:
        raise ValueError("s and b must be positive")
    d = 2 * s - 1
    gen = [Fraction(1, b + 1), Fraction(b, b + 1)] * s
    w = gen[1:]  # the tuple entry paired with the origin drops out
    lattice = refined_lattice(d, [w])
    std = [(0,) * d] + [_e(i, d) for i in range(d)]
    simplex = LatticePolytope(tuple(rebase(std, lattice)), lattice)
    expected = [1] + [0] * d
    expected[s] += b
    got = hstar_group(simplex)
    if got != HStarVector(expected):
        raise ConstructionSelfCheckFailed(f"bh_simplex({s}, {b}) has h* {got.coeffs}")
    return simplex


def in_lattice(p: LatticePolytope, lattice: AffineLattice) -> LatticePolytope:
    """Regard the vertices of ``p`` (standard coordinates) over ``lattice``."""
    return LatticePolytope(tuple(rebase(p.vertices, lattice)), lattice)


def spanning(p: LatticePolytope) -> tuple[LatticePolytope, int]:
    """Spanning polytope of ``p`` and the index of its lattice.

    The returned polytope has the vertices of ``p`` written in a basis of
    the affine lattice generated by the lattice points of ``p``; its
    ``refinement`` records that lattice in the coordinates of ``p``.
    """
    pts = list(p.lattice_points(1))
    sub = affine_span(pts)
    d = p.ambient_dim
    if sub.rank != d:
        raise NotFullDimensional("lattice points do not span the polytope")
    index = lattice_index(sub, standard_lattice(d)) if d else 1
    if index == 1:
        return p, 1
    return LatticePolytope(tuple(rebase(p.vertices, sub)), sub), index


def section_simplex(heights: Sequence[int], i: int, j: int) -> list[tuple[int, ...]]:
    """Vertices of the ``(i, j)`` simplex of the staircase triangulation.

    Lower fibers before ``i`` at height 0, the unit step ``[j-1, j]`` over
    ``e_i`` and the upper ends of the fibers after ``i``.
    """
    d = len(heights)

    def e(m, h):
        base = (0,) * (d - 1) if m == 0 else _e(m - 1, d - 1)
        return base + (h,)

    verts = [e(m, 0) for m in range(i)]
    verts += [e(i, j), e(i, j - 1)]
    verts += [e(m, heights[m]) for m in range(i + 1, d)]
    return verts


def section_simplices(
    heights: Sequence[int], refinement: AffineLattice | None = None
) -> list[LatticePolytope]:
    """The ``sum(heights)`` empty simplices slicing a Lawrence prism.

    Vertices are taken in the standard coordinates of ``lawrence_prism`` and
    rebased onto ``refinement`` (default: the standard lattice).
    """
    out = []
    for i, a in enumerate(heights):
        for j in range(1, a + 1):
            verts = section_simplex(heights, i, j)
            if refinement is None:
                out.append(LatticePolytope(tuple(verts)))
            else:
                out.append(LatticePolytope(tuple(rebase(verts, refinement)), refinement))
    return out
