"""Inequality predicates and the degree-at-most-one classifier.

All predicates return :class:`CheckReport`; exceptions are reserved for
malformed input.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .constructions import section_simplices, spanning
from .ehrhart import HStarVector, hstar, normalized_volume
from .linalg import (
    AffineLattice,
    dot,
    int_inverse,
    lattice_from_generators,
    orthogonal_normal,
    primitive,
    rank,
    unimodular_completion,
    vecmat,
)
from .polytope import LatticePolytope, is_simplex, restrict_to_affine_hull
from .report import CheckReport


class ClassificationFailed(RuntimeError):
    pass


def _scott(name, h1, h2, with_lower):
    w = (("h1", h1), ("h2", h2))
    if h2 == 0:
        return CheckReport(name, True, w, "scott-case-1")
    if (not with_lower or h2 <= h1) and h1 <= 3 * h2 + 3:
        return CheckReport(name, True, w, "scott-case-2")
    if (h1, h2) == (7, 1):
        return CheckReport(name, True, w, "scott-case-3")
    return CheckReport(name, False, w + (("bound", 3 * h2 + 3),))


def scott_dim2(h1: int, h2: int) -> CheckReport:
    """The two-dimensional characterization, including ``h2 <= h1``."""
    return _scott("scott_dim2", h1, h2, with_lower=True)


def scott_universal(h1: int, h2: int) -> CheckReport:
    """``h2 == 0`` or ``h1 <= 3 h2 + 3`` or ``(h1, h2) == (7, 1)``."""
    return _scott("scott_universal", h1, h2, with_lower=False)


def main_theorem(p: LatticePolytope | HStarVector) -> CheckReport:
    h = p if isinstance(p, HStarVector) else hstar(p)
    if h[3] != 0:
        return CheckReport("main_theorem", True, (("h3", h[3]),), "hypothesis-unmet")
    r = scott_universal(h[1], h[2])
    return CheckReport("main_theorem", r.passed, r.witnesses, r.branch)


def _family(name, h, pairs):
    """``pairs`` yields ``(index, lhs, rhs)`` meaning ``lhs <= rhs``."""
    for i, lhs, rhs in pairs:
        if lhs > rhs:
            return CheckReport(name, False, (("index", i), ("lhs", lhs), ("rhs", rhs)))
    return CheckReport(name, True, (("h", h.coeffs),), "all")


def hibi_lower(h: HStarVector) -> CheckReport:
    """``h_{d-1} + ... + h_{d-i} <= h_2 + ... + h_{i+1}`` for ``1 <= i <= (d-1)//2``."""
    d = h.dim
    return _family(
        "hibi",
        h,
        (
            (i, sum(h[d - j] for j in range(1, i + 1)), sum(h[j] for j in range(2, i + 2)))
            for i in range(1, (d - 1) // 2 + 1)
        ),
    )


def stanley(h: HStarVector) -> CheckReport:
    """``h_0 + ... + h_i <= h_s + ... + h_{s-i}`` for ``0 <= i <= s``."""
    s = h.degree
    return _family(
        "stanley",
        h,
        (
            (i, sum(h[j] for j in range(i + 1)), sum(h[s - j] for j in range(i + 1)))
            for i in range(s + 1)
        ),
    )


def hibi_interior(h: HStarVector) -> CheckReport:
    """``h_1 <= h_i`` for ``1 <= i <= d-1``; only when ``h_d > 0``."""
    d = h.dim
    if h[d] == 0:
        return CheckReport("hibi_interior", True, (("hd", 0),), "not-applicable")
    return _family("hibi_interior", h, ((i, h[1], h[i]) for i in range(1, d)))


def ehrhart_top(h: HStarVector) -> CheckReport:
    """``h_d <= h_1``."""
    d = h.dim
    return _family("hd_le_h1", h, [(d, h[d], h[1])] if d >= 1 else [])


def hkn_spanning(h: HStarVector) -> CheckReport:
    """No internal zeros: every coefficient up to the degree is positive."""
    gaps = [i for i in range(h.degree + 1) if h[i] < 1]
    if gaps:
        return CheckReport("hkn_spanning", False, (("gap", gaps[0]), ("h", h.coeffs)))
    return CheckReport("hkn_spanning", True, (("h", h.coeffs),), "gapless")


def divisibility(h1: int, h2: int) -> CheckReport:
    w = (("h1", h1), ("h2", h2))
    ok = h2 % (h1 + 1) == 0
    return CheckReport("divisibility", ok, w, "divides" if ok else None)


# -- pyramids and the degree <= 1 classifier ---------------------------------


def _apex(p: LatticePolytope) -> int | None:
    """Index of a vertex at lattice distance one over the hull of the rest."""
    d = p.ambient_dim
    for idx in range(len(p.vertices)):
        rest = [v for j, v in enumerate(p.vertices) if j != idx]
        diffs = [[a - b for a, b in zip(v, rest[0])] for v in rest[1:]]
        if rank(diffs) != d - 1:
            continue
        basis = _row_basis(diffs, d - 1)
        n = orthogonal_normal(basis, d)
        if abs(dot(n, p.vertices[idx]) - dot(n, rest[0])) == 1:
            return idx
    return None


def _row_basis(rows, r):
    """``r`` linearly independent rows picked greedily from ``rows``."""
    picked = []
    if r == 0:
        return picked
    for row in rows:
        if rank(picked + [row]) > len(picked):
            picked.append(row)
        if len(picked) == r:
            break
    return picked


def strip_pyramids(p: LatticePolytope) -> tuple[LatticePolytope, int]:
    """Peel lattice-pyramid apexes until none is left."""
    layers = 0
    while p.ambient_dim > 0:
        idx = _apex(p)
        if idx is None:
            break
        p = restrict_to_affine_hull([v for j, v in enumerate(p.vertices) if j != idx])
        layers += 1
    return p, layers


@dataclass(frozen=True)
class DegreeOneClass:
    tag: str  # "ExceptionalSimplex", "LawrencePrism" or "NotDegreeLeOne"
    heights: tuple[int, ...] | None = None
    # affine unimodular map x -> x @ matrix + shift onto the standard prism
    matrix: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)
    shift: tuple[int, ...] | None = field(default=None, compare=False)

    def __str__(self):
        if self.tag == "LawrencePrism":
            return f"LawrencePrism{self.heights}"
        return self.tag


def _lawrence_structure(p: LatticePolytope) -> DegreeOneClass | None:
    d = p.ambient_dim
    verts = p.vertices
    directions = set()
    for i, v in enumerate(verts):
        for w in verts[i + 1:]:
            u = primitive([a - b for a, b in zip(w, v)])
            if next(x for x in u if x) < 0:
                u = [-x for x in u]
            directions.add(tuple(u))
    for u in sorted(directions):
        found = _try_direction(verts, list(u), d)
        if found is not None:
            return found
    return None


def _try_direction(verts, u, d):
    g = unimodular_completion(u)  # rows: basis with u last
    ginv = int_inverse(g)
    coords = [vecmat(list(v), ginv) for v in verts]  # v = coords @ g
    fibers: dict[tuple, list[int]] = {}
    for c in coords:
        fibers.setdefault(tuple(c[:-1]), []).append(c[-1])
    if len(fibers) != d or any(len(f) > 2 for f in fibers.values()):
        return None
    keys = list(fibers)  # first-appearance order
    q0 = keys[0]
    m = [[a - b for a, b in zip(q, q0)] for q in keys[1:]]
    if d > 1:
        try:
            minv = int_inverse(m)
        except ValueError:
            return None
    else:
        minv = []
    lows = [min(fibers[q]) for q in keys]
    heights = tuple(max(fibers[q]) - min(fibers[q]) for q in keys)
    # z' = (y' - q0) @ minv ;  z_d = y_d - lows[0] - sum_i (lows[i] - lows[0]) z'_i
    dm1 = d - 1
    lin = [[0] * d for _ in range(d)]
    for a in range(dm1):
        for b in range(dm1):
            lin[a][b] = minv[a][b]
    for a in range(dm1):
        lin[a][dm1] = -sum(minv[a][i - 1] * (lows[i] - lows[0]) for i in range(1, d))
    lin[dm1][dm1] = 1
    shift0 = [-x for x in q0] + [0]
    shift = vecmat(shift0, lin)
    shift[dm1] -= lows[0]
    # compose with coordinates in the g basis
    full = [vecmat(row, lin) for row in ginv]
    return DegreeOneClass(
        "LawrencePrism",
        heights,
        tuple(tuple(r) for r in full),
        tuple(shift),
    )


def apply_affine(points, matrix, shift):
    return [tuple(a + b for a, b in zip(vecmat(list(p), matrix), shift)) for p in points]


def classify_degree_le1(p: LatticePolytope) -> DegreeOneClass:
    h = hstar(p)
    if h.degree > 1:
        return DegreeOneClass("NotDegreeLeOne")
    base, _ = strip_pyramids(p)
    if (
        base.ambient_dim == 2
        and is_simplex(base)
        and normalized_volume(base) == 4
        and hstar(base).coeffs == (1, 3, 0)
    ):
        return DegreeOneClass("ExceptionalSimplex")
    law = _lawrence_structure(p)
    if law is None:
        raise ClassificationFailed(f"degree {h.degree} polytope {p} not recognized")
    return law


def _refinement_in_prism_coords(
    ptilde: LatticePolytope, index: int, cls: DegreeOneClass, d: int
) -> AffineLattice:
    """The ambient lattice of the original polytope seen in prism coordinates.

    ``ptilde``'s coordinates are in a basis of the spanning lattice; the
    original lattice ``Z^d`` is mapped through ``ptilde.refinement`` (inverse)
    and then through the normalizing affine map.
    """
    if index == 1:
        return lattice_from_generators([0] * d, [[int(i == j) for j in range(d)] for i in range(d)])
    sub = ptilde.refinement

    def to_prism(x):
        y = sub.coordinates(x)
        return [sum(y[k] * cls.matrix[k][j] for k in range(d)) + cls.shift[j] for j in range(d)]

    origin = to_prism([0] * d)
    gens = []
    for i in range(d):
        img = to_prism([int(i == j) for j in range(d)])
        gens.append([a - b for a, b in zip(img, origin)])
    return lattice_from_generators(origin, gens)


def divisibility_lawrence(p: LatticePolytope) -> CheckReport:
    """``(h1 + 1) | h2`` when the spanning polytope is a Lawrence prism and
    ``h3 == 0``, with the structural identities ``h1 = b - 1``, ``h2 = b c``
    cross-checked on the slicing simplices.
    """
    name = "divisibility_lawrence"
    h = hstar(p)
    if h[3] != 0:
        return CheckReport(name, True, (("h3", h[3]),), "not-applicable")
    ptilde, index = spanning(p)
    cls = classify_degree_le1(ptilde)
    if cls.tag != "LawrencePrism":
        return CheckReport(name, True, (("spanning_class", cls.tag),), "not-applicable")
    d = p.ambient_dim
    b = sum(cls.heights)
    lattice = _refinement_in_prism_coords(ptilde, index, cls, d)
    cs = [hstar(s)[2] for s in section_simplices(cls.heights, lattice)]
    c = cs[0]
    witnesses = (
        ("h1", h[1]),
        ("h2", h[2]),
        ("b", b),
        ("c", c),
        ("index", index),
    )
    problems = []
    if h[2] % (h[1] + 1):
        problems.append(("divides", False))
    if len(set(cs)) != 1:
        problems.append(("section_h2", tuple(cs)))
    if h[1] != b - 1:
        problems.append(("h1_eq_b_minus_1", False))
    if h[2] != b * c:
        problems.append(("h2_eq_bc", False))
    if problems:
        return CheckReport(name, False, witnesses + tuple(problems))
    return CheckReport(name, True, witnesses, "divides")
