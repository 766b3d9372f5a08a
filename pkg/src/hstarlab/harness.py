"""Exhaustive and randomized verification drivers.

Everything here is deterministic given its inputs: randomized suites take a
seed and draw from a private ``random.Random``.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from .checks import (
    apply_affine,
    classify_degree_le1,
    divisibility_lawrence,
    ehrhart_top,
    hibi_interior,
    hibi_lower,
    hkn_spanning,
    scott_dim2,
    scott_universal,
    stanley,
    strip_pyramids,
)
from .constructions import (
    bh_simplex,
    exceptional_simplex,
    join,
    lawrence_prism,
    section_simplex,
    segment,
    spanning,
    triangle33,
)
from .ehrhart import HStarVector, add_tuples, hstar, hstar_group, hstar_interp, lambda_group
from .linalg import AffineLattice, invariant_factors, rebase, refined_lattice
from .polytope import LatticePolytope, count_points, restrict_to_affine_hull
from .report import CheckReport, combine


class InvalidTupleLength(ValueError):
    pass


# -- enumeration and the sweep -----------------------------------------------


@dataclass(frozen=True)
class EnumSpec:
    dim: int
    max_volume: int
    shard: tuple[int, int] = (0, 1)
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.dim <= 8:
            raise ValueError(f"dim must be in 1..8, got {self.dim}")
        if self.max_volume < 1:
            raise ValueError("max_volume must be positive")
        i, n = self.shard
        if not 0 <= i < n:
            raise ValueError(f"bad shard {i}/{n}")


@dataclass(frozen=True)
class SweepSummary:
    total: int = 0
    h3zero: int = 0
    scott_pass: int = 0
    violations: tuple[tuple[tuple[int, ...], ...], ...] = ()
    # first failing inequality per simplex: (check name, vertices)
    inequality_violations: tuple[tuple[str, tuple[tuple[int, ...], ...]], ...] = ()
    dim2_pass: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations and not self.inequality_violations

    def merge(self, other: "SweepSummary") -> "SweepSummary":
        return SweepSummary(
            self.total + other.total,
            self.h3zero + other.h3zero,
            self.scott_pass + other.scott_pass,
            self.violations + other.violations,
            self.inequality_violations + other.inequality_violations,
            self.dim2_pass + other.dim2_pass,
        )

    def report(self, name: str = "sweep") -> CheckReport:
        w = (
            ("total", self.total),
            ("h3zero", self.h3zero),
            ("scott_pass", self.scott_pass),
            ("violations", len(self.violations)),
            ("inequality_violations", len(self.inequality_violations)),
        )
        return CheckReport(name, self.ok, w, "zero-violations" if self.ok else None)


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _diagonals(d: int, n: int) -> Iterator[tuple[int, ...]]:
    if d == 1:
        yield (n,)
        return
    for a in _divisors(n):
        for rest in _diagonals(d - 1, n // a):
            yield (a,) + rest


def hnf_matrices(d: int, max_volume: int) -> Iterator[list[list[int]]]:
    """Lower-triangular Hermite forms ``L`` with ``1 <= det L <= max_volume``.

    ``L[i][i] > 0`` and ``0 <= L[i][j] < L[i][i]`` for ``j < i``; every
    integer matrix of full rank is ``L`` times a unimodular matrix on the
    right, so ``conv{0, rows of L}`` meets every class of simplices with a
    vertex at the origin.  Order is lexicographic in (det, diagonal, entries).
    """
    for n in range(1, max_volume + 1):
        for diag in _diagonals(d, n):
            ranges = [range(diag[i]) for i in range(d) for _ in range(i)]
            for entries in product(*ranges):
                m = [[0] * d for _ in range(d)]
                it = iter(entries)
                for i in range(d):
                    for j in range(i):
                        m[i][j] = next(it)
                    m[i][i] = diag[i]
                yield m


def enumerate_simplices(spec: EnumSpec) -> Iterator[LatticePolytope]:
    i, n = spec.shard
    for rank, m in enumerate(hnf_matrices(spec.dim, spec.max_volume)):
        if rank % n == i:
            yield LatticePolytope(((0,) * spec.dim,) + tuple(tuple(r) for r in m))


INEQUALITIES = (stanley, hibi_lower, hibi_interior, ehrhart_top)


def sweep_main_theorem(spec: EnumSpec) -> SweepSummary:
    """Scott's inequality on every enumerated simplex with ``h*_3 = 0``,
    plus the classical inequality families on all of them."""
    total = h3zero = scott_pass = dim2 = 0
    violations = []
    ineq = []
    for p in enumerate_simplices(spec):
        h = hstar_group(p)
        total += 1
        for check in INEQUALITIES:
            if not check(h):
                ineq.append((check(h).name, p.vertices))
                break
        if h[3] != 0:
            continue
        h3zero += 1
        if scott_universal(h[1], h[2]):
            scott_pass += 1
        else:
            violations.append(p.vertices)
        if spec.dim == 2 and scott_dim2(h[1], h[2]):
            dim2 += 1
    return SweepSummary(total, h3zero, scott_pass, tuple(violations), tuple(ineq), dim2)


def sweep_parallel(dim: int, max_volume: int, shards: int = 1, jobs: int = 1) -> SweepSummary:
    specs = [EnumSpec(dim, max_volume, (i, shards)) for i in range(shards)]
    if jobs <= 1:
        parts = [sweep_main_theorem(s) for s in specs]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(sweep_main_theorem, specs))
    out = SweepSummary()
    for part in parts:  # shard order, so the merge is deterministic
        out = out.merge(part)
    return out


# -- the maps between groups of empty simplices in a prism -------------------


def _check_len(r, expected=None):
    if len(r) < 2 or (expected is not None and len(r) != expected):
        raise InvalidTupleLength(f"tuple of length {len(r)}")


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _weighted(r, c):
    d = len(r) - 1
    return sum(r[i] * c[i] for i in range(d))


def pi_map(r: Sequence[Fraction], k: int, c: Sequence[int]) -> tuple[Fraction, ...]:
    """From the group of ``delta_k`` to the group of ``delta_prime_k``."""
    _check_len(r, len(c) + 1)
    r = [Fraction(x) for x in r]
    d = len(r) - 1
    s = _weighted(r, c)
    out = list(r)
    out[k] = _frac(s + r[d] * (c[k] - 1))
    out[d] = _frac(r[k] - r[d] * (c[k] - 2) - s)
    return tuple(out)


def pi_inv(r: Sequence[Fraction], k: int, c: Sequence[int]) -> tuple[Fraction, ...]:
    _check_len(r, len(c) + 1)
    r = [Fraction(x) for x in r]
    d = len(r) - 1
    s = _weighted(r, c)
    out = list(r)
    out[k] = _frac(2 * r[k] + r[d] * (1 - c[k]) - s)
    out[d] = _frac(-r[k] + s + r[d] * c[k])
    return tuple(out)


def psi_map(r: Sequence[Fraction], k: int) -> tuple[Fraction, ...]:
    """From the group of ``delta_0`` to the group of ``delta_k``.

    For ``k = 0`` both source and target are the same simplex and the map is
    the identity.
    """
    _check_len(r)
    r = [Fraction(x) for x in r]
    if k == 0:
        return tuple(r)
    d = len(r) - 1
    out = list(r)
    out[0] = _frac(r[0] + r[d])
    out[k] = _frac(r[k] - r[d])
    return tuple(out)


def psi_inv(r: Sequence[Fraction], k: int) -> tuple[Fraction, ...]:
    _check_len(r)
    r = [Fraction(x) for x in r]
    if k == 0:
        return tuple(r)
    d = len(r) - 1
    out = list(r)
    out[0] = _frac(r[0] - r[d])
    out[k] = _frac(r[k] + r[d])
    return tuple(out)


def _unit(i: int, d: int) -> tuple[int, ...]:
    return tuple(int(i == j) for j in range(d))


def _add(a, b, scale=1):
    return tuple(x + scale * y for x, y in zip(a, b))


def delta_k(d: int, k: int) -> list[tuple[int, ...]]:
    """Vertices ``e_0 = 0, e_1, ..., e_{d-1}, e_k + e_d`` in this order."""
    base = [(0,) * d] + [_unit(i, d) for i in range(d - 1)]
    return base + [_add(base[k], _unit(d - 1, d))]


def delta_prime_k(c: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """Vertices ``e_i + c_i e_d`` with the ``k``-th lowered by one, then
    ``e_k + c_k e_d`` last."""
    d = len(c)
    top = _unit(d - 1, d)
    base = [(0,) * d] + [_unit(i, d) for i in range(d - 1)]
    verts = [_add(b, top, ci) for b, ci in zip(base, c)]
    verts[k] = _add(base[k], top, c[k] - 1)
    return verts + [_add(base[k], top, c[k])]


@dataclass(frozen=True)
class SectionMapInstance:
    c: tuple[int, ...]
    k: int
    lattice: AffineLattice = field(compare=False)
    generators: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.c)

    def simplex(self, verts) -> LatticePolytope:
        return LatticePolytope(tuple(rebase(verts, self.lattice)), self.lattice)


def _random_generator(rng: random.Random, d: int, max_index: int) -> tuple[Fraction, ...]:
    q = rng.randint(2, max_index)
    return tuple(Fraction(rng.randrange(q), q) for _ in range(d))


def make_section_instance(c, k, generators) -> SectionMapInstance:
    d = len(c)
    return SectionMapInstance(tuple(c), k, refined_lattice(d, [list(g) for g in generators]), tuple(map(tuple, generators)))


def _empty_h3_zero(h: HStarVector) -> bool:
    return h[1] == 0 and h[3] == 0


def random_section_instances(
    count: int, seed: int = 0, max_dim: int = 5, max_height: int = 4, max_index: int = 6
) -> list[SectionMapInstance]:
    """Draw prism data until ``count`` instances meet the hypotheses: the
    three simplices involved are empty with vanishing ``h*_3``."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        # pick the kind first: refined draws are rejected far more often
        trivial = rng.random() < 0.1
        while True:
            d = rng.randint(2, max_dim)
            k = rng.randrange(d)
            c = [rng.randint(0, max_height) for _ in range(d)]
            c[k] = max(c[k], 1)  # delta_prime_k needs c_k - 1 >= 0
            gens = [] if trivial else [_random_generator(rng, d, max_index)]
            inst = make_section_instance(c, k, gens)
            if not trivial and inst.lattice.denominator == 1:
                continue
            verts = (delta_k(d, 0), delta_k(d, k), delta_prime_k(c, k))
            if all(_empty_h3_zero(hstar_group(inst.simplex(v))) for v in verts):
                out.append(inst)
                break
    return out


def _check_bijection(name, fwd, back, source, target) -> list[tuple[str, object]]:
    problems = []
    src = source.elements
    images = [fwd(r) for r in src]
    if any(img not in target for img in images):
        problems.append((f"{name}_not_well_defined", next(r for r, img in zip(src, images) if img not in target)))
    if len(set(images)) != len(src) or len(src) != target.order:
        problems.append((f"{name}_not_bijective", (len(set(images)), target.order)))
    if any(back(img) != r for r, img in zip(src, images)):
        problems.append((f"{name}_inverse_mismatch", True))
    for r, img in zip(src, images):
        hr, hi = sum(r), sum(img)
        if abs(hi - hr) > 1:
            problems.append((f"{name}_height_jump", (r, img)))
            break
        if hr == 2 and hi != 2:
            problems.append((f"{name}_height2_not_preserved", (r, img)))
            break
    return problems


def verify_section_instance(inst: SectionMapInstance) -> CheckReport:
    d, k, c = inst.dim, inst.k, inst.c
    g0 = lambda_group(inst.simplex(delta_k(d, 0)))
    gk = lambda_group(inst.simplex(delta_k(d, k)))
    gp = lambda_group(inst.simplex(delta_prime_k(c, k)))
    problems = _check_bijection(
        "pi", lambda r: pi_map(r, k, c), lambda r: pi_inv(r, k, c), gk, gp
    )
    problems += _check_bijection("psi", lambda r: psi_map(r, k), lambda r: psi_inv(r, k), g0, gk)
    h2 = [len(g.level(2)) for g in (gp, gk, g0)]
    if len(set(h2)) != 1:
        problems.append(("h2_differs", tuple(h2)))
    via_maps = sum(1 for r in g0.elements if sum(pi_map(psi_map(r, k), k, c)) == 2)
    if via_maps != h2[0]:
        problems.append(("h2_via_maps", (via_maps, h2[0])))
    w = (("d", d), ("k", k), ("c", c), ("order", g0.order), ("h2", h2[0]))
    if problems:
        return CheckReport("section_maps", False, w + tuple(problems))
    return CheckReport("section_maps", True, w, "bijective")


def verify_prop42(instances: Sequence[SectionMapInstance]) -> CheckReport:
    return combine("section_maps_suite", (verify_section_instance(i) for i in instances), "all-instances")


# -- peeling one section simplex off a prism ---------------------------------


def _over(verts, lattice: AffineLattice | None) -> LatticePolytope:
    if lattice is None:
        return LatticePolytope(tuple(verts))
    return LatticePolytope(tuple(rebase(verts, lattice)), lattice)


def verify_inclusion_exclusion(
    heights: Sequence[int], generators: Sequence[Sequence[Fraction]] = ()
) -> CheckReport:
    """Count and coefficient identities for ``P = P' + delta - S`` where
    ``delta`` is the top section simplex over the first nonzero fiber."""
    name = "inclusion_exclusion"
    heights = list(heights)
    d = len(heights)
    b = sum(heights)
    if b < 2:
        return CheckReport(name, True, (("b", b),), "not-applicable")
    lattice = refined_lattice(d, [list(g) for g in generators]) if generators else None
    ell = next(i for i, a in enumerate(heights) if a > 0)
    lower = list(heights)
    lower[ell] -= 1
    p = _over(lawrence_prism(heights).vertices, lattice)
    p1 = _over(lawrence_prism(lower).vertices, lattice)
    simplex_verts = section_simplex(heights, ell, heights[ell])
    delta = _over(simplex_verts, lattice)
    s_verts = [v for j, v in enumerate(simplex_verts) if j != ell]  # drop e_ell + a_ell e_d
    s_verts_n = rebase(s_verts, lattice) if lattice is not None else s_verts
    s = restrict_to_affine_hull(s_verts_n)
    problems = []
    for kk in range(1, d + 2):
        lhs = count_points(p, kk)
        rhs = count_points(p1, kk) + count_points(delta, kk) - count_points(s, kk)
        if lhs != rhs:
            problems.append(("count", (kk, lhs, rhs)))
    h, h1, hd, hs = hstar(p), hstar(p1), hstar(delta), hstar(s)
    for i in range(d + 1):
        want = h1[i] + hd[i] - hs[i] + hs[i - 1]
        if h[i] != want:
            problems.append(("coefficient", (i, h[i], want)))
    w = (("heights", tuple(heights)), ("h", h.coeffs), ("h_rest", h1.coeffs), ("h_delta", hd.coeffs), ("h_facet", hs.coeffs))
    if problems:
        return CheckReport(name, False, w + tuple(problems))
    return CheckReport(name, True, w, "identity")


def random_prism_data(rng: random.Random, max_dim: int = 4, max_height: int = 3, max_index: int = 4):
    d = rng.randint(2, max_dim)
    while True:
        heights = [rng.randint(0, max_height) for _ in range(d)]
        if sum(heights) >= 2:
            break
    gens = [] if rng.random() < 0.25 else [_random_generator(rng, d, max_index)]
    return heights, gens


def prism_suite(count: int, seed: int = 0) -> CheckReport:
    """Inclusion-exclusion on random prisms and divisibility on those with
    ``h*_3 = 0`` whose spanning polytope is a prism."""
    rng = random.Random(seed)
    reports = []
    divisible = 0
    for _ in range(count):
        heights, gens = random_prism_data(rng)
        reports.append(verify_inclusion_exclusion(heights, gens))
        lattice = refined_lattice(len(heights), [list(g) for g in gens]) if gens else None
        p = _over(lawrence_prism(heights).vertices, lattice)
        r = divisibility_lawrence(p)
        reports.append(r)
        divisible += r.branch == "divides"
    out = combine("prism_suite", reports, "all")
    return CheckReport(out.name, out.passed, out.witnesses + (("divisibility_applied", divisible),), out.branch, out.details)


# -- spanning polytopes of refined simplices --------------------------------


def random_refined_simplex(rng: random.Random, max_dim: int = 4, max_index: int = 6, spread: int | None = None):
    while True:
        d = rng.randint(2, max_dim)
        # small coordinates make non-spanning lattice points likely
        r = spread or rng.choice((1, 1, 2, 3))
        verts = [(0,) * d] + [tuple(rng.randint(-r, r) for _ in range(d)) for _ in range(d)]
        gen = _random_generator(rng, d, max_index)
        lattice = refined_lattice(d, [list(gen)])
        try:
            return LatticePolytope(tuple(rebase(verts, lattice)), lattice)
        except ValueError:
            continue


def verify_spanning(p: LatticePolytope) -> CheckReport:
    h = hstar(p)
    pt, index = spanning(p)
    ht = hstar(pt)
    problems = []
    if ht[1] != h[1]:
        problems.append(("h1_changed", (ht[1], h[1])))
    bad = [i for i in range(2, p.ambient_dim + 1) if ht[i] > h[i]]
    if bad:
        problems.append(("h_tilde_exceeds", bad[0]))
    gap = hkn_spanning(ht)
    if not gap:
        problems.append(("gap", gap.witness("gap")))
    w = (("index", index), ("h", h.coeffs), ("h_tilde", ht.coeffs))
    if problems:
        return CheckReport("spanning", False, w + tuple(problems))
    return CheckReport("spanning", True, w, "dominated")


def spanning_suite(count: int, seed: int = 0) -> CheckReport:
    rng = random.Random(seed)
    return combine("spanning_suite", (verify_spanning(random_refined_simplex(rng)) for _ in range(count)))


# -- cross-engine equivalence ------------------------------------------------


def random_hnf_simplex(rng: random.Random, dims=(3, 6), max_volume: int = 100) -> LatticePolytope:
    d = rng.randint(*dims)
    while True:
        diag = [rng.randint(1, 6) for _ in range(d)]
        det = 1
        for x in diag:
            det *= x
        if det <= max_volume:
            break
    m = [[rng.randrange(diag[i]) if j < i else diag[i] if j == i else 0 for j in range(d)] for i in range(d)]
    return LatticePolytope(((0,) * d,) + tuple(tuple(r) for r in m))


def cross_engine_suite(count: int, seed: int = 0, dims=(3, 6), max_volume: int = 100) -> CheckReport:
    rng = random.Random(seed)
    reports = []
    for _ in range(count):
        p = random_hnf_simplex(rng, dims, max_volume)
        a, b = hstar_group(p), hstar_interp(p)
        w = (("vertices", p.vertices), ("group", a.coeffs), ("interp", b.coeffs))
        reports.append(CheckReport("cross_engine", a == b, w, "agree" if a == b else None))
    return combine("cross_engine_suite", reports, "agree")


# -- the worked examples -----------------------------------------------------


def example_nonscott() -> LatticePolytope:
    """Five-dimensional polytope with h* ``1 + 8t + t^2 + 8t^3``."""
    e = [_unit(i, 5) for i in range(5)]
    return LatticePolytope(
        ((0,) * 5, e[0], e[1], _add(_add(e[0], e[1]), e[2], 2), e[3], _add(e[3], e[4], 9))
    )


def example_nonjoin() -> LatticePolytope:
    """Eight-dimensional simplex over ``Z^8 + Z (1/2, ..., 1/2)`` with h*
    ``1 + 7t + t^2 + 6t^4 + 3t^5``."""
    d = 8
    verts = [(0,) * d, tuple(3 * x for x in _unit(0, d)), tuple(3 * x for x in _unit(1, d))]
    verts += [_unit(i, d) for i in range(2, d)]
    lattice = refined_lattice(d, [[Fraction(1, 2)] * d])
    return LatticePolytope(tuple(rebase(verts, lattice)), lattice)


def elementary_divisors(invariants: Sequence[int]) -> tuple[int, ...]:
    """Prime-power cyclic factors, sorted."""
    out = []
    for n in invariants:
        p = 2
        while n > 1:
            if n % p == 0:
                q = 1
                while n % p == 0:
                    n //= p
                    q *= p
                out.append(q)
            p += 1
    return tuple(sorted(out))


def generated_subgroup(gens) -> set[tuple[Fraction, ...]]:
    zero = tuple(Fraction(0) for _ in gens[0])
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = add_tuples(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def nonneg_factorizations(h: Sequence[int]) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``h = f g`` with ``f, g`` having constant term 1, nonnegative
    integer coefficients and degree at least 1 (``f`` listed with
    ``deg f <= deg g``)."""
    h = list(h)
    while h and h[-1] == 0:
        h.pop()
    n = len(h) - 1
    out = []
    for m in range(1, n // 2 + 1):
        # f_i <= h_i because every product term is nonnegative
        for mid in product(*(range(h[i] + 1) for i in range(1, m))):
            for top in range(1, h[m] + 1):
                f = [1, *mid, top]
                g = _exact_quotient(h, f)
                if g is not None:
                    out.append((tuple(f), tuple(g)))
    return out


def _exact_quotient(h, f):
    rem = list(h)
    n, m = len(h) - 1, len(f) - 1
    g = [0] * (n - m + 1)
    for i in range(n - m + 1):
        c = rem[i]  # f[0] == 1
        if c < 0:
            return None
        g[i] = c
        for j in range(m + 1):
            rem[i + j] -= c * f[j]
    if any(rem) or g[-1] == 0:
        return None
    return g


Q_REALIZATIONS = {
    (0, 0): LatticePolytope(((0, 0), (1, 0), (0, 1))),
    (5, 1): LatticePolytope(((0, 0), (3, 0), (-2, -2), (1, -1))),
    (7, 1): triangle33(),
}


def _golden(name, got: HStarVector, want) -> CheckReport:
    want = tuple(want)
    w = (("got", got.coeffs), ("want", want))
    return CheckReport(name, got.coeffs == want, w, "exact" if got.coeffs == want else None)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def verify_paper_examples() -> list[CheckReport]:
    reports = []
    t = triangle33()
    reports.append(_golden("triangle33", hstar(t), (1, 7, 1)))
    reports.append(_golden("nonscott_example", hstar(example_nonscott()), (1, 8, 1, 8, 0, 0)))

    ex = example_nonjoin()
    g = lambda_group(ex)
    reports.append(_golden("nonjoin_example", hstar(ex), (1, 7, 1, 0, 6, 3, 0, 0, 0)))
    divisors = invariant_factors([list(v) + [1] for v in ex.vertices])
    third = Fraction(1, 3)
    half = Fraction(1, 2)
    gens = [
        (third, 2 * third) + (Fraction(0),) * 7,
        (third, Fraction(0), 2 * third) + (Fraction(0),) * 6,
        (Fraction(0),) + (half,) * 8,
    ]
    same = generated_subgroup(gens) == set(g.elements)
    nontrivial = tuple(x for x in divisors if x > 1)
    elementary = elementary_divisors(nontrivial)
    ok = g.order == 18 and elementary == (2, 3, 3) and same
    reports.append(
        CheckReport(
            "nonjoin_group",
            ok,
            (("order", g.order), ("invariant_factors", nontrivial), ("elementary", elementary), ("generated", same)),
            "z3+z3+z2" if ok else None,
        )
    )
    facts = nonneg_factorizations(hstar(ex).coeffs)
    reports.append(CheckReport("nonjoin_factorization", not facts, (("factorizations", len(facts)),), "irreducible" if not facts else None))
    base, layers = strip_pyramids(spanning(ex)[0])
    ok = layers == 6 and base.ambient_dim == 2 and hstar(base).coeffs == (1, 7, 1)
    reports.append(CheckReport("nonjoin_strip", ok, (("layers", layers), ("base_h", hstar(base).coeffs)), "triangle" if ok else None))

    grid = []
    for a in range(1, 6):
        for b in range(1, 6):
            grid.append(_golden(f"twocoeff_{a}_{b}", hstar(join(bh_simplex(2, b), segment(a + 1))), (1, a, b, a * b, 0, 0)))
    reports.append(combine("twocoeff_grid", grid, "exact"))

    joins = []
    for (h1, h2), q in Q_REALIZATIONS.items():
        for s in (6, 7, 8):
            for k in (1, 2, 3):
                p = join(bh_simplex(s - 2, k), q)
                want = [0] * (p.ambient_dim + 1)
                for i, c in enumerate(_poly_mul([1, h1, h2], [1] + [0] * (s - 3) + [k])):
                    want[i] += c
                joins.append(_golden(f"degree_s_{h1}_{h2}_{s}_{k}", hstar(p), want))
    reports.append(combine("degree_s_joins", joins, "exact"))

    bh = []
    for s in range(1, 4):
        for b in range(1, 4):
            want = [1] + [0] * (2 * s - 1)
            want[s] += b
            bh.append(_golden(f"binomial_{s}_{b}", hstar_interp(bh_simplex(s, b)), want))
    reports.append(combine("binomial_simplices", bh, "exact"))
    return reports


# -- classifier round trip ---------------------------------------------------


def random_unimodular(rng: random.Random, d: int, steps: int = 12) -> list[list[int]]:
    m = [[int(i == j) for j in range(d)] for i in range(d)]
    if d < 2:
        return [[rng.choice((1, -1))]]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        f = rng.choice((-2, -1, 1, 2))
        m[i] = [a + f * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        m[0] = [-x for x in m[0]]
    return m


def scramble(p: LatticePolytope, rng: random.Random) -> LatticePolytope:
    """Image of ``p`` under a random affine unimodular map, vertices shuffled."""
    d = p.ambient_dim
    g = random_unimodular(rng, d)
    shift = [rng.randint(-3, 3) for _ in range(d)]
    verts = [tuple(sum(v[i] * g[i][j] for i in range(d)) + shift[j] for j in range(d)) for v in p.vertices]
    rng.shuffle(verts)
    return LatticePolytope(tuple(verts))


def random_degree_one(rng: random.Random) -> tuple[str, tuple[int, ...] | None, LatticePolytope]:
    if rng.random() < 0.3:
        d = rng.randint(2, 7)
        return "ExceptionalSimplex", None, exceptional_simplex(d)
    d = rng.randint(1, 5)
    while True:
        heights = [rng.randint(0, 3) for _ in range(d)]
        if 1 <= sum(heights) <= 8:
            return "LawrencePrism", tuple(heights), lawrence_prism(heights)


def verify_classification(tag, heights, p: LatticePolytope) -> CheckReport:
    cls = classify_degree_le1(p)
    w = (("want", tag), ("got", str(cls)), ("dim", p.ambient_dim))
    ok = cls.tag == tag
    if ok and tag == "LawrencePrism":
        image = set(apply_affine(p.vertices, cls.matrix, cls.shift))
        ok = sum(cls.heights) == sum(heights) and image == set(lawrence_prism(cls.heights).vertices)
    return CheckReport("classify", ok, w, "round-trip" if ok else None)


def classifier_suite(count: int, seed: int = 0) -> CheckReport:
    rng = random.Random(seed)
    reports = []
    for _ in range(count):
        tag, heights, p = random_degree_one(rng)
        reports.append(verify_classification(tag, heights, scramble(p, rng)))
    return combine("classifier_suite", reports, "all")
