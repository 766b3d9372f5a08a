import random

from hypothesis import given, settings
from hypothesis import strategies as st

from hstarlab.checks import (
    apply_affine,
    classify_degree_le1,
    divisibility,
    divisibility_lawrence,
    ehrhart_top,
    hibi_interior,
    hibi_lower,
    hkn_spanning,
    main_theorem,
    scott_dim2,
    scott_universal,
    stanley,
    strip_pyramids,
)
from hstarlab.constructions import (
    exceptional_simplex,
    iterated_pyramid,
    lawrence_prism,
    pyramid,
    spanning,
    triangle33,
)
from hstarlab.ehrhart import HStarVector, hstar
from hstarlab.harness import example_nonjoin, example_nonscott, scramble
from hstarlab.polytope import LatticePolytope, unit_cube
from strategies import hnf_simplices, polytopes


def H(*c):
    return HStarVector(c)


def test_scott_dim2_examples():
    r = scott_dim2(7, 1)
    assert r.passed and r.branch == "scott-case-3"
    assert scott_dim2(0, 0).branch == "scott-case-1"
    assert not scott_dim2(8, 1).passed
    assert not scott_dim2(2, 5).passed
    assert scott_dim2(3, 3).branch == "scott-case-2"


def test_scott_universal_examples():
    r = scott_universal(9, 2)
    assert r.passed and r.branch == "scott-case-2"
    assert not scott_universal(10, 2).passed
    assert scott_universal(2, 5).passed
    assert scott_universal(7, 1).branch == "scott-case-3"
    assert not scott_universal(8, 1).passed


def test_failed_report_carries_witnesses():
    r = scott_universal(10, 2)
    assert r.witness("h1") == 10 and r.witness("bound") == 9
    assert "FAIL" in r.format()


def test_main_theorem_examples():
    r = main_theorem(example_nonscott())
    assert r.passed and r.branch == "hypothesis-unmet" and r.witness("h3") == 8
    assert not scott_universal(8, 1).passed
    assert main_theorem(triangle33()).branch == "scott-case-3"
    r = main_theorem(lawrence_prism([2, 1, 3]))
    assert r.passed and r.branch == "scott-case-1"


def test_inequality_families_examples():
    for check in (hibi_lower, stanley, hibi_interior, ehrhart_top):
        assert check(H(1, 7, 1)).passed
        assert check(H(1, 0, 0, 0)).passed
    assert stanley(H(1, 8, 1, 8, 0, 0)).passed
    # Stanley fails when the tail is too light
    r = stanley(H(1, 1, 0, 1))
    assert not r.passed and r.witness("index") == 1


def test_hibi_lower_range():
    # the range stops at (d-1)//2; including i = 1 for d = 2 would reject
    # the (1, 7, 1) triangle, since 7 > 1
    assert hibi_lower(H(1, 7, 1)).passed
    assert hibi_lower(H(1, 3, 0)).passed
    r = hibi_lower(H(1, 1, 0, 0, 3, 0))
    assert not r.passed and r.witness("index") == 1


def test_hibi_interior():
    assert hibi_interior(H(1, 7, 0)).branch == "not-applicable"
    assert hibi_interior(H(1, 3, 3, 1)).passed
    assert not hibi_interior(H(1, 3, 1, 1)).passed


def test_hkn_examples():
    assert hkn_spanning(H(1, 7, 1)).passed
    r = hkn_spanning(H(1, 0, 1))
    assert not r.passed and r.witness("gap") == 1
    assert hkn_spanning(H(1, 8, 1, 8, 0, 0)).passed


def test_divisibility():
    assert divisibility(3, 8).passed
    assert not divisibility(7, 1).passed


def test_strip_pyramids_examples():
    base, layers = strip_pyramids(pyramid(pyramid(triangle33())))
    assert layers == 2 and base.ambient_dim == 2 and hstar(base).coeffs == (1, 7, 1)
    assert strip_pyramids(unit_cube(3))[1] == 0
    base, layers = strip_pyramids(spanning(example_nonjoin())[0])
    assert layers == 6 and hstar(base).coeffs == (1, 7, 1)


def test_classify_examples():
    assert classify_degree_le1(exceptional_simplex(4)).tag == "ExceptionalSimplex"
    cls = classify_degree_le1(lawrence_prism([2, 0, 3]))
    assert cls.tag == "LawrencePrism" and sum(cls.heights) == 5
    assert classify_degree_le1(triangle33()).tag == "NotDegreeLeOne"


@given(st.lists(st.integers(0, 3), min_size=1, max_size=4).filter(lambda a: 0 < sum(a) <= 8), st.integers(0, 10**6))
@settings(max_examples=40)
def test_classify_recovers_prism(heights, seed):
    p = scramble(lawrence_prism(heights), random.Random(seed))
    cls = classify_degree_le1(p)
    assert cls.tag == "LawrencePrism"
    image = set(apply_affine(p.vertices, cls.matrix, cls.shift))
    assert image == set(lawrence_prism(cls.heights).vertices)


@given(st.integers(2, 6), st.integers(0, 10**6))
@settings(max_examples=15)
def test_classify_recovers_exceptional(d, seed):
    p = scramble(exceptional_simplex(d), random.Random(seed))
    assert classify_degree_le1(p).tag == "ExceptionalSimplex"


@given(polytopes(max_dim=3))
def test_classification_matches_degree(p):
    cls = classify_degree_le1(p)
    assert (cls.tag == "NotDegreeLeOne") == (hstar(p).degree > 1)


def test_divisibility_lawrence_examples():
    r = divisibility_lawrence(lawrence_prism([1, 1, 1]))
    assert r.passed and r.witness("b") == 3 and r.witness("c") == 0
    assert divisibility_lawrence(example_nonscott()).branch == "not-applicable"
    assert divisibility_lawrence(triangle33()).branch == "not-applicable"


@given(hnf_simplices(max_dim=4))
def test_main_theorem_on_simplices(p):
    assert main_theorem(p).passed


@given(polytopes(max_dim=4))
def test_classical_inequalities(p):
    h = hstar(p)
    for check in (hibi_lower, stanley, hibi_interior, ehrhart_top):
        assert check(h).passed, check(h).format()


@given(polytopes(max_dim=3))
def test_spanning_polytopes_have_no_gaps(p):
    pt, _ = spanning(p)
    assert hkn_spanning(hstar(pt)).passed


def test_pyramids_stack():
    p = iterated_pyramid(LatticePolytope(((0, 0), (2, 0), (0, 2))), 3)
    assert strip_pyramids(p)[1] == 3
