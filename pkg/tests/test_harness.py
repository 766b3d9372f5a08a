import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hstarlab.constructions import section_simplices
from hstarlab.ehrhart import hstar_group, lambda_group
from hstarlab.linalg import det, hnf, transpose
from hstarlab.harness import (
    EnumSpec,
    InvalidTupleLength,
    classifier_suite,
    cross_engine_suite,
    delta_k,
    delta_prime_k,
    enumerate_simplices,
    hnf_matrices,
    make_section_instance,
    nonneg_factorizations,
    pi_inv,
    pi_map,
    prism_suite,
    psi_inv,
    psi_map,
    random_section_instances,
    spanning_suite,
    sweep_main_theorem,
    sweep_parallel,
    verify_inclusion_exclusion,
    verify_paper_examples,
    verify_prop42,
    verify_section_instance,
)


def sigma(n):
    return sum(k for k in range(1, n + 1) if n % k == 0)


def test_enum_spec_validation():
    with pytest.raises(ValueError):
        EnumSpec(0, 3)
    with pytest.raises(ValueError):
        EnumSpec(2, 3, (2, 2))


def test_enumeration_examples():
    segs = [p.vertices for p in enumerate_simplices(EnumSpec(1, 3))]
    assert segs == [((0,), (1,)), ((0,), (2,)), ((0,), (3,))]
    assert len(list(enumerate_simplices(EnumSpec(2, 2)))) == 4
    assert [p.vertices for p in enumerate_simplices(EnumSpec(3, 1))] == [
        ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    ]


@pytest.mark.parametrize("n", range(1, 13))
def test_dim2_count_is_divisor_sum(n):
    assert sum(1 for _ in hnf_matrices(2, n)) == sum(sigma(k) for k in range(1, n + 1))


def test_enumeration_covers_random_simplices():
    # every simplex with a vertex at the origin reduces to an enumerated form
    rng = random.Random(5)
    forms = {tuple(map(tuple, m)) for m in hnf_matrices(3, 12)}
    for _ in range(60):
        m = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        if not 1 <= abs(det(m)) <= 12:
            continue
        lower = transpose(hnf(transpose(m))[0])
        assert tuple(map(tuple, lower)) in forms


def test_shards_partition_the_corpus():
    whole = [p.vertices for p in enumerate_simplices(EnumSpec(3, 8))]
    parts = []
    for i in range(3):
        parts += [p.vertices for p in enumerate_simplices(EnumSpec(3, 8, (i, 3)))]
    assert sorted(whole) == sorted(parts)


def test_sweep_deterministic_and_clean():
    a = sweep_main_theorem(EnumSpec(3, 10, seed=1))
    b = sweep_main_theorem(EnumSpec(3, 10, seed=1))
    assert a == b
    assert a.ok and a.scott_pass == a.h3zero
    assert sweep_parallel(3, 10, shards=3).total == a.total


def test_sweep_dim2_characterization():
    s = sweep_main_theorem(EnumSpec(2, 15))
    assert s.ok and s.dim2_pass == s.total == s.h3zero


# -- maps between simplex groups ---------------------------------------------


def test_maps_fix_zero():
    z = (Fraction(0),) * 4
    c = [1, 2, 3]
    assert pi_map(z, 1, c) == z and pi_inv(z, 1, c) == z
    assert psi_map(z, 2) == z and psi_inv(z, 2) == z


def test_maps_reject_bad_lengths():
    with pytest.raises(InvalidTupleLength):
        pi_map((0, 0), 0, [1, 2, 3])
    with pytest.raises(InvalidTupleLength):
        psi_map((0,), 0)


def test_simplex_vertex_orders():
    assert delta_k(2, 1) == [(0, 0), (1, 0), (1, 1)]
    assert delta_prime_k([2, 3], 0) == [(0, 1), (1, 3), (0, 2)]


@given(
    st.integers(2, 5).flatmap(
        lambda d: st.tuples(
            st.lists(st.integers(0, 4), min_size=d, max_size=d),
            st.integers(0, d - 1),
            st.lists(st.integers(0, 5), min_size=d, max_size=d),
            st.integers(2, 6),
        )
    )
)
@settings(max_examples=80)
def test_maps_are_inverse_bijections(data):
    """Oracle: enumerate both groups and compare images element-wise."""
    c, k, nums, q = data
    c[k] = max(c[k], 1)
    inst = make_section_instance(c, k, [tuple(Fraction(x, q) for x in nums)])
    d = len(c)
    gk = lambda_group(inst.simplex(delta_k(d, k)))
    gp = lambda_group(inst.simplex(delta_prime_k(c, k)))
    g0 = lambda_group(inst.simplex(delta_k(d, 0)))
    assert {pi_map(r, k, c) for r in gk.elements} == set(gp.elements)
    assert all(pi_inv(pi_map(r, k, c), k, c) == r for r in gk.elements)
    assert {psi_map(r, k) for r in g0.elements} == set(gk.elements)
    assert all(psi_inv(psi_map(r, k), k) == r for r in g0.elements)
    for r in gk.elements:
        assert abs(sum(pi_map(r, k, c)) - sum(r)) <= 1


def test_section_maps_trivial_refinement():
    inst = make_section_instance([1, 2, 3], 1, [])
    r = verify_section_instance(inst)
    assert r.passed and r.witness("h2") == 0


def test_section_maps_index_two_in_dim3():
    gen = (Fraction(1, 2), 0, Fraction(1, 2))
    inst = make_section_instance([2, 1, 1], 0, [gen])
    assert verify_section_instance(inst).passed
    values = {hstar_group(s)[2] for s in section_simplices([2, 1, 0], inst.lattice)}
    assert len(values) == 1


def test_section_maps_random_instances_small():
    insts = random_section_instances(25, seed=9)
    assert len(insts) == 25
    assert verify_prop42(insts).passed


# -- prisms ------------------------------------------------------------------


def test_inclusion_exclusion_examples():
    assert verify_inclusion_exclusion([1, 1]).passed
    plain = verify_inclusion_exclusion([2, 1, 0])
    h, rest = plain.witness("h"), plain.witness("h_rest")
    assert plain.passed and h[1] == rest[1] + 1
    # when the peeled simplex stays empty, one new lattice point appears
    half = Fraction(1, 2)
    r = verify_inclusion_exclusion([2, 1, 0], [(half, half, 0)])
    assert r.passed and r.witness("h_delta")[1] == 0
    assert r.witness("h")[1] == r.witness("h_rest")[1] + 1
    r = verify_inclusion_exclusion([2, 1, 0], [(half, 0, half)])
    assert r.passed
    # refining by an index-2 lattice doubles the normalized volume
    assert sum(r.witness("h")) == 2 * sum(h)
    assert verify_inclusion_exclusion([1, 0]).branch == "not-applicable"


@given(st.lists(st.integers(0, 3), min_size=2, max_size=3).filter(lambda a: sum(a) >= 2), st.integers(1, 4), st.data())
@settings(max_examples=30)
def test_inclusion_exclusion_random(heights, q, data):
    d = len(heights)
    nums = data.draw(st.lists(st.integers(0, q - 1), min_size=d, max_size=d))
    assert verify_inclusion_exclusion(heights, [tuple(Fraction(x, q) for x in nums)]).passed


def test_small_suites():
    assert prism_suite(10, seed=4).passed
    assert spanning_suite(20, seed=4).passed
    assert cross_engine_suite(10, seed=4, dims=(3, 4), max_volume=30).passed
    assert classifier_suite(10, seed=4).passed


# -- worked examples ---------------------------------------------------------


def test_factorization_search():
    assert nonneg_factorizations((1, 7, 1, 0, 6, 3)) == []
    assert ((1, 4), (1, 0, 5)) in nonneg_factorizations((1, 4, 5, 20))
    assert nonneg_factorizations((1, 2, 1)) == [((1, 1), (1, 1))]


def test_worked_examples_all_pass():
    reports = verify_paper_examples()
    assert all(reports), [r.format() for r in reports if not r]
    names = {r.name for r in reports}
    assert {"nonscott_example", "nonjoin_group", "nonjoin_strip", "degree_s_joins"} <= names
