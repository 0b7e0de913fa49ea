from collections import Counter

import numpy as np
import pytest

from flagmotive import (
    Cocharacter,
    ResourceError,
    build_root_system,
    dominant_conjugate,
    enumerate_weyl,
    min_coset_reps,
    min_double_coset_reps,
    weyl_group,
)
from flagmotive import poly

from oracles import weyl_closure_words

SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"]


def test_a2_lengths():
    elems = enumerate_weyl(build_root_system("A2"))
    assert sorted(w.length for w in elems) == [0, 1, 1, 2, 2, 3]


def test_a1_lengths():
    assert sorted(w.length for w in enumerate_weyl(build_root_system("A1"))) == [0, 1]


def test_b2_order_and_longest():
    elems = enumerate_weyl(build_root_system("B2"))
    assert len(elems) == 8
    assert max(w.length for w in elems) == 4


@pytest.mark.parametrize("name", SMALL)
def test_length_is_inversion_count(name):
    sys = build_root_system(name)
    for w in enumerate_weyl(sys):
        inversions = sum(1 for b in sys.positive_roots if w.apply(sys, b) not in sys.positive_roots)
        assert inversions == w.length


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "C3", "G2", "D4"])
def test_bfs_matches_matrix_closure(name):
    sys = build_root_system(name)
    table = weyl_group(sys)
    assert Counter(table.lengths.tolist()) == weyl_closure_words(sys.cartan)


@pytest.mark.parametrize(
    "name,degrees", [("A2", (2, 3)), ("B2", (2, 4)), ("G2", (2, 6)), ("A3", (2, 3, 4))]
)
def test_product_formula_explicit_degrees(name, degrees):
    table = weyl_group(build_root_system(name))
    assert poly.from_degrees(table.lengths.tolist()) == poly.weyl_product(degrees)


@pytest.mark.parametrize("name", SMALL)
def test_length_distribution_palindromic(name):
    sys = build_root_system(name)
    gf = poly.from_degrees(weyl_group(sys).lengths.tolist())
    assert len(gf) - 1 == sys.npos
    assert poly.is_palindromic(gf)


def test_words_are_reduced_and_consistent():
    sys = build_root_system("B3")
    table = weyl_group(sys)
    for k in range(len(table)):
        w = table.element(k)
        assert table.from_word(w.word) == w


def test_min_coset_reps_examples():
    sys = build_root_system("A2")
    reps = min_coset_reps(sys, {2}).reps
    assert sorted(w.length for w in reps) == [0, 1, 2]
    assert len(min_coset_reps(sys, set()).reps) == 6
    full = min_coset_reps(sys, {1, 2}).reps
    assert len(full) == 1 and full[0].length == 0


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "C3"])
def test_coset_count_times_levi_order(name):
    sys = build_root_system(name)
    for nodes in [set(), {1}, {2}, {1, 2}, set(sys.nodes)]:
        nodes &= set(sys.nodes)
        levi_size = sum(1 for w in enumerate_weyl(sys) if set(w.word) <= nodes)
        assert len(min_coset_reps(sys, nodes).reps) * levi_size == sys.weyl_order


def _double_coset_partition(sys, left, right):
    """Brute force: orbits of W under (u, v) . w = u w v with u in W_left, v in W_right."""
    table = weyl_group(sys)
    gens_l = [sys.reflection_perms[i - 1] for i in left]
    gens_r = [sys.reflection_perms[i - 1] for i in right]
    key = {table.perms[k].tobytes(): k for k in range(len(table))}
    remaining = set(range(len(table)))
    orbits = []
    while remaining:
        start = min(remaining)
        orbit, stack = {start}, [start]
        while stack:
            p = table.perms[stack.pop()]
            nbrs = [g[p] for g in gens_l] + [p[g] for g in gens_r]
            for q in nbrs:
                k = key[np.ascontiguousarray(q).tobytes()]
                if k not in orbit:
                    orbit.add(k)
                    stack.append(k)
        orbits.append(orbit)
        remaining -= orbit
    return orbits


def test_double_cosets_a2_example():
    sys = build_root_system("A2")
    reps = min_double_coset_reps(sys, {2}, {2})
    assert sorted(w.word for w in reps) == [(), (1,)]
    assert len(min_double_coset_reps(sys, {1, 2}, {1, 2})) == 1
    assert len(min_double_coset_reps(sys, set(), set())) == 6


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "C3"])
def test_double_coset_reps_partition_w(name):
    sys = build_root_system(name)
    table = weyl_group(sys)
    nodes = sorted(sys.nodes)
    subsets = [set(), {nodes[0]}, {nodes[-1]}, set(nodes[:2]), set(nodes)]
    for left in subsets:
        for right in subsets:
            orbits = _double_coset_partition(sys, left, right)
            reps = min_double_coset_reps(sys, left, right)
            assert len(reps) == len(orbits)
            for orbit in orbits:
                inside = [w for w in reps if table.index_of(w) in orbit]
                assert len(inside) == 1
                assert inside[0].length == min(int(table.lengths[k]) for k in orbit)


def test_enumeration_cap():
    with pytest.raises(ResourceError, match="cap"):
        weyl_group(build_root_system("E7"))
    with pytest.raises(ResourceError, match="100"):
        weyl_group(build_root_system("B4"), cap=100)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MOTIVE_WEYL_CAP", "10")
    with pytest.raises(ResourceError):
        weyl_group(build_root_system("A3"))


@pytest.mark.parametrize("pairings", [(-1, 0), (2, -3), (-1, -1), (0, 0)])
def test_dominant_conjugate_a2(pairings):
    sys = build_root_system("A2")
    dom, word = dominant_conjugate(Cocharacter(pairings), sys)
    assert dom.is_dominant
    # w . lam paired with alpha = lam paired with w^-1(alpha)
    w = weyl_group(sys).from_word(word)
    winv = w.inverse()
    for i in (1, 2):
        img = winv.apply(sys, sys.simple_root(i))
        assert dom.pairings[i - 1] == sum(c * p for c, p in zip(img, pairings))


def test_cap_enforced_after_caching():
    from flagmotive import ParabolicType, ResourceError, poincare_polynomial
    from flagmotive.weyl import cap_override

    sys = build_root_system("A3")
    poincare_polynomial(ParabolicType({1}), sys)
    with cap_override(10), pytest.raises(ResourceError):
        poincare_polynomial(ParabolicType({1}), sys)
