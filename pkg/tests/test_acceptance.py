"""End-to-end acceptance checks, one test per criterion.

The summary section printed at the end of the run lists one PASS/FAIL line
per criterion.
"""

import itertools
import time
from functools import lru_cache

import pytest

from flagmotive import (
    Cocharacter,
    ParabolicType,
    PseudoParabolic,
    bb_decomposition,
    bb_decomposition_pseudo,
    build_root_system,
    cell_decomposition,
    chow_ranks,
    chow_ranks_pseudo,
    decompose_over_index,
    min_double_coset_reps,
    poincare_polynomial,
    rost_bound,
    tangent_roots,
    validate_pseudo,
)
from flagmotive import cli, poly, sweep
from flagmotive.rootsys import DynkinType
from flagmotive.weyl import weyl_group

from oracles import coset_poincare, counter_to_poly, weyl_closure_words

criterion = pytest.mark.criterion


@lru_cache(maxsize=None)
def oracle_poincare(name, tau):
    sys = build_root_system(name)
    return coset_poincare(sys.cartan, sys.nodes - tau)


@criterion(1, "BFS length generating function equals the degree product formula")
def test_weyl_product_formula():
    types = ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4", "G2"]
    for name in types:
        t = DynkinType.parse(name)
        sys = build_root_system(t)
        bfs = poly.from_degrees(weyl_group(sys).lengths.tolist())
        assert bfs == poly.weyl_product(t.degrees), name
        assert bfs == counter_to_poly(weyl_closure_words(sys.cartan)), name
    assert sweep.weyl_product_suite([DynkinType.parse(n) for n in types]).passed


@criterion(2, "SL3 datum with exponents 3,3,4: ranks (1,2,2,1) and isomorphic motives")
def test_sl3_pseudo_example():
    sys = build_root_system("A2")
    pp = validate_pseudo(PseudoParabolic({1, 2}, {(-1, 0): 3, (-1, -1): 3, (0, -1): 4}), sys)
    assert chow_ranks_pseudo(pp, sys).ranks == (1, 2, 2, 1)
    assert chow_ranks(ParabolicType({1, 2}), sys).ranks == (1, 2, 2, 1)

    payload = {
        "tau": [1, 2],
        "exponents": [{"root": list(r), "n": n} for r, n in pp.exponents],
    }
    group = {"family": "A", "rank": 2}
    doc = cli.execute(
        {
            "command": "verify-iso",
            "left": {"command": "bb", "group": group, "tau": [1, 2]},
            "right": {"command": "bb-pseudo", "group": group, "pseudo": payload},
        }
    )
    assert doc["isomorphic"] is True and doc["diff"] == {"only_left": [], "only_right": []}
    for lam in itertools.product((0, 1), repeat=2):
        c = Cocharacter(lam)
        assert bb_decomposition(c, ParabolicType({1, 2}), sys) == bb_decomposition_pseudo(c, pp, sys)


@criterion(3, "sum formula for every irreducible type of rank <= 4, all tau, all 0/1 lambda")
def test_sum_formula_sweep():
    start = time.perf_counter()
    types = sweep.irreducible_types(4)
    assert [str(t) for t in types] == ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2"]
    checked = 0
    for t in types:
        sys = build_root_system(t)
        for tau in sweep.all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            target = poincare_polynomial(pt, sys)
            assert target == oracle_poincare(str(t), tau)
            for lam in sweep.binary_cocharacters(sys):
                assert bb_decomposition(lam, pt, sys).poincare() == target, (str(t), sorted(tau), lam)
                checked += 1
    assert checked == sum(4**t.rank for t in types)
    assert time.perf_counter() - start < 120


@criterion(4, "pseudo twist equals reduced twist: rank <= 3, exponents in {0,1,2}, all reps")
def test_twist_equality_sweep():
    types = sweep.irreducible_types(3)
    res = sweep.twist_equality_suite(types, max_exponent=2)
    assert res.failures == 0, res.counterexamples
    expected = 0
    for t in types:
        sys = build_root_system(t)
        for tau in sweep.all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            m = len(tangent_roots(pt, sys))
            for lam in sweep.binary_cocharacters(sys):
                expected += len(min_double_coset_reps(sys, lam.zero_nodes, pt.levi_nodes(sys))) * 3**m
    assert res.checked == expected


@criterion(5, "Tits index: split is Tate, anisotropic is one summand, counts monotone on delta-chains")
def test_tits_index_boundaries():
    types = sweep.irreducible_types(3)
    assert sweep.tits_suite(types).passed
    for t in types:
        sys = build_root_system(t)
        for tau in sweep.all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            split = decompose_over_index(sys.nodes, pt, sys)
            assert split.is_pure_tate and split.poincare() == oracle_poincare(str(t), tau)
            (only,) = decompose_over_index(set(), pt, sys).summands
            assert only.twist == 0 and (not tau or only.base.anisotropic)
            # every maximal chain of delta's
            for order in itertools.permutations(sorted(sys.nodes)):
                counts = [len(decompose_over_index(set(order[:k]), pt, sys)) for k in range(sys.rank + 1)]
                assert counts == sorted(counts), (str(t), sorted(tau), order, counts)


@criterion(6, "Rost bound: (d+1) N(d,n+1,n_K) = N(d,n,n_K) and N(d,n_K,n_K) = 1")
def test_rost_bound_algebra():
    assert sweep.rost_suite(10).passed
    for d in range(11):
        for n_K in range(1, 11):
            assert rost_bound(d, n_K, n_K) == 1
            for n in range(1, n_K):
                assert (d + 1) * rost_bound(d, n + 1, n_K) == rost_bound(d, n, n_K)
                assert rost_bound(d, n, n_K) == (d + 1) ** (n_K - n)


@criterion(7, "graded ranks palindromic, total = |W^tau|, dimension = top cell, rank <= 4")
def test_duality_and_counting():
    types = sweep.irreducible_types(4)
    assert sweep.duality_suite(types).passed
    for t in types:
        sys = build_root_system(t)
        for tau in sweep.all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            ranks = chow_ranks(pt, sys)
            cells = cell_decomposition(pt, sys)
            assert ranks.is_palindromic
            assert ranks.total == len(cells) == sum(oracle_poincare(str(t), tau))
            assert len(tangent_roots(pt, sys)) == max(c.dim for c in cells)
