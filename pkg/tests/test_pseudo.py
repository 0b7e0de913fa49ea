import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flagmotive import (
    Cocharacter,
    InvariantViolation,
    ParabolicType,
    PseudoParabolic,
    bb_decomposition,
    bb_decomposition_pseudo,
    bb_twist,
    bb_twist_pseudo,
    bb_twist_pseudo_batch,
    build_root_system,
    chow_ranks,
    chow_ranks_pseudo,
    min_double_coset_reps,
    motive_iso_check,
    reduced_part,
    tangent_roots,
    validate_pseudo,
)
from flagmotive.weyl import weyl_group

A2 = build_root_system("A2")
SL3_DATUM = PseudoParabolic({1, 2}, {(-1, 0): 3, (-1, -1): 3, (0, -1): 4})


def test_sl3_datum_ranks():
    pp = validate_pseudo(SL3_DATUM, A2)
    assert chow_ranks_pseudo(pp, A2).ranks == (1, 2, 2, 1)
    assert chow_ranks(reduced_part(pp), A2).ranks == (1, 2, 2, 1)


def test_sl3_datum_twists():
    table = weyl_group(A2)
    assert bb_twist_pseudo(Cocharacter((1, 1)), table.from_word(()), SL3_DATUM, A2) == 0
    w = table.from_word((1,))
    lam = Cocharacter((1, 0))
    assert bb_twist_pseudo(lam, w, SL3_DATUM, A2) == bb_twist(lam, w, ParabolicType({1, 2}), A2)


def test_zero_exponents_match_reduced_everywhere():
    table = weyl_group(A2)
    for tau in ({1}, {2}, {1, 2}):
        pp = PseudoParabolic.reduced(ParabolicType(tau), A2)
        for lam in itertools.product((0, 1, 2), repeat=2):
            c = Cocharacter(lam)
            for k in range(len(table)):
                w = table.element(k)
                assert bb_twist_pseudo(c, w, pp, A2) == bb_twist(c, w, ParabolicType(tau), A2)


def test_sl3_datum_decompositions_isomorphic():
    for lam in [(1, 1), (1, 0), (0, 1), (0, 0)]:
        c = Cocharacter(lam)
        red = bb_decomposition(c, ParabolicType({1, 2}), A2)
        pse = bb_decomposition_pseudo(c, SL3_DATUM, A2)
        assert motive_iso_check(red, pse), lam


def _all_pseudo(sys, tau, values):
    roots = tangent_roots(ParabolicType(tau), sys)
    for exps in itertools.product(values, repeat=len(roots)):
        yield validate_pseudo(PseudoParabolic(tau, dict(zip(roots, exps))), sys)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_twist_equality_scalar_rank_two(name):
    sys = build_root_system(name)
    for tau in ({1}, {2}, {1, 2}):
        pps = list(_all_pseudo(sys, tau, (0, 1, 2)))
        for lam in itertools.product((0, 1), repeat=2):
            c = Cocharacter(lam)
            for w in min_double_coset_reps(sys, c.zero_nodes, ParabolicType(tau).levi_nodes(sys)):
                want = bb_twist(c, w, ParabolicType(tau), sys)
                assert all(bb_twist_pseudo(c, w, pp, sys) == want for pp in pps)


@settings(max_examples=50, deadline=None)
@given(name=st.sampled_from(["A3", "B3", "C3"]), data=st.data())
def test_pseudo_decomposition_isomorphic_rank_three(name, data):
    sys = build_root_system(name)
    tau = data.draw(st.sets(st.sampled_from([1, 2, 3])))
    roots = tangent_roots(ParabolicType(tau), sys)
    exps = data.draw(st.lists(st.integers(0, 4), min_size=len(roots), max_size=len(roots)))
    pp = validate_pseudo(PseudoParabolic(tau, dict(zip(roots, exps))), sys)
    lam = Cocharacter(tuple(data.draw(st.lists(st.integers(0, 2), min_size=3, max_size=3))))
    assert motive_iso_check(bb_decomposition(lam, ParabolicType(tau), sys), bb_decomposition_pseudo(lam, pp, sys))
    assert chow_ranks_pseudo(pp, sys) == chow_ranks(ParabolicType(tau), sys)


def test_batch_matches_scalar():
    sys = build_root_system("B3")
    tau = ParabolicType({1, 3})
    roots = tangent_roots(tau, sys)
    rng = np.random.default_rng(11)
    grid = rng.integers(0, 5, size=(40, len(roots)))
    table = weyl_group(sys)
    lam = Cocharacter((1, 0, 1))
    for w in min_double_coset_reps(sys, lam.zero_nodes, tau.levi_nodes(sys)):
        batch = bb_twist_pseudo_batch(lam, w, tau, grid, sys)
        scalar = [bb_twist_pseudo(lam, w, PseudoParabolic(tau, dict(zip(roots, row.tolist()))), sys) for row in grid]
        assert batch.tolist() == scalar


def test_invariant_violation_on_inconsistent_data():
    # an unvalidated datum whose domain does not match tau must trip the check
    bogus = PseudoParabolic({1}, {(-1, -1): 1})
    assert reduced_part(bogus).tau == frozenset()
    w = weyl_group(A2).from_word((1, 2))  # s1 s2 (-a1-a2) = a1
    with pytest.raises(InvariantViolation) as err:
        bb_twist_pseudo(Cocharacter((1, 0)), w, bogus, A2)
    assert err.value.payload["pseudo"] != err.value.payload["reduced"]
