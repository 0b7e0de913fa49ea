"""Exhaustive invariant sweeps over small-rank root systems."""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from . import poly
from .errors import InvariantViolation, ValidationError
from .motive import (
    bb_decomposition,
    bb_twist_pseudo_batch,
    cell_decomposition,
    chow_ranks,
    chow_ranks_pseudo,
    decompose_over_index,
    n_K_for,
    poincare_polynomial,
    rost_bound,
)
from .parabolic import ParabolicType, PseudoParabolic, tangent_roots
from .rootsys import Cocharacter, DynkinType, RootSystem, build_root_system
from .weyl import default_cap, min_double_coset_reps, weyl_group

DEFAULT_SWEEP_RANK = 3
MAX_COUNTEREXAMPLES = 5


def default_sweep_rank() -> int:
    raw = os.environ.get("MOTIVE_SWEEP_RANK")
    if raw is None:
        return DEFAULT_SWEEP_RANK
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"MOTIVE_SWEEP_RANK must be an integer, got {raw!r}") from None


def irreducible_types(max_rank: int, cap: Optional[int] = None) -> list[DynkinType]:
    """Every legal irreducible type of rank <= max_rank whose Weyl group fits the cap."""
    cap = default_cap() if cap is None else cap
    out = []
    for fam in "ABCDEFG":
        for n in range(1, max_rank + 1):
            try:
                t = DynkinType(fam, n)
            except ValidationError:
                continue
            if t.weyl_order <= cap:
                out.append(t)
    return out


def all_subsets(nodes) -> Iterator[frozenset[int]]:
    nodes = sorted(nodes)
    for r in range(len(nodes) + 1):
        for c in itertools.combinations(nodes, r):
            yield frozenset(c)


def binary_cocharacters(sys: RootSystem) -> Iterator[Cocharacter]:
    for bits in itertools.product((0, 1), repeat=sys.rank):
        yield Cocharacter(bits)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    counterexamples: list = field(default_factory=list)
    failures: int = 0

    def check(self, ok: bool, payload: Callable[[], dict], weight: int = 1):
        self.checked += weight
        if not ok:
            self.failures += 1
            if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(payload())

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            "counterexamples": self.counterexamples,
        }


def weyl_product_suite(types) -> SuiteResult:
    res = SuiteResult("weyl-product-formula")
    for t in types:
        sys = build_root_system(t)
        got = poly.from_degrees(weyl_group(sys).lengths.tolist())
        want = poly.weyl_product(t.degrees)
        res.check(got == want, lambda: {"type": str(t), "bfs": list(got), "product": list(want)})
    return res


def sum_formula_suite(types) -> SuiteResult:
    res = SuiteResult("sum-formula")
    for t in types:
        sys = build_root_system(t)
        for tau in all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            target = poincare_polynomial(pt, sys)
            for lam in binary_cocharacters(sys):
                got = bb_decomposition(lam, pt, sys).poincare()
                res.check(
                    got == target,
                    lambda: {
                        "type": str(t),
                        "tau": sorted(tau),
                        "lambda": list(lam.pairings),
                        "sum": list(got),
                        "poincare": list(target),
                    },
                )
    return res


def exponent_grid(m: int, max_exponent: int) -> np.ndarray:
    vals = np.arange(max_exponent + 1, dtype=np.int64)
    if m == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([vals] * m), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def twist_equality_suite(types, max_exponent: int = 2) -> SuiteResult:
    """One check per (type, tau, lambda, rep, exponent assignment)."""
    res = SuiteResult("twist-equality")
    for t in types:
        sys = build_root_system(t)
        for tau in all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            grid = exponent_grid(len(tangent_roots(pt, sys)), max_exponent)
            for lam in binary_cocharacters(sys):
                for w in min_double_coset_reps(sys, lam.zero_nodes, pt.levi_nodes(sys)):
                    # the batch call raises on the first assignment that disagrees
                    try:
                        bb_twist_pseudo_batch(lam, w, pt, grid, sys)
                        ok, detail = True, None
                    except InvariantViolation as exc:
                        ok, detail = False, exc.payload
                    res.check(
                        ok,
                        lambda: {
                            "type": str(t),
                            "tau": sorted(tau),
                            "lambda": list(lam.pairings),
                            "w": list(w.word),
                            "detail": detail,
                        },
                        weight=len(grid),
                    )
    return res


def rank_equality_suite(types, max_exponent: int = 2) -> SuiteResult:
    """Pseudo vs reduced Chow ranks. Exhaustive over exponents while the grid is
    small; otherwise the constant and alternating assignments."""
    res = SuiteResult("rank-equality")
    for t in types:
        sys = build_root_system(t)
        for tau in all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            roots = tangent_roots(pt, sys)
            m = len(roots)
            if (max_exponent + 1) ** m <= 729:
                rows = exponent_grid(m, max_exponent).tolist()
            else:
                rows = [[e] * m for e in range(max_exponent + 1)]
                rows.append([j % (max_exponent + 1) for j in range(m)])
            want = chow_ranks(pt, sys)
            for row in rows:
                pp = PseudoParabolic(pt, dict(zip(roots, row)))
                try:
                    ok = chow_ranks_pseudo(pp, sys) == want
                except InvariantViolation:
                    ok = False
                res.check(ok, lambda: {"type": str(t), "tau": sorted(tau), "exponents": row})
    return res


def tits_suite(types) -> SuiteResult:
    res = SuiteResult("tits-index")
    for t in types:
        sys = build_root_system(t)
        for tau in all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            counts = {d: len(decompose_over_index(d, pt, sys)) for d in all_subsets(sys.nodes)}
            split = decompose_over_index(sys.nodes, pt, sys)
            res.check(
                split.is_pure_tate and split.poincare() == poincare_polynomial(pt, sys),
                lambda: {"type": str(t), "tau": sorted(tau), "case": "split"},
            )
            aniso = decompose_over_index((), pt, sys)
            s0 = aniso.summands
            res.check(
                len(s0) == 1 and s0[0].twist == 0 and (not tau or s0[0].base.anisotropic),
                lambda: {"type": str(t), "tau": sorted(tau), "case": "anisotropic"},
            )
            res.check(
                counts[sys.nodes] == n_K_for(pt, sys),
                lambda: {"type": str(t), "tau": sorted(tau), "case": "n_K"},
            )
            for d1, c1 in counts.items():
                for d2, c2 in counts.items():
                    if d1 <= d2:
                        res.check(
                            c1 <= c2,
                            lambda: {
                                "type": str(t),
                                "tau": sorted(tau),
                                "delta": sorted(d1),
                                "delta_prime": sorted(d2),
                            },
                        )
    return res


def rost_suite(max_value: int = 10) -> SuiteResult:
    res = SuiteResult("rost-bound")
    for d in range(max_value + 1):
        for n_K in range(1, max_value + 1):
            res.check(rost_bound(d, n_K, n_K) == 1, lambda: {"d": d, "n": n_K, "n_K": n_K})
            for n in range(1, n_K):
                res.check(
                    (d + 1) * rost_bound(d, n + 1, n_K) == rost_bound(d, n, n_K),
                    lambda: {"d": d, "n": n, "n_K": n_K},
                )
    return res


def duality_suite(types) -> SuiteResult:
    res = SuiteResult("duality-counting")
    for t in types:
        sys = build_root_system(t)
        for tau in all_subsets(sys.nodes):
            pt = ParabolicType(tau)
            ranks = chow_ranks(pt, sys)
            cells = cell_decomposition(pt, sys)
            dim = len(tangent_roots(pt, sys))
            ok = (
                ranks.is_palindromic
                and ranks.total == len(cells)
                and max(c.dim for c in cells) == dim
                and len(ranks.ranks) == dim + 1
            )
            res.check(ok, lambda: {"type": str(t), "tau": sorted(tau), "ranks": list(ranks.ranks)})
    return res


def run_sweep(max_rank: Optional[int] = None, max_exponent: int = 2) -> dict:
    max_rank = default_sweep_rank() if max_rank is None else max_rank
    if max_rank < 1:
        raise ValidationError(f"sweep rank must be >= 1, got {max_rank}")
    types = irreducible_types(max_rank)
    small = [t for t in types if t.rank <= 3]
    suites = [
        weyl_product_suite(types),
        sum_formula_suite(types),
        twist_equality_suite(small, max_exponent),
        rank_equality_suite(small, max_exponent),
        tits_suite(small),
        rost_suite(),
        duality_suite(types),
    ]
    return {
        "rank_bound": max_rank,
        "types": [str(t) for t in types],
        "passed": all(s.passed for s in suites),
        "suites": [s.to_dict() for s in suites],
    }
