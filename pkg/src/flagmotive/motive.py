"""
Motivic decompositions of flag varieties G/P and their non-reduced twists.

Everything is computed at the level of ranks and multiplicities: a summand
is a base variety (a point, or a flag variety of a Levi subgroup) together
with a Tate twist, graded by dimension.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from . import poly
from ._kernels import kernels
from .errors import InvariantViolation, ValidationError
from .parabolic import (
    ParabolicType,
    PseudoParabolic,
    reduced_part,
    tangent_roots,
    validate_pseudo,
)
from .rootsys import (
    Cocharacter,
    DynkinType,
    LeviComponent,
    RootSystem,
    build_root_system,
    pairing,
    subdiagram_components,
    support,
)
from .weyl import WeylElement, check_cap, min_coset_reps, weyl_group


@dataclass(frozen=True)
class GradedRanks:
    ranks: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.ranks)

    @property
    def is_palindromic(self) -> bool:
        return poly.is_palindromic(self.ranks)


@dataclass(frozen=True)
class Cell:
    w: WeylElement
    dim: int


@dataclass(frozen=True)
class TateBase:
    """The point Spec k."""

    def to_dict(self) -> dict:
        return {"kind": "tate"}


TATE = TateBase()


@dataclass(frozen=True)
class FlagBase:
    """Flag variety of a (semisimple part of a) Levi subgroup.

    ``tau_h`` is given in the ambient node numbering; ``components`` list the
    Levi's irreducible pieces with their nodes in Bourbaki order.
    """

    components: tuple[LeviComponent, ...]
    tau_h: frozenset[int]
    anisotropic: bool = False

    def to_dict(self) -> dict:
        return {
            "kind": "flag",
            "components": [
                {"family": c.dynkin.family, "rank": c.dynkin.rank, "nodes": list(c.nodes)}
                for c in self.components
            ],
            "tau_h": sorted(self.tau_h),
            "anisotropic": self.anisotropic,
        }


Base = Union[TateBase, FlagBase]


def make_base(components, tau_h, anisotropic=False) -> Base:
    tau_h = frozenset(tau_h)
    if not tau_h:
        return TATE
    return FlagBase(tuple(components), tau_h, anisotropic)


def base_key(base: Base) -> str:
    return json.dumps(base.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass(frozen=True)
class Summand:
    base: Base
    twist: int

    def sort_key(self):
        return (self.twist, base_key(self.base))


@dataclass(frozen=True)
class MotiveDecomposition:
    summands: tuple[Summand, ...]
    ambient_dim: int

    def __post_init__(self):
        ordered = tuple(sorted(self.summands, key=Summand.sort_key))
        object.__setattr__(self, "summands", ordered)
        for s in ordered:
            if not 0 <= s.twist <= self.ambient_dim:
                raise ValidationError(f"twist {s.twist} outside [0, {self.ambient_dim}]")

    def __len__(self):
        return len(self.summands)

    @property
    def is_pure_tate(self) -> bool:
        return all(isinstance(s.base, TateBase) for s in self.summands)

    def poincare(self) -> poly.Poly:
        """Sum of the split Poincare polynomials of the bases, shifted by twist."""
        out: poly.Poly = (0,)
        for s in self.summands:
            out = poly.add(out, poly.shift(base_poincare(s.base), s.twist))
        return out

    def to_dict(self) -> dict:
        return {
            "ambient_dim": self.ambient_dim,
            "summands": [{"base": s.base.to_dict(), "twist": s.twist} for s in self.summands],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "MotiveDecomposition":
        try:
            summands = []
            for item in doc["summands"]:
                b = item["base"]
                if b["kind"] == "tate":
                    base: Base = TATE
                elif b["kind"] == "flag":
                    comps = tuple(
                        LeviComponent(DynkinType(c["family"], c["rank"]), tuple(c["nodes"]))
                        for c in b["components"]
                    )
                    base = make_base(comps, b["tau_h"], bool(b.get("anisotropic", False)))
                else:
                    raise ValidationError(f"unknown base kind {b['kind']!r}")
                summands.append(Summand(base, int(item["twist"])))
            return cls(tuple(summands), int(doc["ambient_dim"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed motive decomposition: {exc}") from None


# --------------------------------------------------------------------------
# Cells and Poincare polynomials
# --------------------------------------------------------------------------


def cell_decomposition(tau: ParabolicType, sys: RootSystem) -> list[Cell]:
    tau.check(sys)
    reps = min_coset_reps(sys, tau.levi_nodes(sys)).reps
    return [Cell(w, w.length) for w in reps]


def poincare_polynomial(tau: ParabolicType, sys: RootSystem) -> poly.Poly:
    check_cap(sys)
    return _poincare_cached(tau.check(sys).tau, sys)


@lru_cache(maxsize=None)
def _poincare_cached(tau: frozenset, sys: RootSystem) -> poly.Poly:
    table = weyl_group(sys)
    mask = table.min_coset_mask(sys.nodes - tau)
    return poly.from_degrees(table.lengths[mask].tolist())


def chow_ranks(tau: ParabolicType, sys: RootSystem) -> GradedRanks:
    return GradedRanks(poincare_polynomial(tau, sys))


def chow_ranks_pseudo(pp: PseudoParabolic, sys: RootSystem) -> GradedRanks:
    """Chow ranks of G/P~, computed from the exponent data.

    The dimension is the number of finite-exponent tangent directions; each
    cell's dimension is the number of those directions the cell's Weyl element
    turns positive. The result is checked against the reduced ranks.
    """
    validate_pseudo(pp, sys)
    red = reduced_part(pp)
    m = len(pp.domain)
    idx = np.array([sys.index[b] for b in pp.domain], dtype=np.int64)
    ranks = [0] * (m + 1)
    for w in min_coset_reps(sys, red.levi_nodes(sys)).reps:
        act = np.asarray(w.action)
        dim = int((act[idx] < sys.npos).sum()) if m else 0
        ranks[dim] += 1
    out = GradedRanks(tuple(ranks))
    reduced = chow_ranks(red, sys)
    if out != reduced:
        raise InvariantViolation(
            "pseudo and reduced Chow ranks differ",
            {"pseudo": list(out.ranks), "reduced": list(reduced.ranks)},
        )
    return out


def base_poincare(base: Base) -> poly.Poly:
    """Split Poincare polynomial of a summand base, from its label alone."""
    if isinstance(base, TateBase):
        return (1,)
    return _flag_poincare(base.components, base.tau_h)


@lru_cache(maxsize=None)
def _flag_poincare(components: tuple[LeviComponent, ...], tau_h: frozenset) -> poly.Poly:
    sub = build_root_system([c.dynkin for c in components])
    local = []
    off = 0
    for c in components:
        for pos, node in enumerate(c.nodes):
            if node in tau_h:
                local.append(off + pos + 1)
        off += c.dynkin.rank
    if len(local) != len(tau_h):
        raise ValidationError(f"tau_h {sorted(tau_h)} not covered by the base components")
    return poincare_polynomial(ParabolicType(local), sub)


# --------------------------------------------------------------------------
# Bialynicki-Birula decompositions
# --------------------------------------------------------------------------


def _check_dominant(lam: Cocharacter, sys: RootSystem) -> None:
    lam.check(sys)
    if not lam.is_dominant:
        raise ValidationError(
            f"cocharacter {list(lam.pairings)} is not dominant; "
            "conjugate it first (weyl.dominant_conjugate)"
        )


def bb_twist(lam: Cocharacter, w: WeylElement, tau: ParabolicType, sys: RootSystem) -> int:
    """Number of tangent weights at the fixed point ``wP`` pairing positively with ``lam``."""
    lam.check(sys)
    count = 0
    for beta in tangent_roots(tau, sys):
        if pairing(lam, w.apply(sys, beta), sys) > 0:
            count += 1
    return count


def _scaled_sign(n: int, value: int) -> int:
    # sign(p**n * value) for a symbolic prime p > 3
    return (value > 0) - (value < 0)


def bb_twist_pseudo(lam: Cocharacter, w: WeylElement, pp: PseudoParabolic, sys: RootSystem) -> int:
    """Positive-eigenspace dimension on G/P~ at the image of ``wP``.

    Walks the exponent map, weighting each direction by ``p**n(beta)``; must
    agree with :func:`bb_twist` on the reduced type.
    """
    lam.check(sys)
    count = 0
    for beta, n in pp.exponents:
        if _scaled_sign(n, pairing(lam, w.apply(sys, beta), sys)) > 0:
            count += 1
    reduced = bb_twist(lam, w, reduced_part(pp), sys)
    if count != reduced:
        raise InvariantViolation(
            "pseudo and reduced twists differ",
            {"lambda": list(lam.pairings), "w": list(w.word), "pseudo": count, "reduced": reduced},
        )
    return count


def bb_twist_pseudo_batch(
    lam: Cocharacter, w: WeylElement, tau: ParabolicType, exponents: np.ndarray, sys: RootSystem
) -> np.ndarray:
    """:func:`bb_twist_pseudo` for many exponent assignments over one ``tau``.

    ``exponents[k, j]`` is the exponent of ``tangent_roots(tau)[j]`` in the
    ``k``-th assignment.
    """
    lam.check(sys)
    roots = tangent_roots(tau, sys)
    exponents = np.ascontiguousarray(exponents, dtype=np.int64)
    if exponents.ndim == 1:
        exponents = exponents[None, :]
    if exponents.ndim != 2 or exponents.shape[1] != len(roots):
        raise ValidationError(f"expected an (N, {len(roots)}) exponent array, got shape {exponents.shape}")
    if (exponents < 0).any():
        raise ValidationError("exponents must be nonnegative")
    act = np.asarray(w.action)
    lw = lam.weights(sys)
    weights = np.array([lw[act[sys.index[b]]] for b in roots], dtype=np.int64)
    counts = kernels.scaled_positive_counts(exponents, weights)
    reduced = bb_twist(lam, w, tau, sys)
    bad = np.flatnonzero(counts != reduced)
    if len(bad):
        k = int(bad[0])
        raise InvariantViolation(
            "pseudo and reduced twists differ",
            {"exponents": exponents[k].tolist(), "pseudo": int(counts[k]), "reduced": reduced},
        )
    return counts


def _levi_label(sys: RootSystem, nodes: frozenset) -> tuple[LeviComponent, ...]:
    return subdiagram_components(sys, nodes)


def bb_decomposition(
    lam: Cocharacter, tau: ParabolicType, sys: RootSystem, *, anisotropic: bool = False
) -> MotiveDecomposition:
    """Decomposition of X_tau along the torus ``lam``.

    One summand per minimal double coset ``W_lam \\ W / W_{Levi(tau)}``; the
    base is the flag variety of the centraliser Levi through ``wP``.
    """
    _check_dominant(lam, sys)
    tau.check(sys)
    zero = lam.zero_nodes
    levi = tau.levi_nodes(sys)
    table = weyl_group(sys)
    idx = np.flatnonzero(table.min_double_coset_mask(zero, levi))
    perms = table.perms[idx]
    inv = table.perms[table.inverse_index[idx]]

    cols = np.array([sys.index[b] for b in tangent_roots(tau, sys)], dtype=np.int64)
    twists = kernels.count_positive_weight(perms, cols, lam.weights(sys))

    meets = np.array([bool(support(b) & tau.tau) for b in sys.roots])
    zero_sorted = sorted(zero)
    simple = sys.simple_root_indices()
    zcols = np.array([simple[i - 1] for i in zero_sorted], dtype=np.int64)
    in_tau_h = meets[inv[:, zcols]] if len(zcols) else np.zeros((len(idx), 0), dtype=bool)

    comps = _levi_label(sys, zero)
    summands = []
    for k in range(len(idx)):
        tau_h = [zero_sorted[j] for j in np.flatnonzero(in_tau_h[k])]
        summands.append(Summand(make_base(comps, tau_h, anisotropic), int(twists[k])))
    return MotiveDecomposition(tuple(summands), len(cols))


def bb_decomposition_pseudo(lam: Cocharacter, pp: PseudoParabolic, sys: RootSystem) -> MotiveDecomposition:
    """Decomposition of G/P~ computed from the exponent data.

    Fixed components are indexed through the reduced part; twists come from
    :func:`bb_twist_pseudo` and each component's type from which ``lam``-Levi
    simple roots land, up to sign, among the finite-exponent directions.
    """
    _check_dominant(lam, sys)
    validate_pseudo(pp, sys)
    red = reduced_part(pp)
    zero = lam.zero_nodes
    domain = set(pp.domain)
    table = weyl_group(sys)
    idx = np.flatnonzero(table.min_double_coset_mask(zero, red.levi_nodes(sys)))
    comps = _levi_label(sys, zero)
    summands = []
    for k in idx:
        w = table.element(int(k))
        winv = w.inverse()
        tau_h = []
        for i in sorted(zero):
            img = winv.apply(sys, sys.simple_root(i))
            if img in domain or tuple(-c for c in img) in domain:
                tau_h.append(i)
        summands.append(Summand(make_base(comps, tau_h), bb_twist_pseudo(lam, w, pp, sys)))
    return MotiveDecomposition(tuple(summands), len(pp.domain))


def indicator_cocharacter(delta: Iterable[int], sys: RootSystem) -> Cocharacter:
    delta = sys.check_nodes(delta)
    return Cocharacter(tuple(int(i in delta) for i in range(1, sys.rank + 1)))


def decompose_over_index(delta: Iterable[int], tau: ParabolicType, sys: RootSystem) -> MotiveDecomposition:
    """One BB step for an inner form whose Tits index circles ``delta``.

    Components with nontrivial ``tau_h`` are flags of the anisotropic kernel
    and are left unexpanded.
    """
    lam = indicator_cocharacter(delta, sys)
    return bb_decomposition(lam, tau, sys, anisotropic=True)


# --------------------------------------------------------------------------
# Comparison and the nilpotence bound
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class IsoReport:
    isomorphic: bool
    only_left: tuple[Summand, ...]
    only_right: tuple[Summand, ...]

    def __bool__(self):
        return self.isomorphic


def motive_iso_check(m1: MotiveDecomposition, m2: MotiveDecomposition) -> IsoReport:
    c1, c2 = Counter(m1.summands), Counter(m2.summands)
    left = tuple(sorted((c1 - c2).elements(), key=Summand.sort_key))
    right = tuple(sorted((c2 - c1).elements(), key=Summand.sort_key))
    return IsoReport(not left and not right, left, right)


def _check_int(name, v, lo):
    if isinstance(v, bool) or not isinstance(v, (int, np.integer)):
        raise ValidationError(f"{name} must be an integer, got {v!r}")
    if v < lo:
        raise ValidationError(f"{name} must be >= {lo}, got {v}")
    return int(v)


def rost_bound(d: int, n: int, n_K: int) -> int:
    """``(d + 1) ** (n_K - n)``: nilpotence exponent when the decomposition over k has n terms."""
    d = _check_int("d", d, 0)
    n = _check_int("n", n, 1)
    n_K = _check_int("n_K", n_K, 1)
    if n > n_K:
        raise ValidationError(f"n = {n} exceeds n_K = {n_K}")
    return (d + 1) ** (n_K - n)


def n_K_for(tau: ParabolicType, sys: RootSystem) -> int:
    tau.check(sys)
    return len(min_coset_reps(sys, tau.levi_nodes(sys)).reps)


def sum_formula_holds(md: MotiveDecomposition, tau: ParabolicType, sys: RootSystem) -> bool:
    return md.poincare() == poincare_polynomial(tau, sys)
