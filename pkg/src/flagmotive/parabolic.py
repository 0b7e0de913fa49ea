"""
Reduced parabolic types and non-reduced (pseudo-parabolic) data.

Convention: ``tau`` is the set of maximal-parabolic classes containing P.
``tau = {}`` is P = G (a point); ``tau = all nodes`` is the Borel. The Levi
nodes are the complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import ValidationError
from .rootsys import Root, RootSystem, support


@dataclass(frozen=True)
class ParabolicType:
    tau: frozenset[int]

    def __init__(self, tau: Iterable[int] = ()):
        object.__setattr__(self, "tau", frozenset(int(i) for i in tau))

    def check(self, sys: RootSystem) -> "ParabolicType":
        sys.check_nodes(self.tau)
        return self

    def levi_nodes(self, sys: RootSystem) -> frozenset[int]:
        return sys.nodes - self.tau

    def __repr__(self):
        return f"ParabolicType({sorted(self.tau)})"


def tangent_roots(tau: ParabolicType, sys: RootSystem) -> list[Root]:
    """Negative roots whose support meets ``tau``: the weights of the big cell."""
    tau.check(sys)
    npos = sys.npos
    return [b for b in sys.roots[npos:] if support(b) & tau.tau]


def dimension(tau: ParabolicType, sys: RootSystem) -> int:
    return len(tangent_roots(tau, sys))


@dataclass(frozen=True)
class PseudoParabolic:
    """A parabolic type plus an exponent ``n(beta)`` on each tangent root.

    A root carrying exponent ``n`` contributes the weight ``p**n * beta`` to
    the tangent space of the non-reduced quotient.
    """

    tau: ParabolicType
    exponents: tuple[tuple[Root, int], ...]

    def __init__(self, tau, exponents: Mapping[Iterable[int], int] | Iterable[tuple[Iterable[int], int]]):
        if not isinstance(tau, ParabolicType):
            tau = ParabolicType(tau)
        items = exponents.items() if isinstance(exponents, Mapping) else exponents
        pairs = []
        for root, n in items:
            pairs.append((tuple(int(c) for c in root), n))
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "exponents", tuple(sorted(pairs)))

    @property
    def exponent_map(self) -> dict[Root, int]:
        return dict(self.exponents)

    @property
    def domain(self) -> tuple[Root, ...]:
        return tuple(r for r, _ in self.exponents)

    @classmethod
    def reduced(cls, tau: ParabolicType, sys: RootSystem) -> "PseudoParabolic":
        return cls(tau, {b: 0 for b in tangent_roots(tau, sys)})


def validate_pseudo(pp: PseudoParabolic, sys: RootSystem) -> PseudoParabolic:
    pp.tau.check(sys)
    seen: dict[Root, int] = {}
    for root, n in pp.exponents:
        if len(root) != sys.rank:
            raise ValidationError(f"root {list(root)} has wrong length for {sys}")
        if root in seen:
            raise ValidationError(f"root {list(root)} given twice")
        if isinstance(n, bool) or not isinstance(n, int):
            raise ValidationError(f"exponent for root {list(root)} must be an integer, got {n!r}")
        if n < 0:
            raise ValidationError(f"negative exponent {n} on root {list(root)}")
        seen[root] = n
    expected = set(tangent_roots(pp.tau, sys))
    extra = sorted(set(seen) - expected)
    if extra:
        raise ValidationError(
            f"root {list(extra[0])} is not a tangent root for tau={sorted(pp.tau.tau)}"
        )
    missing = sorted(expected - set(seen))
    if missing:
        raise ValidationError(f"missing exponent for tangent root {list(missing[0])}")
    return pp


def reduced_part(pp: PseudoParabolic) -> ParabolicType:
    """Recover the reduced type from the finiteness pattern of the exponents.

    ``-alpha_i`` is a tangent root exactly when ``i`` is in tau.
    """
    nodes = set()
    for root in pp.domain:
        if sum(root) == -1:
            nodes |= support(root)
    return ParabolicType(nodes)
