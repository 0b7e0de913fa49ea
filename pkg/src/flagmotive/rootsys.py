"""
Root systems of finite type with exact integer arithmetic.

Roots are integer tuples in the simple-root basis. Node numbering follows
Bourbaki for every family:

    A_n   1 - 2 - ... - n
    B_n   1 - ... - (n-1) => n          (alpha_n short)
    C_n   1 - ... - (n-1) <= n          (alpha_n long)
    D_n   1 - ... - (n-2) < (n-1), n
    E_n   1 - 3 - 4 - 5 - ... - n, with 2 attached to 4
    F_4   1 - 2 => 3 - 4                (alpha_1, alpha_2 long)
    G_2   1 <= 2                        (alpha_1 short)

A semisimple system is a tuple of irreducible components whose nodes are
numbered consecutively, component after component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ValidationError

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"


@dataclass(frozen=True, order=True)
class DynkinType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if not isinstance(n, int) or isinstance(n, bool):
            raise ValidationError(f"rank must be an integer, got {n!r}")
        legal = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 3,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }
        if f not in legal:
            raise ValidationError(f"unknown Dynkin family {f!r}")
        if not legal[f]:
            raise ValidationError(f"illegal Dynkin type {f}{n}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "DynkinType":
        text = text.strip().upper()
        if len(text) < 2 or not text[1:].isdigit():
            raise ValidationError(f"cannot parse Dynkin type {text!r}")
        return cls(text[0], int(text[1:]))

    @property
    def degrees(self) -> tuple[int, ...]:
        """Degrees of the basic invariants of the Weyl group."""
        f, n = self.family, self.rank
        if f == "A":
            return tuple(range(2, n + 2))
        if f in "BC":
            return tuple(range(2, 2 * n + 1, 2))
        if f == "D":
            return tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
        return {
            ("E", 6): (2, 5, 6, 8, 9, 12),
            ("E", 7): (2, 6, 8, 10, 12, 14, 18),
            ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
            ("F", 4): (2, 6, 8, 12),
            ("G", 2): (2, 6),
        }[(f, n)]

    @property
    def num_positive_roots(self) -> int:
        """Closed-form count, independent of root generation."""
        f, n = self.family, self.rank
        if f == "A":
            return n * (n + 1) // 2
        if f in "BC":
            return n * n
        if f == "D":
            return n * (n - 1)
        return {("E", 6): 36, ("E", 7): 63, ("E", 8): 120, ("F", 4): 24, ("G", 2): 6}[(f, n)]

    @property
    def weyl_order(self) -> int:
        out = 1
        for d in self.degrees:
            out *= d
        return out


def _bilinear_form(t: DynkinType) -> list[list[int]]:
    """Symmetric Gram matrix of the simple roots, scaled to integers."""
    n = t.rank
    g = [[0] * n for _ in range(n)]
    edges: list[tuple[int, int]] = []
    lengths = [2] * n
    if t.family in "ABC":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif t.family == "D":
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    elif t.family == "E":
        edges = [(0, 2), (2, 3), (1, 3)] + [(i, i + 1) for i in range(3, n - 1)]
    elif t.family == "F":
        edges = [(0, 1), (1, 2), (2, 3)]
    elif t.family == "G":
        edges = [(0, 1)]

    if t.family == "B":
        lengths = [2] * (n - 1) + [1]
    elif t.family == "C":
        lengths = [2] * (n - 1) + [4]
    elif t.family == "F":
        lengths = [4, 4, 2, 2]
    elif t.family == "G":
        lengths = [2, 6]

    for i in range(n):
        g[i][i] = lengths[i]
    for i, j in edges:
        # (a_i, a_j) = -max(|a_i|^2, |a_j|^2) / 2 on every edge
        v = -max(lengths[i], lengths[j]) // 2
        g[i][j] = g[j][i] = v
    return g


def _block_diag(blocks: Sequence[list[list[int]]]) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Finite crystallographic root system.

    ``cartan[i][j] = <alpha_i^vee, alpha_j> = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``,
    so the simple reflection is ``s_i(beta) = beta - (sum_j cartan[i][j] beta_j) alpha_i``.

    ``roots`` lists positive roots (by height, then lexicographically) followed
    by their negatives in the same order; ``index`` inverts it.
    """

    components: tuple[DynkinType, ...]
    cartan: tuple[tuple[int, ...], ...]
    gram: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    roots: tuple[Root, ...] = field(repr=False)
    index: dict = field(repr=False)
    reflection_perms: np.ndarray = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, RootSystem) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "x".join(str(c) for c in self.components) or "trivial"

    @property
    def dynkin(self) -> DynkinType:
        if len(self.components) != 1:
            raise ValidationError(f"{self} is not irreducible")
        return self.components[0]

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def nodes(self) -> frozenset[int]:
        return frozenset(range(1, self.rank + 1))

    @property
    def npos(self) -> int:
        return len(self.positive_roots)

    @property
    def weyl_order(self) -> int:
        out = 1
        for c in self.components:
            out *= c.weyl_order
        return out

    def simple_root(self, i: int) -> Root:
        self.check_nodes([i])
        return tuple(int(k == i - 1) for k in range(self.rank))

    def simple_root_indices(self) -> np.ndarray:
        return self._simple_indices

    @cached_property
    def _simple_indices(self) -> np.ndarray:
        out = np.array([self.index[self.simple_root(i)] for i in range(1, self.rank + 1)], dtype=np.int64)
        out.flags.writeable = False
        return out

    def reflect(self, i: int, beta: Sequence[int]) -> Root:
        """Apply the simple reflection ``s_i`` (1-based node) to ``beta``."""
        row = self.cartan[i - 1]
        c = sum(row[j] * beta[j] for j in range(self.rank))
        out = list(beta)
        out[i - 1] -= c
        return tuple(out)

    def inner(self, a: Sequence[int], b: Sequence[int]) -> int:
        g = self.gram
        n = self.rank
        return sum(a[i] * g[i][j] * b[j] for i in range(n) for j in range(n))

    def is_root(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self.index

    def check_root(self, beta: Sequence[int]) -> Root:
        beta = tuple(int(x) for x in beta)
        if beta not in self.index:
            raise ValidationError(f"{list(beta)} is not a root of {self}")
        return beta

    def check_nodes(self, nodes: Iterable[int]) -> frozenset[int]:
        out = frozenset(nodes)
        bad = sorted(i for i in out if not (isinstance(i, int) and 1 <= i <= self.rank))
        if bad:
            raise ValidationError(f"node indices {bad} out of range 1..{self.rank} for {self}")
        return out

    def component_offsets(self) -> list[int]:
        offs, off = [], 0
        for c in self.components:
            offs.append(off)
            off += c.rank
        return offs


def support(beta: Sequence[int]) -> frozenset[int]:
    """1-based nodes with nonzero coefficient."""
    return frozenset(i + 1 for i, c in enumerate(beta) if c != 0)


def _generate_positive_roots(cartan, rank) -> list[Root]:
    # Orbit of the simple roots under simple reflections.
    def refl(i, beta):
        c = sum(cartan[i][j] * beta[j] for j in range(rank))
        out = list(beta)
        out[i] -= c
        return tuple(out)

    simple = [tuple(int(k == i) for k in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(rank):
                gamma = refl(i, beta)
                if gamma not in seen:
                    seen.add(gamma)
                    nxt.append(gamma)
        frontier = nxt
    pos = [b for b in seen if all(c >= 0 for c in b)]
    pos.sort(key=lambda b: (sum(b), tuple(-c for c in b)))
    return pos


def _from_components(components: tuple[DynkinType, ...]) -> RootSystem:
    gram = _block_diag([_bilinear_form(c) for c in components])
    n = len(gram)
    cartan = [[2 * gram[i][j] // gram[i][i] for j in range(n)] for i in range(n)]
    pos = _generate_positive_roots(cartan, n)
    roots = tuple(pos) + tuple(tuple(-c for c in b) for b in pos)
    index = {b: k for k, b in enumerate(roots)}
    perms = np.empty((n, len(roots)), dtype=np.int32)
    for i in range(n):
        for k, b in enumerate(roots):
            c = sum(cartan[i][j] * b[j] for j in range(n))
            img = list(b)
            img[i] -= c
            perms[i, k] = index[tuple(img)]
    perms.flags.writeable = False
    return RootSystem(
        components=components,
        cartan=tuple(tuple(r) for r in cartan),
        gram=tuple(tuple(r) for r in gram),
        positive_roots=tuple(pos),
        roots=roots,
        index=index,
        reflection_perms=perms,
    )


DynkinLike = Union[DynkinType, str, Sequence[Union[DynkinType, str]]]


def as_components(dynkin: DynkinLike) -> tuple[DynkinType, ...]:
    if isinstance(dynkin, DynkinType):
        return (dynkin,)
    if isinstance(dynkin, str):
        return tuple(DynkinType.parse(p) for p in dynkin.replace("*", "x").split("x") if p.strip())
    return tuple(c if isinstance(c, DynkinType) else DynkinType.parse(c) for c in dynkin)


def build_root_system(dynkin: DynkinLike) -> RootSystem:
    """Root system of a Dynkin type, a type string like ``"B3"`` or ``"A1xA2"``,
    or a sequence of irreducible components."""
    comps = as_components(dynkin)
    return _build_cached(comps)


@lru_cache(maxsize=None)
def _build_cached(comps: tuple[DynkinType, ...]) -> RootSystem:
    return _from_components(comps)


@dataclass(frozen=True)
class Cocharacter:
    """Pairings ``<lambda, alpha_i>`` against the simple roots."""

    pairings: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.pairings)
        if not all(isinstance(v, (int, np.integer)) and not isinstance(v, bool) for v in vals):
            raise ValidationError(f"cocharacter pairings must be integers, got {list(vals)}")
        object.__setattr__(self, "pairings", tuple(int(v) for v in vals))

    @property
    def is_dominant(self) -> bool:
        return all(v >= 0 for v in self.pairings)

    @property
    def zero_nodes(self) -> frozenset[int]:
        return frozenset(i + 1 for i, v in enumerate(self.pairings) if v == 0)

    def check(self, sys: RootSystem) -> "Cocharacter":
        if len(self.pairings) != sys.rank:
            raise ValidationError(
                f"cocharacter has {len(self.pairings)} pairings, {sys} has rank {sys.rank}"
            )
        return self

    def weights(self, sys: RootSystem) -> np.ndarray:
        """Pairing against every root of ``sys``, in ``sys.roots`` order."""
        self.check(sys)
        r = np.asarray(sys.roots, dtype=np.int64).reshape(len(sys.roots), sys.rank)
        return r @ np.asarray(self.pairings, dtype=np.int64)


def pairing(lam: Cocharacter, beta: Sequence[int], sys: RootSystem) -> int:
    lam.check(sys)
    beta = sys.check_root(beta)
    return sum(c * p for c, p in zip(beta, lam.pairings))


# --------------------------------------------------------------------------
# Identification of sub-diagrams
# --------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class LeviComponent:
    """An irreducible piece of a sub-diagram, with its nodes listed in Bourbaki order."""

    dynkin: DynkinType
    nodes: tuple[int, ...]


def _classify_connected(nodes: list[int], sys: RootSystem) -> LeviComponent:
    c = sys.cartan
    adj = {v: [u for u in nodes if u != v and c[v - 1][u - 1] != 0] for v in nodes}
    length = {v: sys.gram[v - 1][v - 1] for v in nodes}
    n = len(nodes)
    if n == 1:
        return LeviComponent(DynkinType("A", 1), (nodes[0],))

    def bond(u, v):
        return c[u - 1][v - 1] * c[v - 1][u - 1]

    def walk(start, avoid=()):
        path, prev, cur = [start], None, start
        while True:
            nxt = [u for u in adj[cur] if u != prev and u not in avoid]
            if not nxt:
                return path
            prev, cur = cur, nxt[0]
            path.append(cur)

    branch = [v for v in nodes if len(adj[v]) == 3]
    multi = [(u, v) for u in nodes for v in adj[u] if u < v and bond(u, v) > 1]

    if branch:
        b = branch[0]
        arms = sorted((walk(u, avoid=(b,)) for u in adj[b]), key=lambda a: (len(a), a))
        lens = tuple(len(a) for a in arms)
        if lens == (1, 1, 1):
            # D4: triality makes the choice free; smallest leaf is alpha_1
            order = [arms[0][0], b, arms[1][0], arms[2][0]]
            out = LeviComponent(DynkinType("D", 4), tuple(order))
        elif lens[:2] == (1, 1):
            # D_n: long arm runs from alpha_1 to the branch node
            long_arm = arms[2][::-1]
            order = long_arm + [b, arms[0][0], arms[1][0]]
            out = LeviComponent(DynkinType("D", n), tuple(order))
        elif lens[0] == 1 and lens[1] == 2:
            a2 = arms[0][0]
            a1, a3 = arms[1][1], arms[1][0]
            order = [a1, a2, a3, b] + arms[2]
            out = LeviComponent(DynkinType("E", n), tuple(order))
        else:  # pragma: no cover
            raise ValidationError(f"sub-diagram on nodes {nodes} is not of finite type")
    else:
        ends = sorted(v for v in nodes if len(adj[v]) == 1)
        if not multi:
            out = LeviComponent(DynkinType("A", n), tuple(walk(ends[0])))
        else:
            u, v = multi[0]
            m = bond(u, v)
            if m == 3:
                short, long_ = (u, v) if length[u] < length[v] else (v, u)
                out = LeviComponent(DynkinType("G", 2), (short, long_))
            elif n == 2:
                long_, short = (u, v) if length[u] > length[v] else (v, u)
                out = LeviComponent(DynkinType("B", 2), (long_, short))
            elif len(adj[u]) == 2 and len(adj[v]) == 2:
                # F4: start from the long end
                start = max(ends, key=lambda e: (length[e], -e))
                out = LeviComponent(DynkinType("F", 4), tuple(walk(start)))
            else:
                end = u if len(adj[u]) == 1 else v
                other = v if end == u else u
                order = walk([e for e in ends if e != end][0])
                fam = "B" if length[end] < length[other] else "C"
                out = LeviComponent(DynkinType(fam, n), tuple(order))

    # Sanity: reindexed Cartan matrix must equal the standard one.
    std = build_root_system(out.dynkin).cartan
    for i, a in enumerate(out.nodes):
        for j, b in enumerate(out.nodes):
            if c[a - 1][b - 1] != std[i][j]:  # pragma: no cover
                raise ValidationError(f"misidentified sub-diagram on nodes {nodes}")
    return out


def subdiagram_components(sys: RootSystem, nodes: Iterable[int]) -> tuple[LeviComponent, ...]:
    """Split a node subset into connected components and identify each one's type."""
    nodes = sorted(sys.check_nodes(nodes))
    left = set(nodes)
    out = []
    while left:
        start = min(left)
        comp, stack = {start}, [start]
        while stack:
            v = stack.pop()
            for u in left:
                if u not in comp and sys.cartan[v - 1][u - 1] != 0:
                    comp.add(u)
                    stack.append(u)
        left -= comp
        out.append(_classify_connected(sorted(comp), sys))
    return tuple(sorted(out, key=lambda lc: (lc.dynkin, lc.nodes)))
