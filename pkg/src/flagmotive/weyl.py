"""
Weyl group enumeration by breadth-first search over root permutations.

Elements are identified by their action on the root set; the canonical key
is the image of the simple roots. BFS depth is the length.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from ._kernels import kernels
from .errors import ResourceError, ValidationError
from .rootsys import Cocharacter, RootSystem

DEFAULT_CAP = 10**6
_cap_override: Optional[int] = None


def default_cap() -> int:
    """Explicit override, then MOTIVE_WEYL_CAP, then 10**6."""
    if _cap_override is not None:
        return _cap_override
    raw = os.environ.get("MOTIVE_WEYL_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValidationError(f"MOTIVE_WEYL_CAP must be an integer, got {raw!r}") from None


@contextmanager
def cap_override(cap: Optional[int]):
    global _cap_override
    saved = _cap_override
    if cap is not None:
        _cap_override = cap
    try:
        yield
    finally:
        _cap_override = saved


@dataclass(frozen=True, eq=False)
class WeylElement:
    """A Weyl group element: a reduced word plus its permutation of ``sys.roots``.

    ``word = (i1, i2, ...)`` means ``s_i1 s_i2 ...``. Equality is by action.
    """

    word: tuple[int, ...]
    action: tuple[int, ...] = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.action == other.action

    def __hash__(self):
        return hash(self.action)

    @property
    def length(self) -> int:
        return len(self.word)

    def apply(self, sys: RootSystem, beta) -> tuple[int, ...]:
        return sys.roots[self.action[sys.index[tuple(beta)]]]

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.action)
        for k, v in enumerate(self.action):
            inv[v] = k
        return WeylElement(self.word[::-1], tuple(inv))


class WeylGroup:
    """Immutable table of all elements of W, in BFS order (so lengths are sorted)."""

    def __init__(self, sys: RootSystem, perms: np.ndarray, lengths: np.ndarray, words: list):
        self.sys = sys
        self.perms = perms
        self.lengths = lengths
        self.words = words
        self._key = {self._keyof(p): k for k, p in enumerate(perms)}
        inv = np.argsort(perms, axis=1).astype(np.int32)
        self.inverse_index = np.array([self._key[self._keyof(p)] for p in inv], dtype=np.int64)
        for a in (self.perms, self.lengths, self.inverse_index):
            a.flags.writeable = False

    def _keyof(self, perm) -> bytes:
        return np.ascontiguousarray(perm[self.sys.simple_root_indices()]).tobytes()

    def __len__(self):
        return len(self.words)

    def element(self, k: int) -> WeylElement:
        return WeylElement(self.words[k], tuple(int(x) for x in self.perms[k]))

    def index_of(self, w: WeylElement) -> int:
        return self._key[self._keyof(np.asarray(w.action, dtype=np.int32))]

    def from_word(self, word: Iterable[int]) -> WeylElement:
        sys = self.sys
        perm = np.arange(len(sys.roots), dtype=np.int32)
        for i in reversed(list(word)):
            sys.check_nodes([i])
            perm = sys.reflection_perms[i - 1][perm]
        k = self._key[self._keyof(perm)]
        return self.element(k)

    def stabilizer_cols(self, nodes: Iterable[int]) -> np.ndarray:
        simple = self.sys.simple_root_indices()
        return np.array(sorted(int(simple[i - 1]) for i in nodes), dtype=np.int64)

    def min_coset_mask(self, nodes: Iterable[int]) -> np.ndarray:
        """``w(alpha_j) > 0`` for every ``j`` in ``nodes``."""
        cols = self.stabilizer_cols(self.sys.check_nodes(nodes))
        return kernels.all_positive(self.perms, cols, self.sys.npos)

    def min_double_coset_mask(self, left: Iterable[int], right: Iterable[int]) -> np.ndarray:
        right_ok = self.min_coset_mask(right)
        left_ok = self.min_coset_mask(left)
        return right_ok & left_ok[self.inverse_index]


def _bfs(sys: RootSystem, cap: int) -> WeylGroup:
    n_roots = len(sys.roots)
    simple = sys.simple_root_indices()
    gens = np.ascontiguousarray(sys.reflection_perms, dtype=np.int32)
    ident = np.arange(n_roots, dtype=np.int32)[None, :]
    rows = [ident]
    words = [()]
    lengths = [0]
    seen = {ident[0][simple].tobytes()}
    frontier, frontier_words = ident, [()]
    depth = 0
    while len(frontier):
        depth += 1
        cand = kernels.compose_left(gens, frontier)
        new_rows, new_words = [], []
        n_gens = gens.shape[0]
        keys = np.ascontiguousarray(cand[:, simple])
        for r in range(cand.shape[0]):
            key = keys[r].tobytes()
            if key in seen:
                continue
            seen.add(key)
            new_rows.append(r)
            new_words.append((r % n_gens + 1,) + frontier_words[r // n_gens])
        if len(seen) > cap:
            raise ResourceError(f"Weyl group of {sys} exceeds enumeration cap {cap}")
        frontier = cand[new_rows] if new_rows else cand[:0]
        frontier_words = new_words
        if new_rows:
            rows.append(frontier)
            words.extend(new_words)
            lengths.extend([depth] * len(new_rows))
    perms = np.ascontiguousarray(np.concatenate(rows), dtype=np.int32)
    return WeylGroup(sys, perms, np.asarray(lengths, dtype=np.int64), words)


_TABLES: dict = {}


def check_cap(sys: RootSystem, cap: Optional[int] = None) -> int:
    """Raise ResourceError if |W| exceeds the cap; enforced even for cached work."""
    cap = default_cap() if cap is None else cap
    if sys.weyl_order > cap:
        raise ResourceError(
            f"|W({sys})| = {sys.weyl_order} exceeds enumeration cap {cap}",
        )
    return cap


def weyl_group(sys: RootSystem, cap: Optional[int] = None) -> WeylGroup:
    """Cached full table; raises ResourceError before searching if |W| > cap."""
    cap = check_cap(sys, cap)
    table = _TABLES.get(sys.components)
    if table is None:
        table = _TABLES[sys.components] = _bfs(sys, cap)
    return table


def enumerate_weyl(sys: RootSystem, cap: Optional[int] = None) -> list[WeylElement]:
    table = weyl_group(sys, cap)
    return [table.element(k) for k in range(len(table))]


@dataclass(frozen=True)
class CosetSystem:
    stabilizer_nodes: frozenset[int]
    reps: tuple[WeylElement, ...]


def min_coset_reps(sys: RootSystem, stabilizer_nodes: Iterable[int], cap: Optional[int] = None) -> CosetSystem:
    nodes = sys.check_nodes(stabilizer_nodes)
    table = weyl_group(sys, cap)
    idx = np.flatnonzero(table.min_coset_mask(nodes))
    return CosetSystem(nodes, tuple(table.element(int(k)) for k in idx))


def min_double_coset_reps(
    sys: RootSystem, left_nodes: Iterable[int], right_nodes: Iterable[int], cap: Optional[int] = None
) -> list[WeylElement]:
    """Minimal representatives of ``W_left \\ W / W_right``."""
    left = sys.check_nodes(left_nodes)
    right = sys.check_nodes(right_nodes)
    table = weyl_group(sys, cap)
    idx = np.flatnonzero(table.min_double_coset_mask(left, right))
    return [table.element(int(k)) for k in idx]


def dominant_conjugate(lam: Cocharacter, sys: RootSystem) -> tuple[Cocharacter, tuple[int, ...]]:
    """Conjugate ``lam`` into the dominant chamber.

    Returns the dominant cocharacter and a word ``(i1, ..., ik)`` with
    ``dominant = s_i1 ... s_ik . lam``.
    """
    lam.check(sys)
    vals = list(lam.pairings)
    word: list[int] = []
    c = sys.cartan
    while True:
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            break
        i = neg[0]
        # <s_i lam, alpha_j> = <lam, s_i alpha_j> = lam_j - cartan[i][j] lam_i
        li = vals[i]
        vals = [vals[j] - c[i][j] * li for j in range(len(vals))]
        word.insert(0, i + 1)
    return Cocharacter(tuple(vals)), tuple(word)
