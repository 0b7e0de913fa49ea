"""Integer polynomials in one variable as coefficient tuples, lowest degree first."""

from __future__ import annotations

from typing import Iterable, Sequence

Poly = tuple[int, ...]


def trim(p: Iterable[int]) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p) if p else (0,)


def add(a: Sequence[int], b: Sequence[int]) -> Poly:
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def mul(a: Sequence[int], b: Sequence[int]) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def shift(a: Sequence[int], k: int) -> Poly:
    """Multiply by ``t**k``."""
    return trim((0,) * k + tuple(a))


def from_degrees(degrees: Iterable[int]) -> Poly:
    """``sum_d t**d`` over a multiset of degrees."""
    degrees = list(degrees)
    if not degrees:
        return (0,)
    out = [0] * (max(degrees) + 1)
    for d in degrees:
        out[d] += 1
    return tuple(out)


def q_integer(d: int) -> Poly:
    """``(t**d - 1) / (t - 1) = 1 + t + ... + t**(d-1)``."""
    return (1,) * d


def weyl_product(degrees: Iterable[int]) -> Poly:
    out: Poly = (1,)
    for d in degrees:
        out = mul(out, q_integer(d))
    return out


def is_palindromic(p: Sequence[int]) -> bool:
    return tuple(p) == tuple(p)[::-1]


def render(p: Sequence[int], var: str = "t") -> str:
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        else:
            terms.append(f"{c}{mono}")
    return " + ".join(terms) or "0"
