"""Multi-indices over Z_{>=0}^n.

A :class:`MultiIndex` is an immutable tuple of non-negative integers.  Every
enumeration in the package uses graded lexicographic order: lower total
degree first, and within one degree the larger leading exponent first, e.g.
``(2,0), (1,1), (0,2)``.
"""
from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Iterable, List


class MultiIndex(tuple):
    """Exponent vector ``alpha = (alpha_1, ..., alpha_n)``."""

    __slots__ = ()

    def __new__(cls, entries: Iterable[int]):
        if isinstance(entries, MultiIndex):
            return entries
        vals = tuple(entries)
        for v in vals:
            if isinstance(v, bool) or int(v) != v or v < 0:
                raise ValueError(f"multi-index entries must be non-negative integers, got {vals!r}")
        if not vals:
            raise ValueError("multi-index must have dimension >= 1")
        return super().__new__(cls, (int(v) for v in vals))

    @property
    def dim(self) -> int:
        return len(self)

    def __add__(self, other):
        _check_dims(self, other)
        return MultiIndex(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return sub(self, other)

    def __repr__(self):
        return f"MultiIndex({list(self)})"

    @classmethod
    def zero(cls, n: int) -> "MultiIndex":
        return cls((0,) * n)

    @classmethod
    def unit(cls, n: int, j: int, k: int = 1) -> "MultiIndex":
        e = [0] * n
        e[j] = k
        return cls(e)


def _check_dims(a, b):
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")


def degree(alpha) -> int:
    return sum(alpha)


def factorial(alpha) -> int:
    """Exact product of component factorials."""
    out = 1
    for a in alpha:
        out *= math.factorial(a)
    return out


def leq(beta, alpha) -> bool:
    _check_dims(beta, alpha)
    return all(b <= a for a, b in zip(alpha, beta))


def sub(alpha, beta) -> MultiIndex:
    """Componentwise ``alpha - beta``; requires ``beta <= alpha``."""
    if not leq(beta, alpha):
        raise ValueError(f"cannot subtract {tuple(beta)} from {tuple(alpha)}: not componentwise <=")
    return MultiIndex(a - b for a, b in zip(alpha, beta))


def binomial(alpha, beta) -> int:
    """Multi-binomial ``alpha! / (beta! (alpha-beta)!)``, exact."""
    if not leq(beta, alpha):
        return 0
    out = 1
    for a, b in zip(alpha, beta):
        out *= math.comb(a, b)
    return out


def graded_key(alpha):
    """Sort key realising graded lexicographic order."""
    return (sum(alpha), tuple(-a for a in alpha))


@lru_cache(maxsize=None)
def _degree_tuples(n: int, k: int):
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in _degree_tuples(n - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_degree(n: int, k: int) -> List[MultiIndex]:
    """All multi-indices of dimension ``n`` and total degree ``k``."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return [MultiIndex(t) for t in _degree_tuples(n, k)]


def enumerate_upto(n: int, k: int) -> List[MultiIndex]:
    """All multi-indices with ``|alpha| <= k``, graded order."""
    out: List[MultiIndex] = []
    for d in range(k + 1):
        out.extend(enumerate_degree(n, d))
    return out


def enumerate_below(alpha) -> List[MultiIndex]:
    """All ``beta <= alpha`` componentwise, graded order."""
    alpha = MultiIndex(alpha)
    box = itertools.product(*(range(a + 1) for a in alpha))
    return [MultiIndex(b) for b in sorted(box, key=graded_key)]
