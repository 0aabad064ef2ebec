"""Exact k-subset arithmetic on [n] = {1, ..., n}.

Subsets are plain sorted tuples of 1-based elements.  Internally the solver and
the verifiers work with integer bitmasks (element ``i`` is bit ``i - 1``), which
makes disjointness a single ``&``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import DomainError

KSubset = tuple[int, ...]


@dataclass(frozen=True)
class KneserParams:
    n: int
    k: int

    def __post_init__(self):
        if self.k < 1 or self.n < self.k:
            raise DomainError(f"Kneser parameters need n >= k >= 1, got ({self.n}, {self.k})")

    @property
    def order(self) -> int:
        return comb(self.n, self.k)

    @property
    def has_edges(self) -> bool:
        return self.n >= 2 * self.k

    def __str__(self):
        return f"K({self.n},{self.k})"


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient, 0 when k > n."""
    if n < 0 or k < 0:
        raise DomainError(f"binom needs nonnegative arguments, got ({n}, {k})")
    return comb(n, k)


def ksubset(elements: Iterable[int], n: int) -> KSubset:
    """Validate and normalise a subset of [n] into a sorted tuple."""
    s = tuple(sorted(elements))
    if not s:
        raise DomainError("empty subset")
    if len(set(s)) != len(s):
        raise DomainError(f"repeated element in {s}")
    if s[0] < 1 or s[-1] > n:
        raise DomainError(f"{s} is not a subset of [1, {n}]")
    return s


def to_mask(s: Iterable[int]) -> int:
    m = 0
    for x in s:
        m |= 1 << (x - 1)
    return m


def from_mask(mask: int) -> KSubset:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def colex_rank(s: Sequence[int]) -> int:
    """0-based colexicographic rank: sum of C(s_i - 1, i) over sorted elements."""
    return sum(comb(x - 1, i) for i, x in enumerate(sorted(s), start=1))


def colex_unrank(rank: int, n: int, k: int) -> KSubset:
    if k < 1 or n < k:
        raise DomainError(f"no {k}-subsets of [{n}]")
    if not 0 <= rank < comb(n, k):
        raise DomainError(f"rank {rank} out of range for C({n},{k}) = {comb(n, k)}")
    out = []
    for i in range(k, 0, -1):
        x = i
        while comb(x, i) <= rank:
            x += 1
        out.append(x)
        rank -= comb(x - 1, i)
    return tuple(reversed(out))


@lru_cache(maxsize=128)
def _colex_subsets(n: int, k: int) -> tuple[KSubset, ...]:
    return tuple(sorted(combinations(range(1, n + 1), k), key=lambda s: s[::-1]))


def enumerate_ksubsets(n: int, k: int) -> tuple[KSubset, ...]:
    """All k-subsets of [n] in colex order (position i holds rank i)."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if k > n:
        return ()
    return _colex_subsets(n, k)


@lru_cache(maxsize=128)
def vertex_masks(n: int, k: int) -> tuple[int, ...]:
    return tuple(to_mask(s) for s in enumerate_ksubsets(n, k))


def kneser_adjacent(s: Sequence[int], t: Sequence[int], n: int | None = None) -> bool:
    """True iff the two k-subsets are disjoint."""
    if len(s) != len(t):
        raise DomainError(f"subsets of different sizes: {tuple(s)} vs {tuple(t)}")
    if n is not None:
        ksubset(s, n)
        ksubset(t, n)
    return not set(s) & set(t)


def kneser_neighbours(s: Sequence[int], n: int) -> list[KSubset]:
    """Neighbours of ``s`` in K(n, |s|), in colex order."""
    m = to_mask(s)
    return [t for t, tm in zip(enumerate_ksubsets(n, len(s)), vertex_masks(n, len(s))) if not m & tm]
