"""Stahl's map K(n,k) -> K(n-2,k-1), its iterates, and homomorphism checks."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

from .combinatorics import (
    KneserParams,
    KSubset,
    colex_rank,
    enumerate_ksubsets,
    ksubset,
    to_mask,
    vertex_masks,
)
from .errors import DomainError


@dataclass(frozen=True)
class VertexMap:
    """A map between Kneser graphs; ``images[i]`` is the image of the source vertex of colex rank i."""

    source: KneserParams
    target: KneserParams
    images: tuple[KSubset, ...]

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise DomainError(
                f"map from {self.source} needs {self.source.order} images, got {len(self.images)}"
            )
        for img in self.images:
            if len(img) != self.target.k:
                raise DomainError(f"image {img} is not a vertex of {self.target}")
            ksubset(img, self.target.n)

    def __call__(self, s: Sequence[int]) -> KSubset:
        return self.images[colex_rank(s)]

    def to_json(self) -> dict:
        return {
            "source": {"n": self.source.n, "k": self.source.k},
            "target": {"n": self.target.n, "k": self.target.k},
            "images": [list(img) for img in self.images],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "VertexMap":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            KneserParams(data["source"]["n"], data["source"]["k"]),
            KneserParams(data["target"]["n"], data["target"]["k"]),
            tuple(tuple(sorted(img)) for img in data["images"]),
        )

    @classmethod
    def from_function(cls, source: KneserParams, target: KneserParams,
                      f: Callable[[KSubset], Sequence[int]]) -> "VertexMap":
        return cls(source, target, tuple(tuple(sorted(f(s))) for s in enumerate_ksubsets(source.n, source.k)))


@dataclass(frozen=True)
class HomVerdict:
    ok: bool
    edge: tuple[KSubset, KSubset] | None = None

    def __bool__(self):
        return self.ok


def stahl_phi(s: Sequence[int], n: int, k: int) -> KSubset:
    """Image of the k-set ``s`` under Stahl's homomorphism K(n,k) -> K(n-2,k-1).

    Drop the maximum, unless both n-1 and n are in ``s``; then replace that
    pair by the largest element missing from ``s``.
    """
    if k < 2 or n < 3:
        raise DomainError(f"stahl_phi needs n >= 3 and k >= 2, got ({n}, {k})")
    if n < k + 1:
        raise DomainError(f"K({n - 2},{k - 1}) has no vertices")
    s = ksubset(s, n)
    if len(s) != k:
        raise DomainError(f"{s} is not a {k}-subset")
    if n - 1 in s and n in s:
        x = max(set(range(1, n + 1)) - set(s))
        return tuple(sorted(s[:-2] + (x,)))
    return s[:-1]


def iterate_phi(s: Sequence[int], n: int, k: int, r: int) -> KSubset:
    """r-fold application of :func:`stahl_phi`, landing in K(n-2r, k-r)."""
    if r < 0 or r >= k:
        raise DomainError(f"need 0 <= r <= k-1, got r={r}, k={k}")
    s = ksubset(s, n)
    for i in range(r):
        s = stahl_phi(s, n - 2 * i, k - i)
    return s


def phi_map(n: int, k: int, r: int = 1) -> VertexMap:
    """The iterate of Stahl's map as an explicit :class:`VertexMap`."""
    return VertexMap.from_function(
        KneserParams(n, k), KneserParams(n - 2 * r, k - r), lambda s: iterate_phi(s, n, k, r)
    )


def verify_homomorphism(vmap: VertexMap) -> HomVerdict:
    """Check every edge of the source; report the first violation in colex pair order.

    Pairs (i, j), i < j, are visited by increasing j and then increasing i.
    """
    src = vertex_masks(vmap.source.n, vmap.source.k)
    img = [to_mask(t) for t in vmap.images]
    for j in range(len(src)):
        sj, ij = src[j], img[j]
        for i in range(j):
            if not src[i] & sj and img[i] & ij:
                subsets = enumerate_ksubsets(vmap.source.n, vmap.source.k)
                return HomVerdict(False, (subsets[i], subsets[j]))
    return HomVerdict(True)


def bipartite_collapse(n: int, k: int, target_n: int, target_k: int,
                       target_edge: tuple[Sequence[int], Sequence[int]] | None = None) -> VertexMap:
    """Map the bipartite K(2k,k) onto one edge of K(target_n, target_k).

    Vertices containing 1 go to the first endpoint, the rest to the second.
    The default edge is ({1..k'}, {k'+1..2k'}).
    """
    if n != 2 * k:
        raise DomainError(f"bipartite collapse needs n = 2k, got ({n}, {k})")
    target = KneserParams(target_n, target_k)
    if target_edge is None:
        if not target.has_edges:
            raise DomainError(f"{target} has no edges")
        target_edge = (tuple(range(1, target_k + 1)), tuple(range(target_k + 1, 2 * target_k + 1)))
    a, b = (ksubset(v, target_n) for v in target_edge)
    if len(a) != target_k or len(b) != target_k or set(a) & set(b):
        raise DomainError(f"{a}, {b} is not an edge of {target}")
    return VertexMap.from_function(KneserParams(n, k), target, lambda s: a if 1 in s else b)
