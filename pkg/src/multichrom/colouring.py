"""Multi-colourings of Kneser graphs: verification, combination, pull-backs.

A multi-colouring gives every vertex of K(n,k) a set of ``k_per_vertex``
colours from ``1..n_colours``; it is proper when adjacent (disjoint) vertices
get disjoint colour sets.  Classes are indexed by colex rank and stored sorted.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .combinatorics import KneserParams, KSubset, colex_rank, enumerate_ksubsets, to_mask, vertex_masks
from .errors import DomainError, InvalidColouring
from .homomorphism import VertexMap, iterate_phi, stahl_phi, verify_homomorphism


@dataclass(frozen=True)
class Decomposition:
    k_prime: int
    q: int
    r: int


def decompose(k_prime: int, k: int) -> Decomposition:
    """Write k' = q*k - r with q = ceil(k'/k) and 0 <= r <= k-1."""
    if k_prime < 1 or k < 1:
        raise DomainError(f"need k' >= 1 and k >= 1, got ({k_prime}, {k})")
    q = -(-k_prime // k)
    return Decomposition(k_prime, q, q * k - k_prime)


@dataclass(frozen=True)
class MultiColouring:
    graph: KneserParams
    n_colours: int
    k_per_vertex: int
    classes: tuple[tuple[int, ...], ...]

    def check_structure(self) -> None:
        """Raise :class:`InvalidColouring` unless every class is a valid k'-subset of the palette."""
        if self.n_colours < 1 or self.k_per_vertex < 1:
            raise InvalidColouring("palette size and colours per vertex must be positive")
        if len(self.classes) != self.graph.order:
            raise InvalidColouring(
                f"{self.graph} has {self.graph.order} vertices but {len(self.classes)} classes were given"
            )
        for rank, cls in enumerate(self.classes):
            if len(cls) != self.k_per_vertex:
                raise InvalidColouring(f"vertex {rank} has {len(cls)} colours, expected {self.k_per_vertex}")
            if list(cls) != sorted(set(cls)):
                raise InvalidColouring(f"vertex {rank} colours {cls} not strictly increasing")
            if cls[0] < 1 or cls[-1] > self.n_colours:
                raise InvalidColouring(f"vertex {rank} uses a colour outside 1..{self.n_colours}")

    def colour_of(self, s: Sequence[int]) -> tuple[int, ...]:
        return self.classes[colex_rank(s)]

    def to_json(self) -> dict:
        return {
            "graph": {"n": self.graph.n, "k": self.graph.k},
            "n_colours": self.n_colours,
            "k_per_vertex": self.k_per_vertex,
            "classes": [list(c) for c in self.classes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict | str) -> "MultiColouring":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            graph = KneserParams(int(data["graph"]["n"]), int(data["graph"]["k"]))
            return cls(
                graph,
                int(data["n_colours"]),
                int(data["k_per_vertex"]),
                tuple(tuple(int(x) for x in c) for c in data["classes"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidColouring(f"malformed colouring certificate: {exc}") from exc


@dataclass(frozen=True)
class ColouringVerdict:
    proper: bool
    edge: tuple[KSubset, KSubset] | None = None
    colour: int | None = None

    def __bool__(self):
        return self.proper


def verify_colouring(c: MultiColouring) -> ColouringVerdict:
    """Check properness; on failure report the first bad edge (colex pair order) and the smallest shared colour."""
    c.check_structure()
    src = vertex_masks(c.graph.n, c.graph.k)
    cols = [to_mask(cl) for cl in c.classes]
    for j in range(len(src)):
        sj, cj = src[j], cols[j]
        for i in range(j):
            if not src[i] & sj and cols[i] & cj:
                shared = cols[i] & cj
                subsets = enumerate_ksubsets(c.graph.n, c.graph.k)
                return ColouringVerdict(False, (subsets[i], subsets[j]), (shared & -shared).bit_length())
    return ColouringVerdict(True)


def identity_colouring(n: int, k: int) -> MultiColouring:
    """Colour every vertex of K(n,k) by its own element set."""
    g = KneserParams(n, k)
    return MultiColouring(g, n, k, enumerate_ksubsets(n, k))


def combine(c1: MultiColouring, c2: MultiColouring) -> MultiColouring:
    """Per-vertex union, with c2's palette shifted above c1's."""
    if c1.graph != c2.graph:
        raise DomainError(f"cannot combine colourings of {c1.graph} and {c2.graph}")
    shift = c1.n_colours
    classes = tuple(a + tuple(x + shift for x in b) for a, b in zip(c1.classes, c2.classes))
    return MultiColouring(c1.graph, c1.n_colours + c2.n_colours, c1.k_per_vertex + c2.k_per_vertex, classes)


def pullback(c: MultiColouring, vmap: VertexMap) -> MultiColouring:
    """Colour each source vertex with the colour set of its image."""
    if c.graph != vmap.target:
        raise DomainError(f"colouring is on {c.graph} but the map lands in {vmap.target}")
    verdict = verify_homomorphism(vmap)
    if not verdict:
        raise DomainError(f"map is not a homomorphism: edge {verdict.edge} is not preserved")
    classes = tuple(c.colour_of(img) for img in vmap.images)
    return MultiColouring(vmap.source, c.n_colours, c.k_per_vertex, classes)


def construct_stahl_colouring(n: int, k: int, q: int, r: int) -> MultiColouring:
    """The (qn-2r, qk-r)-colouring of K(n,k).

    q-1 copies of the identity colouring, followed by the identity colouring of
    K(n-2r, k-r) pulled back along the r-th iterate of Stahl's map.
    """
    if k < 1 or n < 2 * k:
        raise DomainError(f"need n >= 2k >= 2, got ({n}, {k})")
    if q < 1 or not 0 <= r <= k - 1:
        raise DomainError(f"need q >= 1 and 0 <= r <= k-1, got q={q}, r={r}")
    g = KneserParams(n, k)
    base = identity_colouring(n - 2 * r, k - r)
    last = MultiColouring(
        g, base.n_colours, base.k_per_vertex,
        tuple(base.colour_of(iterate_phi(s, n, k, r)) for s in enumerate_ksubsets(n, k)),
    )
    if q == 1:
        return last
    ident = identity_colouring(n, k)
    out = ident
    for _ in range(q - 2):
        out = combine(out, ident)
    return combine(out, last)


def stahl_reduce(c: MultiColouring) -> MultiColouring:
    """Turn an (n', k')-colouring into an (n'-2, k'-1)-colouring by applying Stahl's map to every class."""
    if c.k_per_vertex < 2 or c.n_colours < max(3, c.k_per_vertex + 1):
        raise DomainError(
            f"cannot reduce an ({c.n_colours},{c.k_per_vertex})-colouring: need k' >= 2 and n' >= max(3, k'+1)"
        )
    classes = tuple(stahl_phi(cl, c.n_colours, c.k_per_vertex) for cl in c.classes)
    return MultiColouring(c.graph, c.n_colours - 2, c.k_per_vertex - 1, classes)


def colour_classes(c: MultiColouring) -> dict[int, list[KSubset]]:
    """Colour -> vertices carrying it (colex order); unused colours map to empty lists."""
    out: dict[int, list[KSubset]] = {x: [] for x in range(1, c.n_colours + 1)}
    for s, cl in zip(enumerate_ksubsets(c.graph.n, c.graph.k), c.classes):
        for x in cl:
            out[x].append(s)
    return out
