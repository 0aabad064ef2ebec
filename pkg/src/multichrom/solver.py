"""Exact (n', k')-colourability of Kneser graphs by homomorphism search.

A graph is (n', k')-colourable iff it maps homomorphically into K(n', k'), so
the search assigns each source vertex a k'-subset of [n'] such that adjacent
vertices get disjoint subsets.  Candidate images are kept as bitsets over the
target vertices and pruned by forward checking.  The first vertex is pinned
to {1..k'}; Kneser graphs are vertex-transitive, so this loses nothing.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .bounds import ekr_value
from .colouring import MultiColouring, construct_stahl_colouring, decompose, verify_colouring
from .combinatorics import KneserParams, enumerate_ksubsets, vertex_masks
from .errors import DomainError

COLOURABLE = "colourable"
NOT_COLOURABLE = "not_colourable"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int = 10**8
    max_time: float = 60.0

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_time <= 0:
            raise DomainError("search budget must be positive")


@dataclass
class SolveOutcome:
    status: str
    witness: MultiColouring | None = None
    nodes_explored: int = 0
    elapsed: float = 0.0

    @property
    def colourable(self) -> bool:
        return self.status == COLOURABLE


class _OutOfBudget(Exception):
    pass


@lru_cache(maxsize=64)
def _target(n_prime: int, k_prime: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    tm = vertex_masks(n_prime, k_prime)
    nb = []
    for a in tm:
        bits = 0
        for j, b in enumerate(tm):
            if not a & b:
                bits |= 1 << j
        nb.append(bits)
    return tm, tuple(nb)


def kneser_adjacency(n: int, k: int) -> list[int]:
    """Adjacency of K(n,k) as one neighbour bitset per vertex (colex order)."""
    return list(_target(n, k)[1])


def find_homomorphism(adj: Sequence[int], n_prime: int, k_prime: int,
                      budget: SearchBudget | None = None, pin_first: bool = True,
                      ordering: str = "dynamic") -> tuple[str, list[int] | None, int]:
    """Search for a homomorphism from the graph ``adj`` into K(n', k').

    ``adj[v]`` is the neighbour bitset of vertex v.  Returns
    ``(status, images, nodes)`` where ``images[v]`` is a target colex rank.

    ``ordering="dynamic"`` branches on the vertex with fewest remaining
    candidates (ties: most neighbours, then lowest index); ``"static"`` fixes
    the order up front by degree, ties by index.  ``pin_first`` maps the first
    branched vertex to target 0 and is only sound for a vertex-transitive target.
    """
    budget = budget or SearchBudget()
    if ordering not in ("dynamic", "static"):
        raise DomainError(f"unknown ordering {ordering!r}")
    if k_prime < 1 or n_prime < k_prime:
        raise DomainError(f"K({n_prime},{k_prime}) is not a Kneser graph")
    _, tnb = _target(n_prime, k_prime)
    n_src = len(adj)
    if n_src == 0:
        return COLOURABLE, [], 0
    if any(adj[v] >> v & 1 for v in range(n_src)):
        return NOT_COLOURABLE, None, 0
    nbrs = [[u for u in range(n_src) if adj[v] >> u & 1] for v in range(n_src)]
    degree = [len(x) for x in nbrs]
    static_order = sorted(range(n_src), key=lambda v: (-degree[v], v))
    full = (1 << len(tnb)) - 1
    images = [-1] * n_src
    nodes = 0
    deadline = time.monotonic() + budget.max_time

    def pick(dom, left):
        if ordering == "static":
            return left[0]
        return min(left, key=lambda u: (dom[u].bit_count(), -degree[u], u))

    def search(dom, left, depth):
        nonlocal nodes
        if not left:
            return True
        v = pick(dom, left)
        rest = [u for u in left if u != v]
        cand = dom[v]
        if depth == 0 and pin_first:
            cand &= 1
        while cand:
            low = cand & -cand
            cand ^= low
            t = low.bit_length() - 1
            nodes += 1
            if nodes > budget.max_nodes:
                raise _OutOfBudget
            if not nodes & 1023 and time.monotonic() > deadline:
                raise _OutOfBudget
            allowed = tnb[t]
            new = dom[:]
            for u in nbrs[v]:
                if images[u] < 0:
                    d = new[u] & allowed
                    if not d:
                        break
                    new[u] = d
            else:
                images[v] = t
                if search(new, rest, depth + 1):
                    return True
                images[v] = -1
        return False

    try:
        found = search([full] * n_src, static_order, 0)
    except _OutOfBudget:
        return UNKNOWN, None, nodes
    return (COLOURABLE, list(images), nodes) if found else (NOT_COLOURABLE, None, nodes)


def is_colourable(n: int, k: int, n_prime: int, k_prime: int,
                  budget: SearchBudget | None = None, **search_opts) -> SolveOutcome:
    """Decide whether K(n,k) is (n', k')-colourable; a positive answer carries a verified witness."""
    if k < 1 or n < 2 * k:
        raise DomainError(f"need n >= 2k >= 2, got ({n}, {k})")
    if k_prime < 1 or n_prime < k_prime:
        raise DomainError(f"need n' >= k' >= 1, got ({n_prime}, {k_prime})")
    start = time.monotonic()
    status, images, nodes = find_homomorphism(kneser_adjacency(n, k), n_prime, k_prime, budget, **search_opts)
    elapsed = time.monotonic() - start
    if status != COLOURABLE:
        return SolveOutcome(status, None, nodes, elapsed)
    targets = enumerate_ksubsets(n_prime, k_prime)
    witness = MultiColouring(KneserParams(n, k), n_prime, k_prime, tuple(targets[t] for t in images))
    if not verify_colouring(witness):
        raise AssertionError(f"search produced an improper colouring for K({n},{k}) -> K({n_prime},{k_prime})")
    return SolveOutcome(status, witness, nodes, elapsed)


@dataclass
class ChiResult:
    """chi_{k'}(K(n,k)) lies in [lo, hi]; exact when lo == hi."""

    n: int
    k: int
    k_prime: int
    lo: int
    hi: int
    witness: MultiColouring | None
    outcomes: dict[int, SolveOutcome]

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int | None:
        return self.lo if self.exact else None


def chi_multi(n: int, k: int, k_prime: int, budget: SearchBudget | None = None, **search_opts) -> ChiResult:
    """Scan palette sizes upward from the counting bound to the constructive upper bound.

    Colourability is monotone in the palette size, so the first colourable size
    is the answer, provided every smaller size in the scan was refuted.  Sizes
    the search could not decide widen the result to an interval.
    """
    d = decompose(k_prime, k)
    lo = ekr_value(n, k, k_prime)
    top = d.q * n - 2 * d.r
    outcomes: dict[int, SolveOutcome] = {}
    first_unknown = None
    for n_prime in range(lo, top + 1):
        out = is_colourable(n, k, n_prime, k_prime, budget, **search_opts)
        outcomes[n_prime] = out
        if out.status == COLOURABLE:
            return ChiResult(n, k, k_prime, first_unknown or n_prime, n_prime, out.witness, outcomes)
        if out.status == UNKNOWN and first_unknown is None:
            first_unknown = n_prime
    # The top of the scan is always colourable by construction.
    witness = construct_stahl_colouring(n, k, d.q, d.r)
    return ChiResult(n, k, k_prime, first_unknown or top, top, witness, outcomes)


@dataclass(frozen=True)
class ClassShape:
    kind: str
    centre: int | None = None

    def __str__(self):
        return f"centred({self.centre})" if self.kind == "centred" else "non_trivial"


def classify_class(vertices) -> ClassShape:
    """Centred at the smallest common element if the member sets share one, else non-trivial."""
    vertices = [tuple(v) for v in vertices]
    if not vertices:
        raise DomainError("cannot classify an empty colour class")
    if len({len(v) for v in vertices}) != 1:
        raise DomainError("colour class mixes subsets of different sizes")
    common = set(vertices[0]).intersection(*vertices[1:])
    if common:
        return ClassShape("centred", min(common))
    return ClassShape("non_trivial")


def mutual_colourability(n: int, k: int, n_prime: int, k_prime: int) -> bool:
    """Every (n,k)-colourable graph is (n',k')-colourable and vice versa."""
    if k < 1 or n < 2 * k or k_prime < 1 or n_prime < 2 * k_prime:
        raise DomainError(f"need n >= 2k >= 2 and n' >= 2k' >= 2, got ({n}, {k}, {n_prime}, {k_prime})")
    return (n, k) == (n_prime, k_prime) or (n == 2 * k and n_prime == 2 * k_prime)


MAX_LEX_M = 3
MAX_LEX_N = 6


def lex_product(n: int, k: int, m: int) -> list[int]:
    """K(n,k) lexicographically multiplied by the clique K_m, as neighbour bitsets.

    Vertex (rank, j) has index rank*m + j.  Two copies are adjacent when their
    base vertices are adjacent or equal.  Kept small: m <= 3 and n <= 6.
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    if m > MAX_LEX_M or n > MAX_LEX_N:
        raise DomainError(f"lexicographic-product oracle limited to m <= {MAX_LEX_M}, n <= {MAX_LEX_N}")
    base = kneser_adjacency(n, k)
    block = (1 << m) - 1
    adj = []
    for v, nb in enumerate(base):
        spread = 0
        for u in range(len(base)):
            if nb >> u & 1:
                spread |= block << (u * m)
        for j in range(m):
            adj.append(spread | ((block << (v * m)) & ~(1 << (v * m + j))))
    return adj


def chromatic_number(adj: Sequence[int], upper: int | None = None,
                     budget: SearchBudget | None = None) -> int:
    """Ordinary chromatic number via homomorphisms into complete graphs K(c, 1)."""
    upper = upper or len(adj)
    for c in range(1, upper + 1):
        status, _, _ = find_homomorphism(adj, c, 1, budget)
        if status == UNKNOWN:
            raise TimeoutError(f"could not decide {c}-colourability within budget")
        if status == COLOURABLE:
            return c
    raise DomainError(f"graph is not {upper}-colourable")

