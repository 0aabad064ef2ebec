"""Lower and upper bounds on the multichromatic numbers of Kneser graphs.

Every bound is affine in the copy count q once r is fixed, so bounds are kept
symbolically as ``slope*q + intercept`` and evaluated on demand.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Sequence

from .colouring import decompose
from .errors import DomainError


class Provenance(str, enum.Enum):
    EKR_CEIL = "EKR_CEIL"
    SPLIT = "SPLIT"
    STAHL98 = "STAHL98"
    OSZTENYI = "OSZTENYI"
    STAHL_UB = "STAHL_UB"


@dataclass(frozen=True)
class AffineBound:
    """The claim chi_{qk-r}(K(n,k)) >= (or <=) slope*q + intercept for all q >= 1."""

    slope: int
    intercept: int
    kind: str
    provenance: Provenance
    detail: dict | None = field(default=None, compare=False)

    def at(self, q: int) -> int:
        return self.slope * q + self.intercept

    def __str__(self):
        if self.intercept == 0:
            return f"{self.slope}q"
        return f"{self.slope}q{self.intercept:+d}"


def _check_kneser(n: int, k: int) -> None:
    if k < 1 or n < 2 * k:
        raise DomainError(f"need n >= 2k >= 2, got ({n}, {k})")


def _check_r(k: int, r: int) -> None:
    if not 0 <= r <= k - 1:
        raise DomainError(f"need 0 <= r <= k-1, got r={r}, k={k}")


def ub_stahl(n: int, k: int, q: int, r: int) -> AffineBound:
    """Upper bound qn - 2r from the constructive colouring."""
    _check_kneser(n, k)
    _check_r(k, r)
    if q < 1:
        raise DomainError(f"need q >= 1, got {q}")
    return AffineBound(n, -2 * r, "upper", Provenance.STAHL_UB)


def ekr_value(n: int, k: int, k_prime: int) -> int:
    """ceil(k' n / k)."""
    return -(-k_prime * n // k)


def lb_ekr(n: int, k: int, k_prime: int) -> AffineBound:
    """Counting bound k'|V| / alpha, rounded up: qn - 2r - floor(r(n-2k)/k)."""
    _check_kneser(n, k)
    d = decompose(k_prime, k)
    r = d.r
    return AffineBound(n, -2 * r - r * (n - 2 * k) // k, "lower", Provenance.EKR_CEIL, {"r": r})


def lb_split_eval(n: int, k: int, r: int, parts: Sequence[int]) -> AffineBound:
    """Bound from splitting the ground set into blocks of the given sizes.

    Blocks smaller than k contribute nothing, blocks in [k, 2k) contribute
    qk - r (an edgeless graph), and blocks of size m >= 2k contribute
    qm - floor(mr/k).
    """
    if k < 1 or n < 2 * k:
        raise DomainError(f"need n >= 2k >= 2, got ({n}, {k})")
    _check_r(k, r)
    if any(p < 1 for p in parts):
        raise DomainError(f"parts must be positive: {list(parts)}")
    if sum(parts) != n:
        raise DomainError(f"parts {list(parts)} sum to {sum(parts)}, not {n}")
    middle = [p for p in parts if k <= p < 2 * k]
    large = [p for p in parts if p >= 2 * k]
    slope = len(middle) * k + sum(large)
    intercept = -len(middle) * r - sum(p * r // k for p in large)
    return AffineBound(slope, intercept, "lower", Provenance.SPLIT, {"parts": tuple(parts)})


def lb_split_opt(n: int, k: int, r: int) -> tuple[AffineBound, tuple[int, ...]]:
    """Best split bound over partitions of n into parts in [2k, 4k).

    Minimises the sum of floor(n_i r / k); ties go to fewer parts, then to the
    lexicographically smallest non-decreasing part sequence.
    """
    _check_kneser(n, k)
    _check_r(k, r)
    lo, hi = 2 * k, 4 * k - 1
    # best[m][p - lo]: optimum for total m using non-decreasing parts all >= p.
    # Keys compare as (cost, number of parts, part sequence).
    width = hi - lo + 1
    best: list[list[tuple | None]] = [[None] * (width + 1) for _ in range(n + 1)]
    for p_idx in range(width + 1):
        best[0][p_idx] = (0, 0, ())
    for m in range(1, n + 1):
        row = best[m]
        for p_idx in range(width - 1, -1, -1):
            cand = row[p_idx + 1]
            p = lo + p_idx
            if p <= m:
                rest = best[m - p][p_idx]
                if rest is not None:
                    mine = (p * r // k + rest[0], 1 + rest[1], (p,) + rest[2])
                    if cand is None or mine < cand:
                        cand = mine
            row[p_idx] = cand
    found = best[n][0]
    if found is None:
        raise AssertionError(f"no partition of {n} into parts in [{lo}, {hi}]")
    cost, _, parts = found
    return AffineBound(n, -cost, "lower", Provenance.SPLIT, {"parts": parts}), parts


def lb_stahl98(n: int, k: int, q: int, r: int) -> AffineBound:
    """qn - 2r - (k^2 - 3k + 4)."""
    _check_kneser(n, k)
    _check_r(k, r)
    return AffineBound(n, -2 * r - (k * k - 3 * k + 4), "lower", Provenance.STAHL98)


def lb_osztenyi(n: int, k: int, r: int) -> AffineBound | None:
    """Osztényi's bound qn - l*r - c + 1, maximised over admissible l.

    l ranges over integers >= 2 with lk < n < 2lk, and c is the least positive
    integer exceeding (lr - 1) / (ceil(lk / (n - lk)) - 1).  Returns None when
    no l is admissible.  ``detail`` carries the chosen ``ell`` and ``c``.
    """
    if k < 2:
        raise DomainError(f"Osztényi's bound needs k >= 2, got {k}")
    _check_r(k, r)
    best = None
    ell = 2
    while ell * k < n:
        if n < 2 * ell * k:
            denom = -(-(ell * k) // (n - ell * k)) - 1
            threshold = Fraction(ell * r - 1, denom)
            c = max(1, floor(threshold) + 1)
            intercept = -ell * r - c + 1
            if best is None or intercept > best.intercept:
                best = AffineBound(n, intercept, "lower", Provenance.OSZTENYI, {"ell": ell, "c": c})
        ell += 1
    return best


class Reason(str, enum.Enum):
    SMALL_K = "k<=3"
    BIPARTITE = "bipartite n=2k"
    ODD_GRAPH = "odd graph n=2k+1"
    MULTIPLE = "r=0 (k' multiple of k)"
    SMALL_KPRIME = "k'<=k"
    SMALL_R = "r<=k/(n-2k)"
    EXTERNAL_K10_4 = "external K(10,4)"


@dataclass(frozen=True)
class KnownStatus:
    proved: bool
    reasons: tuple[Reason, ...] = ()

    @property
    def reason(self) -> Reason | None:
        return self.reasons[0] if self.reasons else None

    def __str__(self):
        return f"proved ({self.reason.value})" if self.proved else "open"


def known_status(n: int, k: int, k_prime: int) -> KnownStatus:
    """Whether chi_{k'}(K(n,k)) = qn - 2r is an established value; all applicable rules are listed."""
    _check_kneser(n, k)
    d = decompose(k_prime, k)
    r = d.r
    reasons = []
    if k <= 3:
        reasons.append(Reason.SMALL_K)
    if n == 2 * k:
        reasons.append(Reason.BIPARTITE)
    if n == 2 * k + 1:
        reasons.append(Reason.ODD_GRAPH)
    if r == 0:
        reasons.append(Reason.MULTIPLE)
    if k_prime <= k:
        reasons.append(Reason.SMALL_KPRIME)
    if n > 2 * k and r * (n - 2 * k) <= k:
        reasons.append(Reason.SMALL_R)
    if (n, k) == (10, 4):
        reasons.append(Reason.EXTERNAL_K10_4)
    return KnownStatus(bool(reasons), tuple(reasons))


CSV_COLUMNS = (
    "n", "k", "kprime", "q", "r", "lb_ekr", "lb_split", "lb_stahl98", "lb_osztenyi",
    "upper", "conjectured", "best_lb", "provenance", "status",
)


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    k_prime: int
    q: int
    r: int
    lower: dict[Provenance, AffineBound]
    upper: AffineBound
    conjectured: int
    best_lower: int
    best_provenance: Provenance
    status: KnownStatus
    split_parts: tuple[int, ...]

    @property
    def exact(self) -> int | None:
        """The value of chi_{k'} when it is established, else None."""
        if self.status.proved or self.best_lower == self.upper.at(self.q):
            return self.conjectured
        return None

    def value(self, prov: Provenance) -> int | None:
        b = self.lower.get(prov)
        return None if b is None else b.at(self.q)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "kprime": self.k_prime,
            "q": self.q,
            "r": self.r,
            "lower": {
                p.value: {"bound": str(b), "value": b.at(self.q), **({"detail": _jsonable(b.detail)} if b.detail else {})}
                for p, b in self.lower.items()
            },
            "upper": {"bound": str(self.upper), "value": self.upper.at(self.q)},
            "conjectured": self.conjectured,
            "best_lower": self.best_lower,
            "provenance": self.best_provenance.value,
            "status": "proved" if self.status.proved else "open",
            "reasons": [x.value for x in self.status.reasons],
            "exact": self.exact,
        }

    def csv_row(self) -> list:
        def v(p):
            x = self.value(p)
            return "" if x is None else x

        return [
            self.n, self.k, self.k_prime, self.q, self.r,
            v(Provenance.EKR_CEIL), v(Provenance.SPLIT), v(Provenance.STAHL98), v(Provenance.OSZTENYI),
            self.upper.at(self.q), self.conjectured, self.best_lower, self.best_provenance.value,
            "proved" if self.status.proved else "open",
        ]


def _jsonable(detail: dict) -> dict:
    return {key: list(val) if isinstance(val, tuple) else val for key, val in detail.items()}


def best_bounds(n: int, k: int, k_prime: int) -> BoundReport:
    """Evaluate every bound for chi_{k'}(K(n,k)) and pick the largest lower bound.

    Ties keep the first bound in the order EKR, split, Osztényi, Stahl 1998.
    """
    _check_kneser(n, k)
    d = decompose(k_prime, k)
    q, r = d.q, d.r
    split, parts = lb_split_opt(n, k, r)
    lower = {Provenance.EKR_CEIL: lb_ekr(n, k, k_prime), Provenance.SPLIT: split}
    if k >= 2:
        osz = lb_osztenyi(n, k, r)
        if osz is not None:
            lower[Provenance.OSZTENYI] = osz
    lower[Provenance.STAHL98] = lb_stahl98(n, k, q, r)
    best_prov = max(lower, key=lambda p: lower[p].at(q))
    upper = ub_stahl(n, k, q, r)
    return BoundReport(
        n, k, k_prime, q, r, lower, upper, q * n - 2 * r,
        lower[best_prov].at(q), best_prov, known_status(n, k, k_prime), parts,
    )
