"""Thresholds that reduce the conjecture for fixed k to finitely many cases.

q0(n, k) is the copy count beyond which a colouring of K(n,k) must contain a
trivial colour class centred at every element, and n0(k) the ground-set size
beyond which good colourings of K(n,k) restrict to K(n-1,k).  All threshold
arithmetic is exact (``fractions.Fraction`` over Python ints).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor

from .bounds import KnownStatus, known_status
from .errors import DomainError

# 12 significant digits, rounded up: an upper bound on e.
E_UPPER = Fraction(271828182846, 10**11)


@dataclass(frozen=True)
class IndependencePair:
    alpha: int
    alpha_star: int


def independence(n: int, k: int) -> IndependencePair:
    """EKR maximum C(n-1,k-1) and the Hilton–Milner bound for non-trivial independent sets."""
    if k < 1 or n < 2 * k:
        raise DomainError(f"need n >= 2k >= 2, got ({n}, {k})")
    a = comb(n - 1, k - 1)
    return IndependencePair(a, a - comb(n - k - 1, k - 1) + 1)


def q0_exact(n: int, k: int) -> Fraction:
    """The rational quantity whose floor is q0(n, k)."""
    if k < 2:
        raise DomainError(f"q0 needs k >= 2, got {k}")
    if n <= 2 * k:
        raise DomainError(f"q0 needs n >= 2k+1, got ({n}, {k})")
    first = Fraction((k - 1) * (n - 2 * k + 1), n - k)
    num = (k - 1) * (n - 2 * k) * (n - 1) * (comb(n - 2, k - 1) - comb(n - k - 1, k - 1))
    den = k * (n - k) * (comb(n - k - 1, k - 1) - 1)
    return first + Fraction(num, den)


def q0(n: int, k: int) -> int:
    return floor(q0_exact(n, k))


def n0_analytic(k: int) -> int:
    """k^3 - k^2 + 2k - 2."""
    if k < 2:
        raise DomainError(f"n0 needs k >= 2, got {k}")
    return k**3 - k**2 + 2 * k - 2


def ratio_condition(n: int, k: int) -> bool:
    """Strict inequality alpha*/alpha < n / (k (n - 2k + 2)), compared exactly."""
    ip = independence(n, k)
    return Fraction(ip.alpha_star, ip.alpha) < Fraction(n, k * (n - 2 * k + 2))


def n0_exact(k: int) -> int:
    """Smallest m with the ratio condition holding for every n in [m, n0_analytic(k) + 1].

    The whole window is scanned; beyond it the condition holds for all n.
    """
    top = n0_analytic(k) + 1
    m = top + 1
    for n in range(top, 2 * k, -1):
        if not ratio_condition(n, k):
            break
        m = n
    return m


@dataclass(frozen=True)
class Q0Estimates:
    generic: int
    e_regime: Fraction | None
    large_n_regime: Fraction | None

    def active(self) -> dict[str, Fraction]:
        out = {"generic": Fraction(self.generic)}
        if self.e_regime is not None:
            out["e"] = self.e_regime
        if self.large_n_regime is not None:
            out["n/k"] = self.large_n_regime
        return out


def q0_estimate_c(n: int, k: int, c: Fraction | int) -> Fraction | None:
    """(n-2k) ((c-1)/(c-2))^(k-1), valid when c > 2 and n >= ck - 1; None outside that regime."""
    c = Fraction(c)
    if c <= 2 or n < c * k - 1:
        return None
    return (n - 2 * k) * ((c - 1) / (c - 2)) ** (k - 1)


def q0_estimates(n: int, k: int) -> Q0Estimates:
    """Upper estimates for q0(n, k): 4^k (n-2k) always, e(n-2k) once n >= k^2+k-1, n/k once n >= k^3+k-1.

    The e-regime value uses :data:`E_UPPER`, so it over-approximates e(n-2k).
    """
    if k < 2 or n < 2 * k + 1:
        raise DomainError(f"need k >= 2 and n >= 2k+1, got ({n}, {k})")
    generic = 4**k * (n - 2 * k)
    e_reg = E_UPPER * (n - 2 * k) if n >= k * k + k - 1 else None
    big = Fraction(n, k) if n >= k**3 + k - 1 else None
    return Q0Estimates(generic, e_reg, big)


@dataclass(frozen=True)
class ChecklistEntry:
    n: int
    q: int
    k_prime: int
    status: KnownStatus

    @property
    def open(self) -> bool:
        return not self.status.proved


def checklist(k: int) -> list[ChecklistEntry]:
    """One case chi_{qk-(k-1)}(K(n,k)) per n in [2k, n0_exact(k)], with q = q0(n, k).

    q0 is undefined at n = 2k; that entry borrows q0(2k+1, k) and is resolved
    (bipartite case) regardless.
    """
    if k < 2:
        raise DomainError(f"checklist needs k >= 2, got {k}")
    out = []
    for n in range(2 * k, n0_exact(k) + 1):
        q = q0(max(n, 2 * k + 1), k)
        kp = q * k - (k - 1)
        out.append(ChecklistEntry(n, q, kp, known_status(n, k, kp)))
    return out


def propagate_counterexample(n: int, k: int, q: int, r: int) -> dict[int, int]:
    """If chi_{qk-r}(K(n,k)) <= qn - 2r - 1, the same strict gap holds at every (q', r')
    with r <= r' <= k-1 and q' >= q + r' - r.  Returns r' -> least such q'.
    """
    if k < 2 or n < 2 * k + 1:
        raise DomainError(f"need n >= 2k+1 >= 5, got ({n}, {k})")
    if q < 1 or not 0 <= r <= k - 1:
        raise DomainError(f"need q >= 1 and 0 <= r <= k-1, got q={q}, r={r}")
    return {rp: q + rp - r for rp in range(r, k)}
