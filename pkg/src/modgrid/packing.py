"""Pair packing: distribute K pairs among L lines minimizing forced triples.

tau(m) is the fewest vertices spanning m edges; the trip cost of a
distribution (m_1, ..., m_L) is sum C(tau(m_i), 3), and T(K, L) is its
minimum over all distributions.  A closed form covers K <= 3L; an exact
DP covers the rest at desk scale and arbitrates every other route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .errors import BoundExceeded, DegenerateInput, NonPrimeModulus, OutOfRange
from .modring import is_prime

__all__ = [
    "tau",
    "trip_cost",
    "parity_rho",
    "t_closed_form",
    "canonical_optimal_partition",
    "t_exact",
    "greedy_packing",
    "jensen_lower_bound",
    "psi_lower_bound",
    "spread_report",
    "PackingResult",
    "SpreadReport",
    "K_BOUND",
    "L_BOUND",
]

K_BOUND = 2000
L_BOUND = 200

DEFAULT_OPTIMA_CAP = 64


@dataclass
class PackingResult:
    """Exact optimum T(K, L) with its canonical optimal distributions.

    ``optima`` holds nonincreasing part tuples; ``truncated`` flags that the
    enumeration stopped at the cap, not that the set was exhausted.
    """

    value: int
    optima: tuple[tuple[int, ...], ...]
    truncated: bool


@dataclass
class SpreadReport:
    """Min part r, max part, and the 2*r^(3/2) spread bound (informational)."""

    min_part: int
    max_part: int
    bound: float
    satisfied: bool


def tau(m: int) -> int:
    """Least k with C(k, 2) >= m, by exact integer search around isqrt."""
    if m < 0:
        raise OutOfRange(f"tau needs m >= 0, got {m}")
    if m == 0:
        return 0
    k = (1 + math.isqrt(1 + 8 * m)) // 2
    while k * (k - 1) // 2 < m:
        k += 1
    while k >= 1 and (k - 1) * (k - 2) // 2 >= m:
        k -= 1
    return k


def _part_cost(m: int) -> int:
    return comb(tau(m), 3)


def trip_cost(parts: Sequence[int]) -> int:
    """sum C(tau(m_i), 3) over the parts."""
    if any(m < 0 for m in parts):
        raise DegenerateInput(f"negative part in {parts}")
    return sum(_part_cost(m) for m in parts)


def parity_rho(t: int) -> int:
    """t - 2*floor(t/2), i.e. the parity of t."""
    return t % 2


def t_closed_form(K: int, L: int) -> int:
    """T(K, L) = max(ceil((K-L)/2), 0), valid only for K <= 3L."""
    _check_KL(K, L)
    if K > 3 * L:
        raise OutOfRange(f"closed form needs K <= 3L, got K={K}, L={L}")
    return max(-((L - K) // 2), 0)  # ceil((K-L)/2) via floor division


def canonical_optimal_partition(K: int, L: int) -> tuple[int, ...]:
    """The explicit optimal distribution for K <= 3L: threes, twos, ones, zeros."""
    _check_KL(K, L)
    if K > 3 * L:
        raise OutOfRange(f"canonical partition needs K <= 3L, got K={K}, L={L}")
    if K <= L:
        return tuple([1] * K + [0] * (L - K))
    threes = (K - L) // 2
    twos = parity_rho(K - L)
    ones = K - 3 * threes - 2 * twos
    zeros = L - threes - twos - ones
    return tuple([3] * threes + [2] * twos + [1] * ones + [0] * zeros)


def _check_KL(K: int, L: int) -> None:
    if K < 0 or L < 0:
        raise OutOfRange(f"K and L must be nonnegative, got K={K}, L={L}")
    if K > K_BOUND or L > L_BOUND:
        raise BoundExceeded(f"K={K}, L={L} beyond bounds ({K_BOUND}, {L_BOUND})")


@lru_cache(maxsize=None)
def _min_cost(k: int, l: int) -> int:
    """DP minimum of sum C(tau(m_i), 3) over l parts summing to k."""
    if l == 0:
        return 0 if k == 0 else math.inf
    if l == 1:
        return _part_cost(k)
    # parts <= 1 are free; once k <= l the answer is 0
    if k <= l:
        return 0
    return min(_part_cost(m) + _min_cost(k - m, l - 1) for m in range(k + 1))


def t_exact(K: int, L: int, optima_cap: int = DEFAULT_OPTIMA_CAP) -> PackingResult:
    """Exact T(K, L) with canonical optima enumerated up to ``optima_cap``."""
    _check_KL(K, L)
    if L == 0:
        if K != 0:
            raise OutOfRange("cannot place pairs on zero lines")
        return PackingResult(0, ((),), False)
    value = _min_cost(K, L)
    optima: list[tuple[int, ...]] = []
    truncated = False

    def extend(prefix: list[int], k: int, l: int, cap: int, cost: int) -> None:
        nonlocal truncated
        if truncated:
            return
        if l == 0:
            if k == 0 and cost == value:
                if len(optima) < optima_cap:
                    optima.append(tuple(prefix))
                else:
                    truncated = True
            return
        # nonincreasing parts: m in [ceil(k/l), min(cap, k)]
        lo = -(-k // l)
        for m in range(min(cap, k), lo - 1, -1):
            c = cost + _part_cost(m)
            if c + _min_cost(k - m, l - 1) > value:
                continue
            prefix.append(m)
            extend(prefix, k - m, l - 1, m, c)
            prefix.pop()

    extend([], K, L, K, 0)
    optima.sort(reverse=True)
    return PackingResult(value, tuple(optima), truncated)


def greedy_packing(K: int, L: int) -> tuple[int, ...]:
    """Spread the remaining pairs evenly, rounding each line up to the
    nearest full clique; returns the parts in canonical nonincreasing order.
    """
    _check_KL(K, L)
    remaining = K
    parts = []
    for i in range(L):
        lines_left = L - i
        target = -(-remaining // lines_left) if remaining else 0
        take = min(remaining, comb(tau(target), 2))
        parts.append(take)
        remaining -= take
    if remaining:
        raise OutOfRange(f"K={K} does not fit on L={L} lines greedily")
    return tuple(sorted(parts, reverse=True))


def jensen_lower_bound(K: int, L: int) -> float:
    """Convexity lower bound L*g(K/L) with g(x) = (x/6)*(sqrt(1+8x) - 3).

    The one floating-point surface in the package; compared against the
    exact DP with tolerance 1e-9.
    """
    if L < 1:
        raise OutOfRange(f"L must be >= 1, got L={L}")
    if K < 0:
        raise OutOfRange(f"K must be >= 0, got K={K}")
    x = K / L
    return L * (x / 6.0) * (math.sqrt(1.0 + 8.0 * x) - 3.0)


def psi_lower_bound(n: int) -> int:
    """ceil((n-1)/4) via the closed form at K = C(n,2), L = (n-1)^2/2."""
    if not is_prime(n) or n <= 2:
        raise NonPrimeModulus(f"psi_lower_bound requires an odd prime, got {n}")
    K = n * (n - 1) // 2
    L = (n - 1) ** 2 // 2
    return t_closed_form(K, L)


def spread_report(parts: Sequence[int]) -> SpreadReport:
    """Compare max part against 2*r^(3/2) where r is the smallest part."""
    if not parts or any(m <= 0 for m in parts):
        raise DegenerateInput(f"spread_report needs positive parts, got {parts}")
    r = min(parts)
    mx = max(parts)
    bound = 2.0 * r ** 1.5
    return SpreadReport(min_part=r, max_part=mx, bound=bound, satisfied=mx <= bound)
