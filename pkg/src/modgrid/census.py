"""Exact counting of collinear triples/quadruples and slope statistics.

Two counting routes are kept deliberately:

  * a naive subset scan valid for every modulus and mode, and
  * a prime-only fast path that buckets pairs by their (unique) line and
    sums binomials.

The fast path is validated against the naive one by test, never assumed.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence

from .errors import DegenerateInput, NonPrimeModulus
from .geometry import (
    DEFAULT_MODE,
    INF,
    CollinearityKernel,
    CollinearityMode,
    KERNEL_DEFAULT_BOUND,
    ModularLine,
    Point,
    collinear_set,
    collinear_triple,
    line_through,
    pair_slope,
)
from .modring import is_prime, mod_inverse

__all__ = [
    "validate_transversal",
    "transversal_points",
    "count_triples",
    "count_quadruples",
    "count_triples_naive",
    "count_quadruples_naive",
    "slope_histogram",
    "line_decomposition",
    "TripleCensus",
]


@dataclass
class TripleCensus:
    """Line-by-line census of a point set (prime modulus).

    ``lines`` holds every line meeting the set in k >= 2 points together
    with k; triple/quadruple totals are the derived binomial sums.
    """

    triples: int
    quadruples: int
    lines: list[tuple[ModularLine, int]]


def validate_transversal(sigma: Sequence[int]) -> list[int]:
    """Check that sigma is a permutation of {0, ..., n-1}."""
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise DegenerateInput(f"not a permutation of range({n}): {list(sigma)}")
    return list(sigma)


def transversal_points(sigma: Sequence[int]) -> list[Point]:
    """The graph {(x, sigma[x])} of a permutation."""
    validate_transversal(sigma)
    return [(x, y) for x, y in enumerate(sigma)]


def _checked_points(points: Sequence[Point], n: int) -> list[Point]:
    pts = [(x % n, y % n) for x, y in points]
    if len(set(pts)) != len(pts):
        raise DegenerateInput("duplicate points in set")
    return pts


def _kernel_or_none(n: int, mode: CollinearityMode) -> Optional[CollinearityKernel]:
    if n <= KERNEL_DEFAULT_BOUND:
        return CollinearityKernel(n, mode)
    return None


def count_triples_naive(
    points: Sequence[Point],
    n: int,
    mode: CollinearityMode = DEFAULT_MODE,
    kernel: Optional[CollinearityKernel] = None,
) -> int:
    """O(|S|^3) scan over 3-subsets; valid for every modulus and mode."""
    pts = _checked_points(points, n)
    if kernel is None:
        kernel = _kernel_or_none(n, mode)
    if kernel is not None:
        pred = kernel.collinear
        return sum(1 for t in combinations(pts, 3) if pred(*t))
    return sum(1 for t in combinations(pts, 3) if collinear_triple(*t, n, mode))


def count_quadruples_naive(
    points: Sequence[Point],
    n: int,
    mode: CollinearityMode = DEFAULT_MODE,
    kernel: Optional[CollinearityKernel] = None,
) -> int:
    """O(|S|^4) scan over 4-subsets.

    For composite n a quadruple must be confirmed on a single line via
    collinear_set; four pairwise-collinear subtriples are only a filter.
    """
    pts = _checked_points(points, n)
    if is_prime(n):
        return sum(
            1
            for q in combinations(pts, 4)
            if collinear_triple(q[0], q[1], q[2], n, mode)
            and collinear_triple(q[0], q[1], q[3], n, mode)
        )
    if kernel is None:
        kernel = _kernel_or_none(n, mode)
    count = 0
    for q in combinations(pts, 4):
        if kernel is not None:
            if not (
                kernel.collinear(q[0], q[1], q[2])
                and kernel.collinear(q[0], q[1], q[3])
                and kernel.collinear(q[0], q[2], q[3])
                and kernel.collinear(q[1], q[2], q[3])
            ):
                continue
        if collinear_set(q, n, mode):
            count += 1
    return count


def line_decomposition(points: Sequence[Point], n: int) -> TripleCensus:
    """Full line census of a point set (prime n): every line with k >= 2."""
    if not is_prime(n):
        raise NonPrimeModulus(f"line_decomposition requires prime n, got {n}")
    pts = _checked_points(points, n)
    buckets: dict[tuple[int, int, int], set[Point]] = {}
    inv = [0] * n
    for d in range(1, n):
        inv[d] = pow(d, -1, n)
    for p, q in combinations(pts, 2):
        dx = (q[0] - p[0]) % n
        if dx == 0:
            key = (1, 0, p[0])
        else:
            s = ((q[1] - p[1]) * inv[dx]) % n
            key = ((-s) % n, 1, (p[1] - s * p[0]) % n)
        buckets.setdefault(key, set()).update((p, q))
    lines = [
        (ModularLine(a, b, c, n), len(members))
        for (a, b, c), members in sorted(buckets.items())
    ]
    triples = sum(comb(k, 3) for _, k in lines)
    quadruples = sum(comb(k, 4) for _, k in lines)
    return TripleCensus(triples=triples, quadruples=quadruples, lines=lines)


def count_triples(
    points: Sequence[Point],
    n: int,
    mode: CollinearityMode = DEFAULT_MODE,
    kernel: Optional[CollinearityKernel] = None,
) -> int:
    """Exact number of collinear 3-subsets of the point set."""
    if is_prime(n):
        return line_decomposition(points, n).triples
    return count_triples_naive(points, n, mode, kernel)


def count_quadruples(
    points: Sequence[Point],
    n: int,
    mode: CollinearityMode = DEFAULT_MODE,
    kernel: Optional[CollinearityKernel] = None,
) -> int:
    """Exact number of collinear 4-subsets of the point set."""
    if is_prime(n):
        return line_decomposition(points, n).quadruples
    return count_quadruples_naive(points, n, mode, kernel)


def slope_histogram(sigma: Sequence[int], n: int) -> dict:
    """Pair counts per slope class for a transversal (prime n).

    For a permutation graph, slopes 0 and INF never occur and the counts
    total C(n, 2).
    """
    if not is_prime(n):
        raise NonPrimeModulus(f"slope_histogram requires prime n, got {n}")
    pts = transversal_points(sigma)
    hist: dict = {}
    for p, q in combinations(pts, 2):
        s = pair_slope(p, q, n)
        hist[s] = hist.get(s, 0) + 1
    return hist
