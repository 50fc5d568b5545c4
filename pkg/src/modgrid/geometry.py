"""Points, lines, slopes and collinearity over Z_n x Z_n.

A "line" is the solution set of a*x + b*y = c (mod n) with (a, b) != (0, 0).
For composite n two reasonable readings exist, so the predicate is
mode-parameterized:

  ANY_LINE  - any nonzero (a, b) qualifies;
  UNIT_LINE - additionally require gcd(a, b, n) == 1.

For prime n the two modes coincide.  The package default is UNIT_LINE,
pinned by the Psi(9) = 5 table experiment (see tests/test_search.py).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import BoundExceeded, DegenerateInput, DegeneratePair, NonPrimeModulus
from .modring import is_prime, mod_inverse

__all__ = [
    "INF",
    "CollinearityMode",
    "DEFAULT_MODE",
    "ModularLine",
    "pair_slope",
    "line_through",
    "collinear_triple",
    "collinear_set",
    "CollinearityKernel",
    "KERNEL_DEFAULT_BOUND",
]

Point = tuple[int, int]

#: slope of a pair sharing an x-coordinate
INF = "inf"


class CollinearityMode(str, Enum):
    ANY_LINE = "any"
    UNIT_LINE = "unit"


#: Fixed by computing Psi(9) under both modes: UNIT_LINE yields the table
#: value 5 while ANY_LINE yields a strictly larger count (regression fixture
#: in tests/test_search.py).
DEFAULT_MODE = CollinearityMode.UNIT_LINE

KERNEL_DEFAULT_BOUND = 64


@dataclass(frozen=True)
class ModularLine:
    """Parameters (a, b, c) of {(x, y): a*x + b*y = c mod n}.

    Canonical form (prime n): b == 1 when possible, else a == 1, b == 0.
    """

    a: int
    b: int
    c: int
    n: int

    def __post_init__(self) -> None:
        if (self.a % self.n, self.b % self.n) == (0, 0):
            raise DegenerateInput("(a, b) = (0, 0) does not define a line")

    def contains(self, p: Point) -> bool:
        return (self.a * p[0] + self.b * p[1] - self.c) % self.n == 0

    def points(self) -> list[Point]:
        return [
            (x, y)
            for x in range(self.n)
            for y in range(self.n)
            if self.contains((x, y))
        ]


def _require_prime(n: int) -> None:
    if not is_prime(n):
        raise NonPrimeModulus(f"operation requires a prime modulus, got {n}")


def _reduce(p: Point, n: int) -> Point:
    return (p[0] % n, p[1] % n)


def _require_distinct(points: Sequence[Point], n: int) -> list[Point]:
    reduced = [_reduce(p, n) for p in points]
    if len(set(reduced)) != len(reduced):
        raise DegenerateInput(f"points not pairwise distinct mod {n}: {points}")
    return reduced


def pair_slope(p: Point, q: Point, n: int):
    """Slope of the pair (rise over run): (qy-py)*(qx-px)^-1, or INF if vertical."""
    _require_prime(n)
    p, q = _reduce(p, n), _reduce(q, n)
    if p == q:
        raise DegeneratePair(f"pair_slope needs distinct points, got {p} twice")
    dx = (q[0] - p[0]) % n
    if dx == 0:
        return INF
    return ((q[1] - p[1]) * mod_inverse(dx, n)) % n


def line_through(p: Point, q: Point, n: int) -> ModularLine:
    """The unique canonical line through two distinct points (prime n only)."""
    _require_prime(n)
    p, q = _reduce(p, n), _reduce(q, n)
    if p == q:
        raise DegeneratePair(f"line_through needs distinct points, got {p} twice")
    s = pair_slope(p, q, n)
    if s == INF:
        return ModularLine(1, 0, p[0], n)
    # y = s*x + t  <=>  (-s)*x + y = t
    return ModularLine((-s) % n, 1, (p[1] - s * p[0]) % n, n)


def _diff_det(p1: Point, p2: Point, p3: Point, n: int) -> int:
    return ((p2[0] - p1[0]) * (p3[1] - p1[1]) - (p3[0] - p1[0]) * (p2[1] - p1[1])) % n


def collinear_triple(
    p1: Point, p2: Point, p3: Point, n: int, mode: CollinearityMode = DEFAULT_MODE
) -> bool:
    """Whether three distinct points lie on a common line (per mode).

    Prime n (either mode) and composite ANY_LINE use the determinant/gcd
    criterion; its equivalence with the exhaustive line scan is proved by
    test (tests/test_geometry.py).  Composite UNIT_LINE falls back to the
    exhaustive scan.
    """
    pts = _require_distinct([p1, p2, p3], n)
    if mode == CollinearityMode.ANY_LINE or is_prime(n):
        return math.gcd(_diff_det(*pts, n), n) > 1
    return collinear_set(pts, n, mode)


def _mode_coeffs(n: int, mode: CollinearityMode) -> Iterable[tuple[int, int]]:
    for a in range(n):
        for b in range(n):
            if a == 0 and b == 0:
                continue
            if mode == CollinearityMode.UNIT_LINE and math.gcd(math.gcd(a, b), n) != 1:
                continue
            yield a, b


def collinear_set(
    points: Sequence[Point], n: int, mode: CollinearityMode = DEFAULT_MODE
) -> bool:
    """Reference predicate: some single line (per mode) contains every point.

    Scans all qualifying (a, b) with c forced by the first point.  This is
    the semantics every fast path is validated against.
    """
    pts = _require_distinct(points, n)
    if len(pts) < 2:
        raise DegenerateInput("collinear_set needs at least 2 points")
    x0, y0 = pts[0]
    rest = pts[1:]
    for a, b in _mode_coeffs(n, mode):
        c = (a * x0 + b * y0) % n
        if all((a * x + b * y - c) % n == 0 for x, y in rest):
            return True
    return False


class CollinearityKernel:
    """Precomputed translation-invariant triple predicate.

    Keyed by the difference vectors (p2 - p1, p3 - p1); answers
    collinear_triple for every translate.  Entries for degenerate
    difference pairs (zero or equal differences) are never queried.
    """

    def __init__(
        self,
        n: int,
        mode: CollinearityMode = DEFAULT_MODE,
        bound: int = KERNEL_DEFAULT_BOUND,
    ):
        if n > bound:
            raise BoundExceeded(f"kernel table for n={n} exceeds bound {bound}")
        self.n = n
        self.mode = mode
        n2 = n * n
        self.n2 = n2
        table = bytearray(n2 * n2)
        if mode == CollinearityMode.ANY_LINE or is_prime(n):
            for dx2 in range(n):
                for dy2 in range(n):
                    i2 = (dx2 * n + dy2) * n2
                    for dx3 in range(n):
                        for dy3 in range(n):
                            det = (dx2 * dy3 - dx3 * dy2) % n
                            if math.gcd(det, n) > 1:
                                table[i2 + dx3 * n + dy3] = 1
        else:
            for a, b in _mode_coeffs(n, mode):
                annihilated = [
                    dx * n + dy
                    for dx in range(n)
                    for dy in range(n)
                    if (a * dx + b * dy) % n == 0
                ]
                for i2 in annihilated:
                    row = i2 * n2
                    for i3 in annihilated:
                        table[row + i3] = 1
        self.table = table

    def lookup(self, d2: Point, d3: Point) -> bool:
        """Predicate on difference vectors d2 = p2 - p1, d3 = p3 - p1."""
        n = self.n
        i2 = (d2[0] % n) * n + d2[1] % n
        i3 = (d3[0] % n) * n + d3[1] % n
        return bool(self.table[i2 * self.n2 + i3])

    def collinear(self, p1: Point, p2: Point, p3: Point) -> bool:
        n = self.n
        i2 = ((p2[0] - p1[0]) % n) * n + (p2[1] - p1[1]) % n
        i3 = ((p3[0] - p1[0]) % n) * n + (p3[1] - p1[1]) % n
        return bool(self.table[i2 * self.n2 + i3])
