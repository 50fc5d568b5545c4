import math
import random
from itertools import permutations

import pytest

from modgrid.errors import BoundExceeded, DegenerateInput, DegeneratePair, NonPrimeModulus
from modgrid.geometry import (
    INF,
    CollinearityKernel,
    CollinearityMode,
    ModularLine,
    collinear_set,
    collinear_triple,
    line_through,
    pair_slope,
)

ANY = CollinearityMode.ANY_LINE
UNIT = CollinearityMode.UNIT_LINE


def test_pair_slope_examples():
    assert pair_slope((0, 0), (1, 3), 7) == 3
    assert pair_slope((2, 5), (2, 1), 7) == INF
    assert pair_slope((0, 0), (2, 1), 5) == 3  # 1 * 2^{-1} = 3 mod 5


def test_pair_slope_errors():
    with pytest.raises(DegeneratePair):
        pair_slope((1, 1), (1, 1), 7)
    with pytest.raises(NonPrimeModulus):
        pair_slope((0, 0), (1, 1), 6)


def test_line_through_examples():
    assert line_through((0, 0), (1, 1), 5) == ModularLine(4, 1, 0, 5)
    assert line_through((3, 0), (3, 2), 5) == ModularLine(1, 0, 3, 5)
    assert line_through((0, 2), (1, 2), 7) == ModularLine(0, 1, 2, 7)


def test_line_through_contains_endpoints_and_agrees_with_triple():
    rng = random.Random(7)
    for n in (3, 5, 7, 11):
        for _ in range(30):
            p = (rng.randrange(n), rng.randrange(n))
            q = (rng.randrange(n), rng.randrange(n))
            if p == q:
                continue
            line = line_through(p, q, n)
            assert line.contains(p) and line.contains(q)
            for r in line.points():
                if r not in (p, q):
                    assert collinear_triple(p, q, r, n)


def test_collinear_triple_examples():
    assert collinear_triple((0, 0), (1, 1), (2, 2), 5, ANY)
    assert not collinear_triple((0, 0), (1, 2), (2, 3), 4, ANY)
    assert collinear_triple((0, 0), (1, 0), (0, 2), 6, ANY)
    assert not collinear_triple((0, 0), (1, 0), (0, 2), 6, UNIT)


def test_collinear_triple_rejects_duplicates():
    with pytest.raises(DegenerateInput):
        collinear_triple((0, 0), (0, 0), (1, 1), 5)


def test_collinear_set_examples():
    assert collinear_set([(0, 0), (1, 1), (2, 2), (3, 3)], 7)
    assert not collinear_set([(0, 0), (1, 1), (2, 2), (3, 4)], 7)
    # every pair of distinct points is collinear, composite moduli included
    rng = random.Random(3)
    for n in (2, 4, 6, 9, 12):
        for _ in range(20):
            p = (rng.randrange(n), rng.randrange(n))
            q = (rng.randrange(n), rng.randrange(n))
            if p != q:
                assert collinear_set([p, q], n, UNIT)
                assert collinear_set([p, q], n, ANY)


def test_collinear_set_matches_triple_on_three_points():
    rng = random.Random(11)
    for n in (4, 5, 6, 9):
        for mode in (ANY, UNIT):
            for _ in range(40):
                pts = {(rng.randrange(n), rng.randrange(n)) for _ in range(3)}
                if len(pts) != 3:
                    continue
                pts = sorted(pts)
                assert collinear_set(pts, n, mode) == collinear_triple(*pts, n, mode)


def _scan_oracle(p1, p2, p3, n, mode):
    # independent reference: scan every (a, b) != (0, 0) allowed by the mode
    for a in range(n):
        for b in range(n):
            if a == 0 and b == 0:
                continue
            if mode is UNIT and math.gcd(math.gcd(a, b), n) != 1:
                continue
            c = (a * p1[0] + b * p1[1]) % n
            if (a * p2[0] + b * p2[1]) % n == c and (a * p3[0] + b * p3[1]) % n == c:
                return True
    return False


def _distinct_diff_pairs(n):
    origin = (0, 0)
    for d2x in range(n):
        for d2y in range(n):
            d2 = (d2x, d2y)
            if d2 == origin:
                continue
            for d3x in range(n):
                for d3y in range(n):
                    d3 = (d3x, d3y)
                    if d3 == origin or d3 == d2:
                        continue
                    yield d2, d3


@pytest.mark.parametrize("n", range(2, 13))
def test_anyline_determinant_equals_scan_oracle(n):
    # exhaustive over difference vectors; translation invariance reduces the
    # check to base point (0, 0)
    for d2, d3 in _distinct_diff_pairs(n):
        det = (d2[0] * d3[1] - d3[0] * d2[1]) % n
        fast = math.gcd(det, n) > 1
        assert fast == _scan_oracle((0, 0), d2, d3, n, ANY), (n, d2, d3)


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_prime_modes_agree_exhaustive(n):
    for d2, d3 in _distinct_diff_pairs(n):
        assert (
            collinear_triple((0, 0), d2, d3, n, ANY)
            == _scan_oracle((0, 0), d2, d3, n, UNIT)
        )


@pytest.mark.parametrize("n", [11, 13])
def test_prime_modes_agree_large(n):
    # UNIT lines are a subset of ANY lines, so the predicates can only differ
    # where the determinant criterion holds; scan exactly those triples, plus
    # a random sample of the rest.
    for d2, d3 in _distinct_diff_pairs(n):
        det = (d2[0] * d3[1] - d3[0] * d2[1]) % n
        if det == 0:
            assert _scan_oracle((0, 0), d2, d3, n, UNIT), (n, d2, d3)
    rng = random.Random(n)
    checked = 0
    while checked < 200:
        d2 = (rng.randrange(n), rng.randrange(n))
        d3 = (rng.randrange(n), rng.randrange(n))
        if d2 == (0, 0) or d3 == (0, 0) or d2 == d3:
            continue
        if (d2[0] * d3[1] - d3[0] * d2[1]) % n != 0:
            assert not _scan_oracle((0, 0), d2, d3, n, UNIT)
            checked += 1


def test_translation_and_permutation_invariance():
    rng = random.Random(99)
    for n in (5, 6, 9):
        for mode in (ANY, UNIT):
            for _ in range(50):
                pts = set()
                while len(pts) < 3:
                    pts.add((rng.randrange(n), rng.randrange(n)))
                p1, p2, p3 = sorted(pts)
                base = collinear_triple(p1, p2, p3, n, mode)
                t = (rng.randrange(n), rng.randrange(n))
                shifted = [((x + t[0]) % n, (y + t[1]) % n) for x, y in (p1, p2, p3)]
                assert collinear_triple(*shifted, n, mode) == base
                for perm in permutations((p1, p2, p3)):
                    assert collinear_triple(*perm, n, mode) == base


class TestCollinearityKernel:
    def test_bound(self):
        with pytest.raises(BoundExceeded):
            CollinearityKernel(65)

    def test_n2_all_false(self):
        for mode in (ANY, UNIT):
            kern = CollinearityKernel(2, mode)
            for d2, d3 in _distinct_diff_pairs(2):
                assert not kern.lookup(d2, d3)

    def test_examples(self):
        kern = CollinearityKernel(5)
        assert kern.lookup((1, 1), (2, 2))
        any9 = CollinearityKernel(9, ANY)
        unit9 = CollinearityKernel(9, UNIT)
        assert any9.table != unit9.table
        assert any9.lookup((3, 0), (0, 3)) and not unit9.lookup((3, 0), (0, 3))

    @pytest.mark.parametrize("n", [3, 4, 6, 9, 12])
    @pytest.mark.parametrize("mode", [ANY, UNIT])
    def test_consistent_with_collinear_triple(self, n, mode):
        kern = CollinearityKernel(n, mode)
        for d2, d3 in _distinct_diff_pairs(n):
            assert kern.lookup(d2, d3) == collinear_triple((0, 0), d2, d3, n, mode)

    def test_translated_queries(self):
        kern = CollinearityKernel(7)
        assert kern.collinear((1, 1), (2, 2), (3, 3))
        assert not kern.collinear((1, 1), (2, 2), (3, 4))
