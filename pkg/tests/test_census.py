import random
from itertools import permutations
from math import comb

import pytest

from modgrid.census import (
    count_quadruples,
    count_quadruples_naive,
    count_triples,
    count_triples_naive,
    line_decomposition,
    slope_histogram,
    transversal_points,
    validate_transversal,
)
from modgrid.constructions import cubic_permutation, inverse_permutation
from modgrid.errors import DegenerateInput, NonPrimeModulus
from modgrid.geometry import INF, CollinearityKernel, CollinearityMode


def identity_points(n):
    return [(x, x) for x in range(n)]


def test_validate_transversal():
    assert validate_transversal([2, 0, 1]) == [2, 0, 1]
    with pytest.raises(DegenerateInput):
        validate_transversal([0, 0, 1])


def test_count_triples_examples():
    assert count_triples(identity_points(5), 5) == 10
    assert count_triples(transversal_points(inverse_permutation(7)), 7) == 3
    assert count_triples([(0, 0), (1, 2)], 5) == 0


def test_count_quadruples_examples():
    assert count_quadruples(identity_points(5), 5) == 5
    assert count_quadruples(transversal_points(inverse_permutation(7)), 7) == 0
    assert count_quadruples(transversal_points(cubic_permutation(5)), 5) == 0


def test_duplicate_points_rejected():
    with pytest.raises(DegenerateInput):
        count_triples([(0, 0), (0, 0), (1, 1)], 5)


def _random_subset(rng, n, size):
    pts = [(x, y) for x in range(n) for y in range(n)]
    return rng.sample(pts, size)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_fast_path_equals_naive(p):
    rng = random.Random(p)
    kernel = CollinearityKernel(p)
    for _ in range(40):
        size = rng.randrange(2, min(p * p, 13))
        pts = _random_subset(rng, p, size)
        census = line_decomposition(pts, p)
        assert census.triples == count_triples_naive(pts, p, kernel=kernel)
        assert census.quadruples == count_quadruples_naive(pts, p, kernel=kernel)


def test_pair_accounting_for_quadruple_free_sets():
    # 3 * triples + (pairs on no triple) = C(|S|, 2) when no line holds 4 points
    for p in (5, 7, 11, 13):
        pts = transversal_points(cubic_permutation(p)) if p % 3 == 2 else \
            transversal_points(inverse_permutation(p))
        census = line_decomposition(pts, p)
        assert census.quadruples == 0
        assert all(k <= 3 for _, k in census.lines)
        two_point_pairs = sum(1 for _, k in census.lines if k == 2)
        assert 3 * census.triples + two_point_pairs == comb(len(pts), 2)


def test_every_prime_transversal_has_a_triple():
    for n in (3, 5, 7):
        for perm in permutations(range(n)):
            assert count_triples(transversal_points(list(perm)), n) >= 1
    rng = random.Random(0)
    for n in (11, 13):
        base = list(range(n))
        for _ in range(50):
            rng.shuffle(base)
            assert count_triples(transversal_points(base), n) >= 1


def test_monotone_under_point_addition():
    rng = random.Random(42)
    for n in (5, 6, 9):
        for _ in range(20):
            pts = _random_subset(rng, n, rng.randrange(3, n * n))
            sub = pts[:-1]
            assert count_triples(sub, n) <= count_triples(pts, n)
            assert count_quadruples(sub, n) <= count_quadruples(pts, n)


def test_slope_histogram():
    assert slope_histogram([0, 1, 2, 3, 4], 5) == {1: 10}
    hist = slope_histogram(inverse_permutation(5), 5)
    assert sum(hist.values()) == 10
    assert set(hist) <= {1, 2, 3, 4}
    hist7 = slope_histogram([0, 1, 4, 5, 2, 3, 6], 7)
    assert sum(hist7.values()) == 21
    assert 0 not in hist7 and INF not in hist7
    with pytest.raises(NonPrimeModulus):
        slope_histogram([0, 1, 2, 3], 4)


def test_line_decomposition_examples():
    census = line_decomposition(identity_points(5), 5)
    assert census.triples == 10 and census.quadruples == 5
    assert [(k) for _, k in census.lines if k >= 3] == [5]

    inv7 = line_decomposition(transversal_points(inverse_permutation(7)), 7)
    assert sorted(k for _, k in inv7.lines if k >= 3) == [3, 3, 3]
    assert inv7.triples == 3

    # any transversal mod 5: its C(5,2) pairs lie on at most (5-1)^2/2 = 8 lines
    for sigma in permutations(range(5)):
        census = line_decomposition(transversal_points(list(sigma)), 5)
        assert len(census.lines) <= 8
        assert sum(comb(k, 2) for _, k in census.lines) == comb(5, 2)


def test_line_decomposition_requires_prime():
    with pytest.raises(NonPrimeModulus):
        line_decomposition(identity_points(6), 6)


def test_composite_counts_respect_mode():
    pts = [(0, 0), (1, 0), (0, 2)]
    assert count_triples(pts, 6, CollinearityMode.ANY_LINE) == 1
    assert count_triples(pts, 6, CollinearityMode.UNIT_LINE) == 0
