import json

import pytest

from modgrid.census import count_quadruples, count_triples, transversal_points
from modgrid.constructions import g_permutation
from modgrid.errors import CheckpointMismatch, NonPrimeModulus
from modgrid.geometry import CollinearityMode
from modgrid.search import (
    SearchBudget,
    ct0_subsets,
    lex_least_with_count,
    max_triple_free_subset,
    max_triples_quadfree_transversal,
    psi,
    psi_brute_force,
    verify_theorem1,
)

ANY = CollinearityMode.ANY_LINE
UNIT = CollinearityMode.UNIT_LINE

# minimum triple counts under the default (unit-line) semantics
PSI_SMALL = {1: 0, 2: 0, 3: 1, 4: 0, 5: 2, 6: 0, 7: 3, 8: 0, 9: 5, 10: 2}


@pytest.mark.parametrize("n,expected", sorted(PSI_SMALL.items()))
def test_psi_small_values(n, expected):
    out = psi(n)
    assert out.exact
    assert out.value == expected
    assert count_triples(transversal_points(out.witness), n) == expected


def test_psi_11():
    out = psi(11)
    assert out.exact and out.value == 5


def test_psi_mode_sensitivity():
    assert psi(9, mode=UNIT).value == 5
    assert psi(9, mode=ANY).value == 12
    assert psi(10, mode=UNIT).value == 2
    assert psi(10, mode=ANY).value == 60


@pytest.mark.parametrize("n", [3, 4, 5, 6])
@pytest.mark.parametrize("mode", [ANY, UNIT])
def test_pruned_search_matches_brute_force(n, mode):
    assert psi(n, mode=mode).value == psi_brute_force(n, mode).value


@pytest.mark.parametrize("n", [5, 7])
def test_full_reduction_matches_translate_only(n):
    full = psi(n, reduction="full")
    translate = psi(n, reduction="translate")
    none = psi(n, reduction="none")
    assert full.value == translate.value == none.value


@pytest.mark.parametrize("n", [5, 6, 7])
def test_psi_witness_is_lex_least_optimum(n):
    out = psi(n)
    value = out.value
    # oracle: lexicographically first permutation attaining the optimum
    import itertools

    for perm in itertools.permutations(range(n)):
        if count_triples(transversal_points(list(perm)), n) == value:
            assert out.witness == list(perm)
            break


def test_psi_workers_agree():
    serial = psi(9)
    parallel = psi(9, budget=SearchBudget(workers=8))
    assert serial.value == parallel.value == 5
    assert count_triples(transversal_points(parallel.witness), 9) == 5


def test_psi_budget_yields_inexact_upper_bound():
    out = psi(9, budget=SearchBudget(max_nodes=500))
    assert not out.exact
    assert out.note
    assert out.value >= 5  # upper bound on the true optimum
    assert count_triples(transversal_points(out.witness), 9) == out.value


def test_psi_checkpoint_roundtrip(tmp_path):
    path = str(tmp_path / "ckpt.json")
    partial = psi(9, budget=SearchBudget(max_nodes=20000), checkpoint=path)
    assert not partial.exact
    with open(path) as fh:
        data = json.load(fh)
    assert data["n"] == 9 and data["version"] == 1
    resumed = psi(9, checkpoint=path)
    assert resumed.exact and resumed.value == 5


def test_psi_checkpoint_mismatch(tmp_path):
    path = str(tmp_path / "ckpt.json")
    psi(7, budget=SearchBudget(max_nodes=50), checkpoint=path)
    with pytest.raises(CheckpointMismatch):
        psi(9, checkpoint=path)


def test_lex_least_examples():
    out3 = lex_least_with_count(3)
    assert out3.found and out3.witness == [0, 1, 2] == g_permutation(3)
    out5 = lex_least_with_count(5)
    assert out5.witness == [0, 1, 2, 4, 3] == g_permutation(5)
    out7 = lex_least_with_count(7)
    assert out7.witness == g_permutation(7)
    assert count_triples(transversal_points(out7.witness), 7) == 3


def test_lex_least_not_found():
    # no transversal mod 5 has exactly 1 triple (the minimum is 2)
    out = lex_least_with_count(5, target=1)
    assert not out.found and out.witness is None and out.exact
    with pytest.raises(NonPrimeModulus):
        lex_least_with_count(6)


def test_quadfree_transversal_examples():
    out5 = max_triples_quadfree_transversal(5)
    assert out5.exact and out5.value == 2
    out7 = max_triples_quadfree_transversal(7)
    assert out7.exact and out7.value == 6
    pts = transversal_points(out7.witness)
    assert count_triples(pts, 7) == 6 and count_quadruples(pts, 7) == 0


@pytest.mark.parametrize("n", range(2, 8))
def test_quadfree_transversal_bound(n):
    out = max_triples_quadfree_transversal(n)
    assert out.exact
    assert out.value <= n * (n - 1) // 6


def test_ct0_exact_small():
    assert ct0_subsets(2).value == 0
    out3 = ct0_subsets(3)
    assert out3.exact and out3.value == 12
    out4 = ct0_subsets(4)
    assert out4.exact and out4.value == 18
    assert count_triples(out4.witness, 4) == 18
    assert count_quadruples(out4.witness, 4) == 0


def test_ct0_beam_is_inexact_lower_bound():
    out = ct0_subsets(5, beam_width=8)
    assert not out.exact
    assert out.note.startswith("lower bound")
    assert count_triples(out.witness, 5) == out.value
    assert count_quadruples(out.witness, 5) == 0


def test_max_triple_free_subset():
    assert max_triple_free_subset(2).value == 4
    assert max_triple_free_subset(3).value == 4
    out4 = max_triple_free_subset(4)
    assert out4.exact and out4.value == 6
    assert len(out4.witness) == 6
    assert count_triples(out4.witness, 4) == 0
    out5 = max_triple_free_subset(5)
    assert out5.exact and out5.value == 6


def test_verify_theorem1():
    for p in (3, 5, 7, 11):
        assert verify_theorem1(p)
    assert verify_theorem1(13, samples=30)
    with pytest.raises(NonPrimeModulus):
        verify_theorem1(9)
