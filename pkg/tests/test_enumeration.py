from __future__ import annotations

import itertools
import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abctree.enumeration import (
    FreeTreeCursor,
    SearchResult,
    WorkRange,
    brute_force_min_abc,
    check_degree_sequence,
    count_free_trees,
    free_tree_sequences,
    free_trees,
    labeled_trees_with_degrees,
    merge_results,
    plan_partitions,
    prufer_decode,
    prufer_encode,
    scan_free_trees,
)
from abctree.graph import (DomainError, Tree, abc_index, canonical_form, path_tree, star_tree,
                           tree_from_levels)

from conftest import prufer_census_by_degrees, random_tree

# OEIS A000055, n = 1..20
FREE_TREE_COUNTS = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741,
                    19320, 48629, 123867, 317955, 823065]


def prufer_census(n: int) -> int:
    """Classes among all n^(n-2) labeled trees."""
    if n <= 2:
        return 1
    return len({canonical_form(prufer_decode(c, n)) for c in itertools.product(range(n), repeat=n - 2)})


def test_counts_match_table():
    for n, want in enumerate(FREE_TREE_COUNTS, start=1):
        assert count_free_trees(n) == want


def test_generator_matches_table_up_to_16():
    for n in range(1, 17):
        assert sum(1 for _ in free_tree_sequences(n)) == FREE_TREE_COUNTS[n - 1]


@pytest.mark.parametrize("n", range(1, 8))
def test_census_matches_full_prufer_oracle(n):
    assert sum(1 for _ in free_trees(n)) == prufer_census(n)


@pytest.mark.parametrize("n", range(1, 11))
def test_census_matches_prufer_oracle_by_degrees(n):
    assert sum(1 for _ in free_trees(n)) == prufer_census_by_degrees(n)


def test_no_repeated_classes_up_to_12():
    for n in range(1, 13):
        forms = [canonical_form(t) for t in free_trees(n)]
        assert len(forms) == len(set(forms))


def test_generation_order_is_deterministic():
    assert list(map(tuple, free_tree_sequences(11))) == list(map(tuple, free_tree_sequences(11)))


def test_zero_order_rejected():
    with pytest.raises(DomainError):
        list(free_tree_sequences(0))


def test_cursor_skip_matches_stream():
    seqs = [tuple(s) for s in free_tree_sequences(12)]
    for start in (0, 1, 17, 300, len(seqs) - 1):
        c = FreeTreeCursor(12)
        c.skip(start)
        assert tuple(c.seq) == seqs[start]


# --- Prüfer codes ----------------------------------------------------------

@pytest.mark.parametrize("n", range(2, 8))
def test_prufer_round_trip_exhaustive(n):
    for code in itertools.product(range(n), repeat=n - 2):
        t = prufer_decode(code, n)
        assert prufer_encode(t) == list(code)
        assert prufer_decode(prufer_encode(t), n) == t


def test_prufer_round_trip_n8_sampled():
    rng = random.Random(8)
    for _ in range(3000):
        code = [rng.randrange(8) for _ in range(6)]
        t = prufer_decode(code, 8)
        assert prufer_decode(prufer_encode(t), 8) == t


@given(st.integers(3, 40), st.randoms(use_true_random=False))
def test_prufer_multiplicity_is_degree_minus_one(n, rng):
    t = random_tree(n, rng)
    counts = Counter(prufer_encode(t))
    assert all(counts[v] == t.degrees[v] - 1 for v in range(n))


def test_labeled_by_degrees_examples():
    assert len(list(labeled_trees_with_degrees((2, 2, 1, 1)))) == 2
    stars = list(labeled_trees_with_degrees((3, 1, 1, 1)))
    assert len(stars) == 1 and canonical_form(stars[0]) == canonical_form(star_tree(4))
    (edge,) = labeled_trees_with_degrees((1, 1))
    assert edge.edges == ((0, 1),)


def test_labeled_by_degrees_counts():
    # multinomial (n-2)! / prod (d_i - 1)!
    for ds in [(3, 3, 2, 1, 1, 1, 1), (4, 2, 2, 1, 1, 1, 1), (2, 2, 2, 2, 1, 1)]:
        n = len(ds)
        want = math.factorial(n - 2)
        for d in ds:
            want //= math.factorial(d - 1)
        got = list(labeled_trees_with_degrees(ds))
        assert len(got) == want
        assert all(t.degrees == ds for t in got)


@pytest.mark.parametrize("ds", [(2, 2, 2), (0, 2), (3, 1, 1), ()])
def test_unrealizable_degree_sequences(ds):
    with pytest.raises(DomainError):
        check_degree_sequence(ds)


# --- brute force -----------------------------------------------------------

def test_brute_small_examples():
    r4 = brute_force_min_abc(4)
    assert r4.abc_min == pytest.approx(3 / math.sqrt(2), abs=1e-12)
    assert r4.trees == (canonical_form(path_tree(4)),)
    assert r4.examined == 2
    r5 = brute_force_min_abc(5)
    assert r5.abc_min == pytest.approx(2.82842712, abs=1e-8)
    assert r5.trees == (canonical_form(path_tree(5)),) and r5.examined == 3


def test_brute_cap_and_domain():
    with pytest.raises(DomainError):
        brute_force_min_abc(21)
    with pytest.raises(DomainError):
        brute_force_min_abc(3)


def test_brute_values_are_attained(brute_cache):
    for n in range(4, 15):
        res = brute_cache(n)
        for seq in res.trees:
            assert abs(abc_index(tree_from_levels(seq)) - res.abc_min) <= 1e-12


def test_brute_minimum_is_global_small():
    for n in range(4, 10):
        best = min(abc_index(t) for t in free_trees(n))
        assert brute_force_min_abc(n).abc_min == pytest.approx(best, abs=1e-12)


@pytest.mark.parametrize("n", [10, 12, 14])
@pytest.mark.parametrize("parts", [1, 2, 3, 7])
def test_partition_union_equals_full_scan(brute_cache, n, parts):
    full = brute_cache(n)
    merged = merge_results([scan_free_trees(n, p) for p in plan_partitions(n, parts)])
    assert merged.payload() == full.payload()


def test_partition_without_seed_matches():
    full = scan_free_trees(11)
    parts = [WorkRange(0, 100), WorkRange(100, 101), WorkRange(101, None)]
    assert merge_results([scan_free_trees(11, p) for p in parts]).payload() == full.payload()


def test_merge_order_irrelevant():
    results = [scan_free_trees(12, p) for p in plan_partitions(12, 5)]
    a = merge_results(results).payload()
    b = merge_results(results[::-1]).payload()
    c = merge_results([merge_results(results[:2]), merge_results(results[2:])]).payload()
    assert a == b == c


def test_merge_rejects_mixed():
    a = SearchResult(10, 1.0, ((0,),), 1, method="brute", values=(1.0,))
    b = SearchResult(11, 1.0, ((0,),), 1, method="brute", values=(1.0,))
    with pytest.raises(ValueError):
        merge_results([a, b])
    with pytest.raises(ValueError):
        merge_results([])


@settings(max_examples=25, deadline=None)
@given(st.integers(8, 13), st.lists(st.floats(0, 1), min_size=1, max_size=5))
def test_random_cut_points_reproduce_scan(n, cuts):
    total = count_free_trees(n)
    bounds = sorted({0, total, *(int(c * total) for c in cuts)})
    parts = [WorkRange(a, b) for a, b in zip(bounds, bounds[1:])]
    merged = merge_results([scan_free_trees(n, p) for p in parts])
    assert merged.payload() == scan_free_trees(n).payload()
