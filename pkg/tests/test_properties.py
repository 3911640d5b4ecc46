"""Randomized checks of the structural facts the constructions rely on."""

import random

from hypothesis import given, strategies as st

from lemma_checks import (
    check_certificate,
    check_contraction_monotone,
    check_disjoint_union,
    check_reattach,
    check_restriction,
    check_terminal_edges,
    check_two_views,
)

seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_equivalence_restricts_to_subsets_and_lower_thresholds(seed):
    check_restriction(random.Random(seed))


@given(seeds)
def test_equivalence_survives_added_terminal_edges(seed):
    check_terminal_edges(random.Random(seed))


@given(seeds)
def test_equivalence_composes_over_disjoint_unions(seed):
    check_disjoint_union(random.Random(seed))


@given(seeds)
def test_delete_promote_sparsify_reattach(seed):
    check_reattach(random.Random(seed))


@given(seeds)
def test_sparse_certificate_preserves_all_thresholded_cuts(seed):
    check_certificate(random.Random(seed))


@given(seeds)
def test_contraction_never_decreases_mincuts(seed):
    check_contraction_monotone(random.Random(seed))


@given(seeds)
def test_bipartition_and_disjoint_subset_views_agree(seed):
    check_two_views(random.Random(seed))
