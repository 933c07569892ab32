import itertools

import pytest

from unruhcap import combinat
from unruhcap.combinat import (
    OccupationVector,
    block_dimension,
    block_normalizer,
    compositions,
    eigen_multiplicity,
)


def brute_compositions(d, k):
    """Exhaustive enumeration oracle over the full integer box."""
    return [c for c in itertools.product(range(k + 1), repeat=d) if sum(c) == k]


def test_compositions_d2_k2_order():
    assert [ov.entries for ov in compositions(2, 2)] == [(2, 0), (1, 1), (0, 2)]


def test_compositions_zero_weight():
    assert [ov.entries for ov in compositions(3, 0)] == [(0, 0, 0)]


def test_compositions_match_enumeration_oracle():
    for d, k in [(3, 2), (2, 5), (4, 3)]:
        got = [ov.entries for ov in compositions(d, k)]
        assert sorted(got) == sorted(brute_compositions(d, k))
        assert len(set(got)) == len(got)
        assert got == sorted(got, reverse=True)  # lexicographic descending


def test_compositions_d3_k2_count():
    assert len(compositions(3, 2)) == len(brute_compositions(3, 2)) == 6


def test_compositions_rejects_bad_arguments():
    with pytest.raises(ValueError):
        compositions(1, 3)
    with pytest.raises(ValueError):
        compositions(3, -1)


def test_block_dimension_examples():
    assert block_dimension(2, 1) == 2
    # Exact factorial-ratio oracle for C(14, 4).
    import math

    assert block_dimension(5, 10) == math.factorial(14) // (math.factorial(4) * math.factorial(10)) == 1001
    for d in range(2, 7):
        assert block_dimension(d, 1) == d


def test_block_dimension_counts_compositions():
    for d in range(2, 6):
        for k in range(0, 9):
            assert block_dimension(d, k) == len(compositions(d, k))


def test_block_normalizer_examples():
    assert block_normalizer(2, 2) == 3
    for d in range(2, 7):
        assert block_normalizer(d, 1) == 1
    # Trace-identity oracle: M = sum over compositions of the first entry.
    trace_sum = sum(c[0] for c in brute_compositions(3, 4))
    assert trace_sum == 20
    assert block_normalizer(3, 4) == trace_sum


def test_eigen_multiplicity_examples():
    assert eigen_multiplicity(2, 5, 3) == 1
    # Oracle: number of length-(d-1) compositions of k - b.
    assert eigen_multiplicity(3, 2, 1) == len(brute_compositions(2, 1)) == 2
    for d in range(2, 6):
        for k in range(1, 7):
            assert eigen_multiplicity(d, k, k) == 1


def test_eigen_multiplicity_rejects_out_of_range():
    for b in (0, 6, -1):
        with pytest.raises(ValueError):
            eigen_multiplicity(3, 5, b)


def test_trace_identity_exact():
    for d in range(2, 7):
        for k in range(1, 13):
            total = sum(b * eigen_multiplicity(d, k, b) for b in range(1, k + 1))
            assert total == block_normalizer(d, k)


def test_multiplicity_sum_counts_occupied_first_mode():
    for d in range(2, 6):
        for k in range(1, 9):
            occupied = sum(1 for c in brute_compositions(d, k) if c[0] >= 1)
            total = sum(eigen_multiplicity(d, k, b) for b in range(1, k + 1))
            assert total == occupied == block_dimension(d, k - 1)


def test_occupation_vector_validation():
    ov = OccupationVector((3, 0, 1))
    assert ov.weight == 4 and ov.dimension == 3
    with pytest.raises(ValueError):
        OccupationVector((3,))
    with pytest.raises(ValueError):
        OccupationVector((1, -1))


def test_composition_matrix_is_cached_and_readonly():
    mat = combinat.composition_matrix(3, 4)
    assert mat is combinat.composition_matrix(3, 4)
    with pytest.raises(ValueError):
        mat[0, 0] = 7
