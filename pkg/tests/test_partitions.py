import threading

import pytest
from hypothesis import given, settings, strategies as st

from latticelab.errors import NotEvenSelfDual
from latticelab.lattice import GramLattice, make_gamma
from latticelab.partitions import (
    PartitionTable,
    colored_partitions,
    is_algebra_root,
    root_multiplicity,
)
from oracles import colored_partitions_by_listing, partitions_bounded


def test_examples():
    assert all(colored_partitions(k, 0) == 1 for k in range(1, 30))
    assert colored_partitions(1, 5) == 7
    assert colored_partitions(3, 2) == 9
    assert colored_partitions(5, -1) == 0


def test_classic_partition_numbers():
    # OEIS A000041
    assert [colored_partitions(1, m) for m in range(15)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135]
    assert colored_partitions(1, 100) == 190569292


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_matches_convolution_oracle(k):
    for m in range(31):
        assert colored_partitions(k, m) == partitions_bounded(m, k)


@pytest.mark.parametrize("k,m", [(1, 8), (2, 7), (3, 6), (4, 5), (5, 4)])
def test_matches_listing_oracle(k, m):
    assert colored_partitions(k, m) == colored_partitions_by_listing(m, k)


def _truncated_product(k, M):
    """prod_{j <= M} (1 - q^j)^k truncated at q^M, by repeated multiplication."""
    series = [1] + [0] * M
    for j in range(1, M + 1):
        for _ in range(k):
            series = [series[i] - (series[i - j] if i >= j else 0) for i in range(M + 1)]
    return series


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_generating_identity(k):
    M = 20
    prod = _truncated_product(k, M)
    p = [colored_partitions(k, m) for m in range(M + 1)]
    conv = [sum(p[i] * prod[n - i] for i in range(n + 1)) for n in range(M + 1)]
    assert conv == [1] + [0] * M


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(0, 40))
def test_positive_and_monotone(k, m):
    assert colored_partitions(k, m) > 0
    assert colored_partitions(k, m + 1) >= colored_partitions(k, m)


def test_big_integers():
    value = colored_partitions(25, 200)
    assert value > 2**64
    assert value == partitions_bounded(200, 25)


def test_multiplicity_examples():
    assert root_multiplicity(4, 2) == 1
    assert root_multiplicity(4, 0) == 2
    assert root_multiplicity(4, -2) == 6


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 30), st.integers(-40, 40).map(lambda s: 2 * s))
def test_multiplicity_properties(d, s):
    m = root_multiplicity(d, s)
    assert m >= 0
    if s == 2:
        assert m == 1
    if s > 2:
        assert m == 0


def test_multiplicity_preconditions():
    with pytest.raises(ValueError):
        root_multiplicity(1, 2)
    with pytest.raises(ValueError):
        root_multiplicity(4, 1)
    with pytest.raises(ValueError):
        colored_partitions(0, 3)
    with pytest.raises(ValueError):
        PartitionTable(0)


def test_is_algebra_root():
    L = make_gamma(2, 2)
    assert is_algebra_root(L, (1, -1, 0, 0)) == (True, 1)
    assert is_algebra_root(L, (1, 0, 0, 0)) == (True, 2)
    assert is_algebra_root(L, (0, 0, 0, 0)).is_root is False
    assert is_algebra_root(L, (2, -2, 0, 0)) == (False, 0)  # norm 8
    st_ = is_algebra_root(L, (1, 1, 0, 0))  # norm -2
    assert st_ == (True, root_multiplicity(4, -2))
    with pytest.raises(NotEvenSelfDual):
        is_algebra_root(GramLattice(((2, 1), (1, 2))), (1, 0))


def test_norm_criterion_on_gamma22():
    L = make_gamma(2, 2)
    for v in [(1, -1, 0, 0), (2, -1, 1, 1), (1, 0, 0, 0), (3, 2, 1, 1), (1, -3, 0, 0), (2, -2, 1, -1)]:
        n = -2 * (v[0] * v[1] + v[2] * v[3])
        assert is_algebra_root(L, v).is_root == (n <= 2)


def test_table_concurrent_fill():
    table = PartitionTable(6)
    results = []

    def worker(m):
        results.append((m, table[m]))

    threads = [threading.Thread(target=worker, args=(m,)) for m in (50, 10, 80, 3, 80, 65)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    for m, v in results:
        assert v == partitions_bounded(m, 6)
