import random

import pytest
from hypothesis import given, settings, strategies as st

from latticelab.errors import ZeroMatrix
from latticelab.gamma22 import Mat2, Vec22, enumerate_roots22, inner22, is_root22, to_sl2
from latticelab.weyl import (
    CANONICAL_ROOT,
    orthogonal_root,
    refute_all,
    rho_to_matrix,
    sl2_diagonalize,
    traceless_form,
)
from oracles import brute_orthogonal_root


def test_rho_to_matrix():
    assert rho_to_matrix((1, 2, 3, 5)).rows() == [[-2, 3], [5, 1]]
    assert rho_to_matrix((0, 0, 0, 0)).rows() == [[0, 0], [0, 0]]


def test_trace_bridge():
    rng = random.Random(3)
    roots = enumerate_roots22(3)
    for _ in range(100):
        rho = Vec22(*(rng.randint(-20, 20) for _ in range(4)))
        A = rho_to_matrix(rho)
        for a in roots:
            assert (to_sl2(a) @ A).trace == -inner22(rho, a)


@pytest.mark.parametrize(
    "A,d1,e",
    [((2, 0, 0, 4), 2, 2), ((0, 1, 1, 0), 1, -1), ((-2, 3, 5, 1), 1, -17)],
)
def test_diagonalize_examples(A, d1, e):
    tr = sl2_diagonalize(Mat2(*A))
    assert (tr.d1, tr.e) == (d1, e)
    assert (tr.P @ Mat2(*A) @ tr.Q).rows() == [[d1, 0], [0, d1 * e]]


def test_diagonal_input_untouched():
    tr = sl2_diagonalize(Mat2(2, 0, 0, 4))
    assert tr.P.rows() == tr.Q.rows() == [[1, 0], [0, 1]]


def test_zero_matrix():
    with pytest.raises(ZeroMatrix):
        sl2_diagonalize(Mat2(0, 0, 0, 0))


def _check_reduction(entries):
    A = Mat2(*entries)
    tr = sl2_diagonalize(A)
    D = tr.P @ A @ tr.Q
    assert D.a12 == D.a21 == 0
    assert D.a11 == tr.d1 > 0
    assert D.a22 == tr.d1 * tr.e
    assert tr.P.det == tr.Q.det == 1
    assert tr.d1 ** 2 * tr.e == A.det


def test_reduction_random_10000():
    rng = random.Random(10000)
    done = 0
    while done < 10000:
        entries = tuple(rng.randint(-1000, 1000) for _ in range(4))
        if any(entries):
            _check_reduction(entries)
            done += 1


@settings(max_examples=500, deadline=None)
@given(st.tuples(*[st.integers(-10**12, 10**12)] * 4))
def test_reduction_property(entries):
    if any(entries):
        _check_reduction(entries)


def test_traceless_form():
    for rho in [(1, 2, 3, 5), (4, 0, 0, 6), (0, 1, 1, 0), (-3, 7, 2, 2)]:
        P, Q, T = traceless_form(rho)
        assert T.trace == 0
        assert P.det == Q.det == 1


def test_orthogonal_root_examples():
    assert orthogonal_root((0, 0, 0, 0)).alpha == CANONICAL_ROOT == (1, -1, 0, 0)
    cert = orthogonal_root((1, 0, 0, 0))
    assert cert.alpha.l == 0 and is_root22(cert.alpha)
    # pinned output of the algorithm
    assert cert.alpha == (-1, 0, 1, -1)
    cert = orthogonal_root((1, 1, 1, 1))
    assert sum(cert.alpha) == 0
    assert brute_orthogonal_root((1, 0, 0, 0), 1) is not None
    assert brute_orthogonal_root((1, 1, 1, 1), 1) is not None


def test_certificate_json():
    cert = orthogonal_root((1, 2, 3, 5))
    assert cert.to_json() == {"rho": [1, 2, 3, 5], "alpha": list(cert.alpha), "inner": 0, "norm": 2}
    assert cert.verify()


@settings(max_examples=1000, deadline=None)
@given(st.tuples(*[st.integers(-10**9, 10**9)] * 4))
def test_orthogonal_root_property(rho):
    cert = orthogonal_root(rho)
    assert cert.verify()
    assert inner22(rho, cert.alpha) == 0
    assert is_root22(cert.alpha)
    assert to_sl2(cert.alpha).det == 1


def test_refute_all_keeps_order():
    rhos = [(1, 2, 3, 5), (0, 0, 0, 1), (7, -3, 2, 0)]
    assert [c.rho for c in refute_all(rhos)] == rhos
