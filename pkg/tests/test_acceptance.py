"""Acceptance criteria 1-8; the run ends with one PASS/FAIL line per criterion."""
import itertools
import random
import time
from fractions import Fraction

import pytest

from latticelab.errors import NotEvenSelfDual, ZeroOnRoot
from latticelab.gamma22 import Vec22, enumerate_roots22, from_sl2, inner22, is_root22, to_sl2
from latticelab.height import HeightFunctional, height, small_height_root
from latticelab.lattice import classify, enumerate_norm, inner, make_gamma, make_standard
from latticelab.partitions import colored_partitions, root_multiplicity
from latticelab.prospector import NONPOSITIVE, LinearOrder, cartan_check, lex_candidates, split_positive
from latticelab.reflections import orbit, reflect, simple_roots
from latticelab.weyl import orthogonal_root

import snapshot
from evidence import lex_evidence
from oracles import brute_roots22, partitions_bounded


@pytest.mark.criterion(1, "every rho in box 10 has an exactly orthogonal root (194481 cases, < 10 s)")
def test_criterion_1_weyl_refutation_totality():
    span = range(-10, 11)
    start = time.perf_counter()
    count = 0
    for rho in itertools.product(span, repeat=4):
        cert = orthogonal_root(rho)
        alpha = cert.alpha
        assert inner22(rho, alpha) == 0
        assert alpha.norm() == 2
        assert to_sl2(alpha).det == 1
        count += 1
    elapsed = time.perf_counter() - start
    assert count == 194481
    assert elapsed < 10, f"took {elapsed:.2f} s"


@pytest.mark.criterion(2, "h = (0, sqrt 2, 0, 1) has certified small heights for eps = 1e-1 .. 1e-6 (< 1 s)")
def test_criterion_2_height_accumulation():
    h = HeightFunctional.of(0, "sqrt(2)", 0, 1)
    start = time.perf_counter()
    results = [small_height_root(h, Fraction(1, 10**e)) for e in range(1, 7)]
    elapsed = time.perf_counter() - start
    for e, out in enumerate(results, 1):
        eps = Fraction(1, 10**e)
        assert out.variant == "SmallNonzero"
        assert is_root22(out.alpha)
        assert not out.enclosure.contains_zero() and out.enclosure.within(eps)
        # independent re-enclosure at much finer precision
        iv = height(h, out.alpha, eps / 10**6)
        assert not iv.contains_zero() and iv.within(eps)
    assert elapsed < 1, f"took {elapsed:.2f} s"


@pytest.mark.criterion(3, "colored partitions match a convolution oracle (k <= 4, m <= 30); mult(4, 2/0/-2) = 1/2/6")
def test_criterion_3_multiplicity_oracle():
    for k in range(1, 5):
        for m in range(31):
            assert colored_partitions(k, m) == partitions_bounded(m, k), (k, m)
    assert [root_multiplicity(4, s) for s in (2, 0, -2)] == [1, 2, 6]


@pytest.mark.criterion(4, "root <-> SL(2,Z) bijection on box 20; 20 and 52 roots at boxes 1 and 2")
def test_criterion_4_sl2_bijection():
    roots = enumerate_roots22(20)
    assert roots and len(set(roots)) == len(roots)
    for v in roots:
        M = to_sl2(v)
        assert M.det == 1
        assert from_sl2(M) == v
    assert len(enumerate_roots22(1)) == 20
    assert len(enumerate_roots22(2)) == 52
    for box in (1, 2, 3):
        assert sorted(enumerate_roots22(box)) == sorted(brute_roots22(box))


@pytest.mark.criterion(5, "reflections: involution, isometry, roots to roots (box 5 x 1000 gammas); E8 has 240 roots in one orbit")
def test_criterion_5_reflections():
    L = make_gamma(2, 2)
    roots = enumerate_roots22(5)
    root_set = set(roots)
    rng = random.Random(20240501)
    gammas = [tuple(rng.randint(-50, 50) for _ in range(4)) for _ in range(1000)]
    partners = gammas[1:] + gammas[:1]
    for alpha in roots:
        for g, g2 in zip(gammas, partners):
            w = reflect(L, alpha, g)
            assert reflect(L, alpha, w) == g
            assert inner(L, w, reflect(L, alpha, g2)) == inner(L, g, g2)
            assert inner22(w, w) == inner22(g, g)
        for beta in roots:
            image = reflect(L, alpha, beta)
            assert is_root22(image)
            if max(map(abs, image)) <= 5:
                assert Vec22(*image) in root_set

    E8 = make_standard("E8")
    e8_roots = enumerate_norm(E8, 2, 6)
    assert len(e8_roots) == 240
    start = e8_roots[0]
    result = orbit(E8, start, simple_roots(E8), 6)
    assert len(result.vectors) == 240 and not result.clipped
    assert set(result.vectors) == set(map(tuple, e8_roots))


@pytest.mark.criterion(6, "make_gamma classifies six signatures correctly and rejects (9, 2) (< 1 s)")
def test_criterion_6_classification():
    start = time.perf_counter()
    for p, q in [(1, 1), (2, 2), (8, 0), (9, 1), (10, 2), (17, 1)]:
        cls = classify(make_gamma(p, q))
        assert cls.is_even and cls.abs_det == 1 and cls.signature == (p, q), (p, q, cls)
    with pytest.raises(NotEvenSelfDual):
        make_gamma(9, 2)
    assert time.perf_counter() - start < 1


@pytest.mark.criterion(7, "Linear(rho) meets ZeroOnRoot on 100 seeded rho; lex candidate and Cartan reports are deterministic and snapshotted")
def test_criterion_7_prospector_evidence():
    rng = random.Random(7)
    box_roots = enumerate_roots22(10)
    for _ in range(100):
        rho = Vec22(*(rng.randint(-10, 10) for _ in range(4)))
        cert = orthogonal_root(rho)
        with pytest.raises(ZeroOnRoot):
            split_positive(box_roots + [cert.alpha], LinearOrder(rho))

    data = lex_evidence()
    assert lex_evidence() == data
    snapshot.check("lex_candidates_boxes_1_5", data)
    for box in range(1, 6):
        violations = cartan_check(lex_candidates(box).gram)
        listed = data[str(box)]["positive_off_diagonal"]
        assert listed == [[v.i, v.j] for v in violations if v.condition == NONPOSITIVE]
        assert listed, f"box {box}: expected positive off-diagonal entries"


@pytest.mark.criterion(8, "prod (1 - q^m)^k times the p_k series is 1 up to q^20 (k <= 5)")
def test_criterion_8_generating_identity():
    order = 20
    for k in range(1, 6):
        product = [1] + [0] * order
        for m in range(1, order + 1):
            for _ in range(k):
                # multiply by (1 - q^m), truncated
                product = [c - (product[i - m] if i >= m else 0) for i, c in enumerate(product)]
        series = [colored_partitions(k, i) for i in range(order + 1)]
        result = [sum(product[j] * series[i - j] for j in range(i + 1)) for i in range(order + 1)]
        assert result == [1] + [0] * order, k
