"""Integral lattices given by an exact Gram matrix.

A lattice vector is a plain tuple of Python ints holding coefficients over
the basis of the Gram matrix.  All arithmetic is exact; floating point only
ever appears as a starting guess that is corrected with integer checks.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegenerateForm, DimensionMismatch, NotEvenSelfDual

Vector = tuple[int, ...]

# Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4.
_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))

# Suffix block size for the vectorised brute-force enumerator.
_BLOCK_LIMIT = 200_000


class LatticeClass(NamedTuple):
    is_even: bool
    abs_det: int
    signature: tuple[int, int]


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def inertia(matrix: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Return ``(positive, negative, zero)`` counts of a symmetric form.

    Symmetric Gaussian elimination over the rationals.  When every remaining
    diagonal entry vanishes, a basis vector is replaced by ``e_i + e_j`` for a
    non-zero off-diagonal entry, which creates the pivot ``2 a_ij``.  Each step
    is a congruence, so Sylvester's law of inertia applies.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i, j in itertools.combinations(active, 2) if a[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            for t in active:
                a[i][t] += a[j][t]
            for t in active:
                a[t][i] += a[t][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        prow = a[piv]
        for r in active:
            f = a[r][piv] / d
            if f:
                row = a[r]
                for c in active:
                    row[c] -= f * prow[c]
    return pos, neg, n - pos - neg


@dataclass(frozen=True)
class GramLattice:
    """Lattice ``Z^rank`` with the bilinear form given by ``gram``.

    The Gram matrix must be square, symmetric, integral and non-degenerate.
    """

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(rows)
        if n == 0:
            raise ValueError("a lattice needs rank at least 1")
        if any(len(row) != n for row in rows):
            raise DimensionMismatch("Gram matrix must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"Gram matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "gram", rows)
        if self.det == 0:
            raise DegenerateForm("Gram matrix has determinant 0")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def det(self) -> int:
        return bareiss_det(self.gram)

    @cached_property
    def classification(self) -> LatticeClass:
        return classify(self)

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, obj: dict) -> "GramLattice":
        lat = cls(tuple(tuple(row) for row in obj["gram"]))
        if "rank" in obj and obj["rank"] != lat.rank:
            raise DimensionMismatch(f"rank {obj['rank']} does not match Gram size {lat.rank}")
        return lat


def make_standard(kind: str) -> GramLattice:
    """``"II11"`` (form ``-2 x1 x2``) or ``"E8"`` (Cartan matrix, simple-root basis)."""
    if kind == "II11":
        return GramLattice(((0, -1), (-1, 0)))
    if kind == "E8":
        g = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
        for a, b in _E8_EDGES:
            g[a - 1][b - 1] = g[b - 1][a - 1] = -1
        return GramLattice(tuple(map(tuple, g)))
    raise ValueError(f"unknown standard lattice {kind!r}; expected 'II11' or 'E8'")


def direct_sum(a: GramLattice, b: GramLattice) -> GramLattice:
    n, m = a.rank, b.rank
    rows = [row + (0,) * m for row in a.gram]
    rows += [(0,) * n + row for row in b.gram]
    return GramLattice(tuple(rows))


def make_gamma(p: int, q: int) -> GramLattice:
    """The even self-dual lattice of signature ``(p, q)``.

    Built as ``(p - q) / 8`` copies of E8 followed by ``q`` copies of II11.
    """
    if not (p >= q >= 0 and p + q >= 1):
        raise ValueError(f"need p >= q >= 0 and p + q >= 1, got ({p}, {q})")
    if (p - q) % 8:
        raise NotEvenSelfDual(
            f"no even self-dual lattice of signature ({p}, {q}): p - q = {p - q} is not 0 mod 8"
        )
    parts = [make_standard("E8")] * ((p - q) // 8) + [make_standard("II11")] * q
    result = parts[0]
    for part in parts[1:]:
        result = direct_sum(result, part)
    return result


def _check_dim(L: GramLattice, *vectors):
    for v in vectors:
        if len(v) != L.rank:
            raise DimensionMismatch(f"vector of length {len(v)} used with a rank {L.rank} lattice")


def inner(L: GramLattice, x: Sequence[int], y: Sequence[int]) -> int:
    _check_dim(L, x, y)
    total = 0
    for xi, row in zip(x, L.gram):
        if xi:
            total += xi * sum(g * yj for g, yj in zip(row, y))
    return total


def norm(L: GramLattice, x: Sequence[int]) -> int:
    return inner(L, x, x)


def classify(L: GramLattice) -> LatticeClass:
    det = L.det
    if det == 0:
        raise DegenerateForm("Gram matrix has determinant 0")
    # For an integral symmetric form, x.x = sum g_ii x_i^2 + 2 * (...), so
    # evenness is decided by the diagonal.
    is_even = all(L.gram[i][i] % 2 == 0 for i in range(L.rank))
    pos, neg, zero = inertia(L.gram)
    if zero:
        raise DegenerateForm("form has a null direction")
    return LatticeClass(is_even, abs(det), (pos, neg))


def enumerate_norm(L: GramLattice, target: int, box: int) -> list[Vector]:
    """All non-zero vectors with coordinates in ``[-box, box]`` and norm ``target``.

    Definite forms use an exact Fincke-Pohst search inside the box; indefinite
    forms fall back to a vectorised scan of the whole box.  Output is sorted
    lexicographically.
    """
    if box < 0:
        raise ValueError("box must be non-negative")
    if box == 0:
        return []
    pos, neg = L.classification.signature
    if neg == 0:
        found = _enumerate_definite(L.gram, target, box)
    elif pos == 0:
        flipped = tuple(tuple(-g for g in row) for row in L.gram)
        found = _enumerate_definite(flipped, -target, box)
    else:
        found = _enumerate_box(L.gram, target, box)
    return sorted(v for v in found if any(v))


def _ldl(gram):
    """``Q(x) = sum_i d[i] * (x_i + sum_{j>i} u[i][j] x_j)^2`` for definite ``gram``."""
    n = len(gram)
    d = [Fraction(0)] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = Fraction(gram[i][i]) - sum(d[k] * u[k][i] ** 2 for k in range(i))
        for j in range(i + 1, n):
            u[i][j] = (Fraction(gram[i][j]) - sum(d[k] * u[k][i] * u[k][j] for k in range(i))) / d[i]
    return d, u


def _floor_plus_sqrt(c: Fraction, r: Fraction) -> int:
    """``floor(c + sqrt(r))`` exactly, for rational ``c`` and ``r >= 0``."""

    def below(x):
        t = x - c
        return t <= 0 or t * t <= r

    x = math.floor(float(c) + math.sqrt(float(r)))
    while not below(x):
        x -= 1
    while below(x + 1):
        x += 1
    return x


def _enumerate_definite(gram, target, box):
    if target < 0:
        return []
    n = len(gram)
    d, u = _ldl(gram)
    x = [0] * n
    out = []

    def search(i, budget):
        if i < 0:
            v = tuple(x)
            if _quad(gram, v) == target:
                out.append(v)
            return
        center = -sum(u[i][j] * x[j] for j in range(i + 1, n))
        r = budget / d[i]
        lo = max(-box, -_floor_plus_sqrt(-center, r))
        hi = min(box, _floor_plus_sqrt(center, r))
        for xi in range(lo, hi + 1):
            x[i] = xi
            rest = budget - d[i] * (xi - center) ** 2
            if rest >= 0:
                search(i - 1, rest)
        x[i] = 0

    search(n - 1, Fraction(target))
    return out


def _quad(gram, v):
    return sum(vi * sum(g * vj for g, vj in zip(row, v)) for vi, row in zip(v, gram) if vi)


def _enumerate_box(gram, target, box):
    n = len(gram)
    width = 2 * box + 1
    bound = box * box * sum(abs(g) for row in gram for g in row)
    if bound + abs(target) >= 2**62:
        return [
            v for v in itertools.product(range(-box, box + 1), repeat=n) if _quad(gram, v) == target
        ]
    s = max(1, min(n, int(math.log(_BLOCK_LIMIT) / math.log(width))))
    p = n - s
    G = np.array(gram, dtype=np.int64)
    rng = np.arange(-box, box + 1, dtype=np.int64)
    Y = np.stack(np.meshgrid(*([rng] * s), indexing="ij"), axis=-1).reshape(-1, s)
    q_suffix = np.einsum("ij,jk,ik->i", Y, G[p:, p:], Y)
    cross = G[:p, p:]
    head = G[:p, :p]
    out = []
    for prefix in itertools.product(range(-box, box + 1), repeat=p):
        x = np.array(prefix, dtype=np.int64)
        const = int(x @ head @ x) if p else 0
        vals = q_suffix + 2 * (Y @ (x @ cross)) + const if p else q_suffix
        for idx in np.flatnonzero(vals == target):
            out.append(prefix + tuple(int(c) for c in Y[idx]))
    return out
