"""Box-relative search for fundamental roots of Gamma^{2,2}.

Roots are split into positive and negative halves by an ordering; positive
roots that are not sums of two positive roots (inside a coordinate box) are
the candidates.  ``generation_check`` then asks which positive roots are not
non-negative integer combinations of the candidates, and ``cartan_check``
tests a candidate Gram matrix against the generalised Cartan conditions.
Every answer depends on the box and says so in its result.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from .errors import ZeroOnRoot
from .gamma22 import Vec22, enumerate_roots22, inner22
from .height import HeightFunctional, height

__all__ = [
    "LexOrder",
    "LinearOrder",
    "RealLinearOrder",
    "split_positive",
    "indecomposables",
    "CandidateBasis",
    "generation_check",
    "decompose",
    "GenerationReport",
    "cartan_check",
    "Violation",
    "lex_candidates",
]


class LexOrder:
    """Positive iff the first non-zero entry of ``(k, l, m, n)`` is positive."""

    kind = "Lex"

    def is_positive(self, v) -> bool:
        for x in v:
            if x:
                return x > 0
        raise ZeroOnRoot(v, "the zero vector has no sign")


@dataclass(frozen=True)
class LinearOrder:
    """Sign of ``inner22(rho, v)``."""

    rho: Vec22
    kind = "Linear"

    def is_positive(self, v) -> bool:
        value = inner22(self.rho, v)
        if value == 0:
            raise ZeroOnRoot(v)
        return value > 0


@dataclass(frozen=True)
class RealLinearOrder:
    """Sign of a real functional, decided by interval refinement."""

    h: HeightFunctional
    max_refine: int = 200
    kind = "LinearReal"

    def is_positive(self, v) -> bool:
        exact = self.h.exact(v)
        if exact is not None:
            if exact == 0:
                raise ZeroOnRoot(v)
            return exact > 0
        prec = Fraction(1)
        for _ in range(self.max_refine):
            iv = height(self.h, v, prec)
            if iv.lo > 0:
                return True
            if iv.hi < 0:
                return False
            prec /= 2
        raise ZeroOnRoot(v, f"ordering could not be separated from zero on root {list(v)}")


def split_positive(roots, ord) -> tuple[list, list]:
    """Partition ``roots`` into (positives, negatives), keeping input order."""
    pos, neg = [], []
    for v in roots:
        (pos if ord.is_positive(v) else neg).append(v)
    return pos, neg


@dataclass(frozen=True)
class CandidateBasis:
    candidates: tuple[Vec22, ...]
    search_box: int
    gram: tuple[tuple[int, ...], ...]

    def to_json(self):
        return {
            "search_box": self.search_box,
            "candidates": [list(v) for v in self.candidates],
            "gram": [list(r) for r in self.gram],
        }


def _gram(vs) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(inner22(u, v) for v in vs) for u in vs)


def _in_box(v, box) -> bool:
    return all(abs(x) <= box for x in v)


def indecomposables(positives, box: int) -> CandidateBasis:
    """Positive roots in the box that are not the sum of two positive roots in the box.

    Candidates come out in lex order, so enlarging the box only ever deletes
    entries from the list.
    """
    pool = sorted({Vec22(*v) for v in positives if _in_box(v, box)})
    members = set(pool)
    out = []
    for v in pool:
        if not any((v - b) in members for b in pool if b != v):
            out.append(v)
    return CandidateBasis(tuple(out), box, _gram(out))


def lex_candidates(box: int) -> CandidateBasis:
    """Indecomposable lex-positive roots of the box."""
    pos, _ = split_positive(enumerate_roots22(box), LexOrder())
    return indecomposables(pos, box)


class GenerationReport(NamedTuple):
    box: int
    candidates: tuple[Vec22, ...]
    unreachable: tuple[Vec22, ...]
    checked_count: int

    def to_json(self):
        return {
            "box": self.box,
            "candidates": [list(v) for v in self.candidates],
            "unreachable": [list(v) for v in self.unreachable],
            "checked_count": self.checked_count,
        }


def _level(v) -> int:
    for i, x in enumerate(v):
        if x:
            return i
    return len(v)


def _combination_solver(candidates):
    """Write vectors as non-negative integer combinations of lex-positive candidates.

    A candidate of level ``j`` (first non-zero slot ``j``) is zero before ``j``
    and positive at ``j``.  Matching slot ``j`` of the remainder only involves
    level-``j`` candidates with bounded coefficients, so the search is finite
    and complete.  The solver returns a coefficient tuple (aligned with
    ``candidates``) or ``None``.
    """
    by_level = [[] for _ in range(4)]
    for idx, c in enumerate(candidates):
        lvl = _level(c)
        if lvl >= 4 or c[lvl] <= 0:
            raise ValueError(f"{list(c)} is not lex-positive")
        by_level[lvl].append((idx, tuple(c)))

    @lru_cache(maxsize=None)
    def solve(j: int, i: int, rem: tuple):
        # returns a tuple of (index, multiplicity) pairs, or None
        if j == 4:
            return () if not any(rem) else None
        target = rem[j]
        if target < 0:
            return None
        if target == 0:
            return solve(j + 1, 0, rem)
        group = by_level[j]
        if i == len(group):
            return None
        idx, c = group[i]
        r, mult = rem, 0
        while r[j] >= 0:
            rest = solve(j, i + 1, r)
            if rest is not None:
                return ((idx, mult),) + rest if mult else rest
            r = tuple(x - y for x, y in zip(r, c))
            mult += 1
        return None

    def run(v):
        pairs = solve(0, 0, tuple(v))
        if pairs is None:
            return None
        coeffs = [0] * len(candidates)
        for idx, mult in pairs:
            coeffs[idx] = mult
        return tuple(coeffs)

    return run


def decompose(basis: CandidateBasis, v) -> Optional[tuple[int, ...]]:
    """Non-negative coefficients expressing ``v`` over ``basis.candidates``, if any."""
    return _combination_solver(basis.candidates)(v)


def generation_check(basis: CandidateBasis, box: int, targets: Optional[Sequence] = None) -> GenerationReport:
    """Positive roots in the box that are not non-negative integer combinations of the candidates."""
    if targets is None:
        targets, _ = split_positive(enumerate_roots22(box), LexOrder())
    solver = _combination_solver(basis.candidates)
    unreachable = tuple(Vec22(*v) for v in targets if solver(v) is None)
    return GenerationReport(box, tuple(basis.candidates), unreachable, len(targets))


class Violation(NamedTuple):
    condition: str
    i: int  # 1-based row
    j: int  # 1-based column

    def to_json(self):
        return {"condition": self.condition, "i": self.i, "j": self.j}


SYMMETRY = "a_ij = a_ji"
NONPOSITIVE = "a_ij <= 0 if i != j"
INTEGRALITY = "2a_ij/a_ii in Z if a_ii > 0"


def cartan_check(M) -> list[Violation]:
    """Violations of the generalised Cartan conditions, with 1-based indices.

    Off-diagonal sign problems in a symmetric pair are reported once, at
    ``i < j``.  Diagonal entries may be zero or negative.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    A = [[Fraction(x) for x in row] for row in M]
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] != A[j][i]:
                out.append(Violation(SYMMETRY, i + 1, j + 1))
    for i in range(n):
        for j in range(n):
            if i == j or A[i][j] <= 0:
                continue
            if i > j and A[j][i] == A[i][j]:
                continue
            out.append(Violation(NONPOSITIVE, i + 1, j + 1))
    for i in range(n):
        if A[i][i] <= 0:
            continue
        for j in range(n):
            if j != i and (2 * A[i][j] / A[i][i]).denominator != 1:
                out.append(Violation(INTEGRALITY, i + 1, j + 1))
    return out
