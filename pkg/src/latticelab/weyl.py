"""Refuting Weyl-like vectors in Gamma^{2,2}.

For ``rho = (a, b; c, d)`` put ``A = [[-b, c], [d, a]]``.  For a root ``alpha``
with matrix ``R = to_sl2(alpha)`` one has ``tr(R A) = -(rho, alpha)``, so a root
orthogonal to ``rho`` is the same thing as an ``R`` in SL(2, Z) with
``tr(R A) = 0``.  We find one by reducing ``A`` to ``diag(d1, d1 e)`` with
determinant-one row and column operations, then shearing that to a traceless
matrix ``P' A Q'``; ``R = Q' P'`` works because ``tr(Q' P' A) = tr(P' A Q')``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ZeroMatrix
from .gamma22 import (
    Mat2,
    UnimodularMat2,
    Vec22,

    inner22,
    is_root22,
    to_sl2,
)

CANONICAL_ROOT = Vec22(1, -1, 0, 0)


@dataclass(frozen=True)
class ReductionTrace:
    """``P @ A @ Q == diag(d1, d1 * e)`` with ``P, Q`` in SL(2, Z) and ``d1 > 0``."""

    P: UnimodularMat2
    Q: UnimodularMat2
    d1: int
    e: int


@dataclass(frozen=True)
class OrthogonalityCertificate:
    rho: Vec22
    alpha: Vec22
    inner_value: int
    alpha_norm: int

    def verify(self) -> bool:
        return (
            self.inner_value == 0
            and self.alpha_norm == 2
            and inner22(self.rho, self.alpha) == 0
            and is_root22(self.alpha)
            and to_sl2(self.alpha).det == 1
        )

    def to_json(self) -> dict:
        return {
            "rho": list(self.rho),
            "alpha": list(self.alpha),
            "inner": self.inner_value,
            "norm": self.alpha_norm,
        }


def rho_to_matrix(rho) -> Mat2:
    a, b, c, d = rho
    return Mat2(-b, c, d, a)


def _mul(x, y):
    return (
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    )


_SWAP = (0, 1, -1, 0)  # rows: (r1, r2) -> (r2, -r1)
_COL_SWAP = (0, -1, 1, 0)  # columns: (c1, c2) -> (c2, -c1)


def _near(x, a):
    """Quotient with remainder of absolute value at most ``|a| / 2``."""
    q, r = divmod(x, a)
    if 2 * abs(r) > abs(a):
        q += 1
    return q


def _diagonalize(A):
    """Tuple-level reduction; returns ``(P, Q, d1, e)`` as entry tuples."""
    a, b, c, d = A
    P = (1, 0, 0, 1)
    Q = (1, 0, 0, 1)
    while True:
        if a == 0 and c == 0:
            # first column vanishes: bring the second column forward
            a, b, c, d = b, -a, d, -c
            Q = _mul(Q, _COL_SWAP)
        # Euclid down the first column
        while c != 0:
            if a != 0:
                q = _near(c, a)
                c, d = c - q * a, d - q * b
                P = _mul((1, 0, -q, 1), P)
                if c == 0:
                    break
            a, b, c, d = c, d, -a, -b
            P = _mul(_SWAP, P)
        # Euclid along the first row
        while b != 0:
            q = _near(b, a)
            b, d = b - q * a, d - q * c
            Q = _mul(Q, (1, -q, 0, 1))
            if b == 0:
                break
            a, b, c, d = b, -a, d, -c
            Q = _mul(Q, _COL_SWAP)
        if c != 0:
            continue
        if d % a == 0:
            break
        # pull d into the first row so the next pass reaches gcd(a, d)
        b = d
        P = _mul((1, 1, 0, 1), P)
    if a < 0:
        a, d = -a, -d
        P = tuple(-x for x in P)
    return P, Q, a, d // a


def sl2_diagonalize(A: Mat2) -> ReductionTrace:
    """Reduce a non-zero integer matrix to ``diag(d1, d1 e)`` by SL(2, Z) row and column moves.

    The moves are integer shears and the signed swap ``[[0, 1], [-1, 0]]``, so
    ``d1**2 * e == det(A)`` and ``d1`` is the gcd of the entries.
    """
    entries = (A.a11, A.a12, A.a21, A.a22)
    if not any(entries):
        raise ZeroMatrix("cannot diagonalise the zero matrix")
    P, Q, d1, e = _diagonalize(entries)
    return ReductionTrace(UnimodularMat2(*P), UnimodularMat2(*Q), d1, e)


def _orthogonal_alpha(rho) -> Vec22:
    a, b, c, d = rho
    if not (a or b or c or d):
        return CANONICAL_ROOT
    P, Q, _, e = _diagonalize((-b, c, d, a))
    # diag(d1, d1 e) -> add column 1 to column 2, then subtract (e + 1) x row 1 from row 2
    Pf = _mul((1, 0, -(e + 1), 1), P)
    Qf = _mul(Q, (1, 1, 0, 1))
    R = _mul(Qf, Pf)
    return Vec22(-R[0], R[3], R[1], R[2])


def orthogonal_root(rho) -> OrthogonalityCertificate:
    """A root ``alpha`` with ``(rho, alpha) = 0``; exists for every ``rho`` in Gamma^{2,2}."""
    rho = Vec22(*rho)
    alpha = _orthogonal_alpha(rho)
    cert = OrthogonalityCertificate(rho, alpha, inner22(rho, alpha), alpha.norm())
    if not cert.verify():
        raise AssertionError(f"internal error: bad certificate {cert.to_json()}")
    return cert


def traceless_form(rho) -> tuple[UnimodularMat2, UnimodularMat2, Mat2]:
    """``(P', Q', P' A Q')`` with the last matrix traceless; for inspection and tests."""
    A = rho_to_matrix(rho)
    trace = sl2_diagonalize(A)
    Pf = UnimodularMat2(1, 0, -(trace.e + 1), 1) @ trace.P
    Qf = trace.Q @ UnimodularMat2(1, 1, 0, 1)
    return Pf, Qf, Pf @ A @ Qf


def refute_all(rhos):
    """Certificates for an iterable of candidates, in input order."""
    return [orthogonal_root(r) for r in rhos]


__all__ = [
    "CANONICAL_ROOT",
    "OrthogonalityCertificate",
    "ReductionTrace",
    "orthogonal_root",
    "refute_all",
    "rho_to_matrix",
    "sl2_diagonalize",
    "traceless_form",
]
