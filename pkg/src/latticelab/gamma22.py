"""The lattice Gamma^{2,2} = II11 + II11 in double light-cone coordinates.

A vector ``(k, l; m, n)`` has norm ``-2kl - 2mn``, so the roots (norm 2) are
the integer solutions of ``kl + mn = -1``.  Roots correspond one-to-one to
matrices in SL(2, Z) via ``(k, l; m, n) <-> [[-k, m], [n, l]]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import NotARoot, NotCoprime, NotUnimodular


class Vec22(NamedTuple):
    k: int
    l: int
    m: int
    n: int

    # Vector arithmetic replaces tuple concatenation on purpose.
    def __add__(self, other):
        return Vec22(self.k + other[0], self.l + other[1], self.m + other[2], self.n + other[3])

    def __sub__(self, other):
        return Vec22(self.k - other[0], self.l - other[1], self.m - other[2], self.n - other[3])

    def __neg__(self):
        return Vec22(-self.k, -self.l, -self.m, -self.n)

    def __mul__(self, t):
        return Vec22(t * self.k, t * self.l, t * self.m, t * self.n)

    __rmul__ = __mul__

    def swap_blocks(self) -> "Vec22":
        """``(k, l; m, n) -> (m, n; k, l)``."""
        return Vec22(self.m, self.n, self.k, self.l)

    def norm(self) -> int:
        return -2 * (self.k * self.l + self.m * self.n)


@dataclass(frozen=True)
class Mat2:
    """2x2 integer matrix ``[[a11, a12], [a21, a22]]``."""

    a11: int
    a12: int
    a21: int
    a22: int

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def trace(self) -> int:
        return self.a11 + self.a22

    def rows(self):
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def __matmul__(self, other: "Mat2") -> "Mat2":
        entries = (
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )
        if isinstance(self, UnimodularMat2) and isinstance(other, UnimodularMat2):
            return UnimodularMat2(*entries)
        return Mat2(*entries)

    def __neg__(self):
        return type(self)(-self.a11, -self.a12, -self.a21, -self.a22)


@dataclass(frozen=True)
class UnimodularMat2(Mat2):
    """Element of SL(2, Z); the determinant is checked on construction."""

    def __post_init__(self):
        if self.det != 1:
            raise NotUnimodular(f"determinant {self.det} != 1 for {self.rows()}")


IDENTITY = UnimodularMat2(1, 0, 0, 1)


def inner22(u, v) -> int:
    """Polarisation of ``-2kl - 2mn``."""
    return -(u[0] * v[1] + u[1] * v[0] + u[2] * v[3] + u[3] * v[2])


def is_root22(v) -> bool:
    return v[0] * v[1] + v[2] * v[3] == -1


def to_sl2(v) -> UnimodularMat2:
    if not is_root22(v):
        raise NotARoot(f"{list(v)} has norm {-2 * (v[0] * v[1] + v[2] * v[3])}, not 2")
    k, l, m, n = v
    return UnimodularMat2(-k, m, n, l)


def from_sl2(M: Mat2) -> Vec22:
    if M.det != 1:
        raise NotUnimodular(f"determinant {M.det} != 1 for {M.rows()}")
    return Vec22(-M.a11, M.a22, M.a12, M.a21)


def enumerate_roots22(box: int) -> list[Vec22]:
    """All roots with every coordinate in ``[-box, box]``, in lex order."""
    if box < 0:
        raise ValueError("box must be non-negative")
    span = range(-box, box + 1)
    out = []
    for k in span:
        for l in span:
            rest = -1 - k * l  # required value of m * n
            for m in span:
                if m == 0:
                    if rest == 0:
                        out.extend(Vec22(k, l, 0, n) for n in span)
                elif rest % m == 0 and -box <= rest // m <= box:
                    out.append(Vec22(k, l, m, rest // m))
    return out


@dataclass(frozen=True)
class RootFamily:
    """Roots ``(k0 + t n, l; m0 - t l, n)`` for all integers ``t``."""

    l: int
    n: int
    k0: int
    m0: int

    def __post_init__(self):
        if math.gcd(self.l, self.n) != 1:
            raise NotCoprime(f"gcd({self.l}, {self.n}) != 1")
        if self.k0 * self.l + self.m0 * self.n != -1:
            raise NotARoot(f"base point ({self.k0}, {self.l}; {self.m0}, {self.n}) is not a root")

    def member(self, t: int) -> Vec22:
        return family_member(self, t)

    def parameter_of(self, v) -> int | None:
        """The ``t`` with ``member(t) == v``, or ``None`` if ``v`` is not in the family."""
        k, l, m, n = v
        if (l, n) != (self.l, self.n):
            return None
        if n != 0:
            t, r = divmod(k - self.k0, n)
        else:
            t, r = divmod(self.m0 - m, l)
        if r or family_member(self, t) != tuple(v):
            return None
        return t


def family_for(l: int, n: int) -> RootFamily:
    """Canonical family through the coprime pair ``(l, n)``.

    The base point has ``0 <= m0 < |l|`` when ``l != 0``; for ``l = 0`` (so
    ``n = +-1``) it is ``k0 = 0, m0 = -n``.
    """
    g = math.gcd(l, n)
    if g != 1:
        raise NotCoprime(f"gcd({l}, {n}) = {g}; kl + mn = -1 has no solutions")
    if l == 0:
        return RootFamily(l, n, 0, -n)
    mod = abs(l)
    # m0 * n = -1 (mod |l|)
    m0 = (-pow(n, -1, mod)) % mod if mod > 1 else 0
    k0, rem = divmod(-1 - m0 * n, l)
    assert rem == 0
    return RootFamily(l, n, k0, m0)


def family_member(f: RootFamily, t: int) -> Vec22:
    return Vec22(f.k0 + t * f.n, f.l, f.m0 - t * f.l, f.n)


def to_lattice_coords(v) -> tuple[int, int, int, int]:
    """Coordinates of ``v`` on ``make_gamma(2, 2)``; the identification is the identity."""
    return tuple(int(c) for c in v)
