"""Real numbers with certified rational enclosures.

Three kinds are supported: exact rationals, quadratic irrationals
``a + b sqrt(D)`` with rational ``a, b``, and numbers given by a stream of
continued fraction terms.  Each answers ``interval(eps)`` with a rational
``Interval`` of width at most ``eps`` that contains the value, and enclosures
shrink monotonically as ``eps`` decreases.
"""
from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, c) -> "Interval":
        a, b = self.lo * c, self.hi * c
        return Interval(min(a, b), max(a, b))

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def abs_upper(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))

    def within(self, bound) -> bool:
        """True if every point has absolute value strictly below ``bound``."""
        return -bound < self.lo and self.hi < bound

    def subset_of(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi


class CertifiedReal:
    """Base class; subclasses implement ``interval`` and ``cf_terms``."""

    def interval(self, eps) -> Interval:
        raise NotImplementedError

    def cf_terms(self) -> Iterator[int]:
        """Continued fraction partial quotients ``a0, a1, ...`` (finite iff rational)."""
        raise NotImplementedError

    @property
    def rational(self) -> Optional[Fraction]:
        """The exact value if it is known to be rational, else ``None``."""
        return None

    def is_zero(self) -> bool:
        return self.rational == 0


class RationalReal(CertifiedReal):
    def __init__(self, value):
        self.value = Fraction(value)

    @property
    def rational(self):
        return self.value

    def interval(self, eps):
        return Interval.point(self.value)

    def cf_terms(self):
        p, q = self.value.numerator, self.value.denominator
        while q:
            a = p // q
            yield a
            p, q = q, p - a * q

    def __repr__(self):
        return f"RationalReal({self.value})"


def _squarefree_split(D: int) -> tuple[int, int]:
    """``D = f**2 * r`` with ``r`` square-free (trial division)."""
    f, r = 1, D
    p = 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            f *= p
        p += 1
    return f, r


class QuadraticReal(CertifiedReal):
    """``a + b * sqrt(D)``; square factors of ``D`` are absorbed into ``b``."""

    def __new__(cls, a, b, D):
        a, b, D = Fraction(a), Fraction(b), int(D)
        if D < 0:
            raise ValueError("negative radicand")
        f, r = _squarefree_split(D) if D > 0 else (0, 0)
        if b == 0 or r <= 1:
            return RationalReal(a + b * f * (1 if r == 1 else 0))
        obj = super().__new__(cls)
        obj.a, obj.b, obj.D = a, b * f, r
        return obj

    def __repr__(self):
        return f"QuadraticReal({self.a}, {self.b}, {self.D})"

    def interval(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("precision must be positive")
        # sqrt(D) in [s, s + 1] / 2**k; dyadic levels make the enclosures nested.
        k = 0
        while abs(self.b) / Fraction(2**k) > eps:
            k += 1
        s = math.isqrt(self.D << (2 * k))
        lo = Fraction(s, 2**k)
        hi = Fraction(s + 1, 2**k)
        return Interval.point(self.a) + Interval(lo, hi).scale(self.b)

    def cf_terms(self):
        # Write x = (P + sqrt(N)) / Q with Q | N - P^2, then iterate the
        # classical recurrence for quadratic irrationals.
        den = math.lcm(self.a.denominator, self.b.denominator)
        p = int(self.a * den)
        s = int(self.b * den)
        N = s * s * self.D
        P, Q = (p, den) if s > 0 else (-p, -den)
        P, N, Q = P * abs(Q), N * Q * Q, Q * abs(Q)
        r = math.isqrt(N)
        while True:
            if Q > 0:
                a = (P + r) // Q
            else:
                a = -((P + r) // -Q) - 1
            yield a
            P = a * Q - P
            Q = (N - P * P) // Q


class ContinuedFractionReal(CertifiedReal):
    """Real number given by partial quotients ``term(0), term(1), ...``.

    ``term(i)`` returns ``None`` once the expansion ends (the number is then
    rational).  Terms are cached; the cache is filled under a lock so the
    object can be shared between threads.
    """

    def __init__(self, term: Callable[[int], Optional[int]], name: str = "cf"):
        self._term = term
        self._cache: list[int] = []
        self._done = False
        self._lock = threading.Lock()
        self.name = name

    @classmethod
    def periodic(cls, head, period, name="cf"):
        head, period = tuple(head), tuple(period)
        if not period:
            return cls(lambda i: head[i] if i < len(head) else None, name)
        return cls(lambda i: head[i] if i < len(head) else period[(i - len(head)) % len(period)], name)

    def _get(self, i):
        with self._lock:
            while len(self._cache) <= i and not self._done:
                t = self._term(len(self._cache))
                if t is None:
                    self._done = True
                else:
                    if self._cache and t < 1:
                        raise ValueError("partial quotients after the first must be positive")
                    self._cache.append(int(t))
            return self._cache[i] if i < len(self._cache) else None

    def cf_terms(self):
        i = 0
        while (t := self._get(i)) is not None:
            yield t
            i += 1

    @property
    def rational(self):
        # Only known once the stream has been seen to end.
        with self._lock:
            done, terms = self._done, list(self._cache)
        if not done:
            return None
        return _evaluate_cf(terms)

    def interval(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("precision must be positive")
        prev = None
        for c in convergent_stream(self):
            if prev is not None:
                lo, hi = min(prev, c), max(prev, c)
                if hi - lo <= eps:
                    # the value lies between consecutive convergents
                    return Interval(lo, hi)
            prev = c
        return Interval.point(prev)

    def __repr__(self):
        return f"ContinuedFractionReal({self.name})"


class QuotientReal(CertifiedReal):
    """``x / y`` for certified reals with ``y != 0``.

    Enclosures come from interval division.  Partial quotients are read off
    enclosures of growing precision: a term is emitted once both endpoints
    agree on it and on the term after it, which pins it for every point in
    between.  The stream stops at ``max_bits`` of precision, so a quotient that
    happens to be rational cannot stall it.
    """

    def __init__(self, x: CertifiedReal, y: CertifiedReal, max_bits: int = 4096):
        if y.is_zero():
            raise ZeroDivisionError("division by an exact zero")
        self.x, self.y = x, y
        self.max_bits = max_bits

    def _enclose(self, prec: Fraction) -> Optional[Interval]:
        X, Y = self.x.interval(prec), self.y.interval(prec)
        if Y.contains_zero():
            return None
        corners = [X.lo / Y.lo, X.lo / Y.hi, X.hi / Y.lo, X.hi / Y.hi]
        return Interval(min(corners), max(corners))

    def interval(self, eps):
        eps = Fraction(eps)
        if eps <= 0:
            raise ValueError("precision must be positive")
        prec = eps
        for _ in range(self.max_bits):
            iv = self._enclose(prec)
            if iv is not None and iv.width <= eps:
                return iv
            prec /= 2
        raise ValueError("denominator could not be separated from zero")

    def cf_terms(self):
        emitted = 0
        bits = 16
        while bits <= self.max_bits:
            iv = self.interval(Fraction(1, 2**bits))
            if iv.lo == iv.hi:
                yield from list(RationalReal(iv.lo).cf_terms())[emitted:]
                return
            lo = list(RationalReal(iv.lo).cf_terms())
            hi = list(RationalReal(iv.hi).cf_terms())
            agree = 0
            while agree < min(len(lo), len(hi)) and lo[agree] == hi[agree]:
                agree += 1
            trusted = max(emitted, agree - 1)
            yield from lo[emitted:trusted]
            emitted = trusted
            bits *= 2

    def __repr__(self):
        return f"QuotientReal({self.x!r}, {self.y!r})"


def quotient(x: CertifiedReal, y: CertifiedReal) -> CertifiedReal:
    """``x / y``, kept exact when both live in the same quadratic field."""
    if y.is_zero():
        raise ZeroDivisionError("division by an exact zero")
    rx, ry = x.rational, y.rational
    if rx is not None and ry is not None:
        return RationalReal(rx / ry)
    qx = x if isinstance(x, QuadraticReal) else None
    qy = y if isinstance(y, QuadraticReal) else None
    if ry is not None and qx is not None:
        return QuadraticReal(qx.a / ry, qx.b / ry, qx.D)
    if qy is not None and (rx is not None or (qx is not None and qx.D == qy.D)):
        xa, xb = (rx, Fraction(0)) if rx is not None else (qx.a, qx.b)
        # multiply through by the conjugate of y
        norm = qy.a * qy.a - qy.b * qy.b * qy.D
        a = (xa * qy.a - xb * qy.b * qy.D) / norm
        b = (xb * qy.a - xa * qy.b) / norm
        return QuadraticReal(a, b, qy.D)
    return QuotientReal(x, y)


def _evaluate_cf(terms):
    x = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        x = a + 1 / x
    return x


def convergent_stream(x: CertifiedReal) -> Iterator[Fraction]:
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in x.cf_terms():
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        yield Fraction(p0, q0)


def as_real(x) -> CertifiedReal:
    if isinstance(x, CertifiedReal):
        return x
    if isinstance(x, str):
        return parse_real(x)
    return RationalReal(Fraction(x))


_SURD = re.compile(
    r"""^\s*
    (?:(?P<a>[+-]?[\d./]+)\s*(?=[+-]))?          # optional rational part
    \s*(?P<sign>[+-])?\s*
    (?:(?P<b>[\d./]+)\s*\*?\s*)?                 # optional coefficient
    sqrt\(\s*(?P<D>\d+)\s*\)\s*$""",
    re.VERBOSE,
)


def parse_real(text: str) -> CertifiedReal:
    """Parse ``"p/q"``, decimals such as ``"1.25"``, or surds like ``"1/2-3*sqrt(5)"``.

    Decimal strings are read exactly, so ``"1.4142"`` is the rational 14142/10000.
    """
    s = text.strip()
    m = _SURD.match(s)
    if m:
        a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
        b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
        if m.group("sign") == "-":
            b = -b
        return QuadraticReal(a, b, int(m.group("D")))
    try:
        return RationalReal(Fraction(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse real number {text!r}") from None
