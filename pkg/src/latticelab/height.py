"""Roots of arbitrarily small height for real linear functionals on Gamma^{2,2}.

A functional is given by four real coefficients ``(a, b, c, d)`` and acts as
``h(k, l; m, n) = -a l - b k - c n - d m``, i.e. ``h(v) = (rho, v)`` for
``rho = (a, b; c, d)``.  For fixed coprime ``(l, n)`` the roots
``(k0 + t n, l; m0 - t l, n)`` have heights ``M t + N`` with
``M = d l - b n``.  Taking ``l/n`` from rational approximations of ``b/d``
drives ``M`` to zero, and a good ``t`` then gives a root with tiny non-zero
height.  Rational functionals always vanish on some root; those are handed
to the Weyl refuter instead.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .certified import (
    CertifiedReal,
    Interval,
    QuadraticReal,
    as_real,
    convergent_stream,
    quotient,
)
from .errors import Inconclusive, TerminatedEarly
from .gamma22 import Vec22, family_for, family_member, is_root22
from .weyl import orthogonal_root

DEFAULT_BUDGET = 64
# how many times a precision may be halved before a sign is declared undecidable
_MAX_REFINE = 256


@dataclass(frozen=True)
class HeightFunctional:
    a: CertifiedReal
    b: CertifiedReal
    c: CertifiedReal
    d: CertifiedReal

    @classmethod
    def of(cls, a, b, c, d) -> "HeightFunctional":
        return cls(as_real(a), as_real(b), as_real(c), as_real(d))

    @property
    def coeffs(self) -> tuple[CertifiedReal, ...]:
        return (self.a, self.b, self.c, self.d)

    def rational_coeffs(self) -> Optional[tuple[Fraction, ...]]:
        vals = tuple(x.rational for x in self.coeffs)
        return None if any(v is None for v in vals) else vals

    def exact(self, v) -> Optional[Fraction]:
        """Exact height when every coefficient with a non-zero coordinate is rational."""
        total = Fraction(0)
        for coef, x in self._terms(v):
            r = coef.rational
            if r is None:
                return None
            total += r * x
        return total

    def _terms(self, v):
        k, l, m, n = v
        # h = -a l - b k - c n - d m
        return [(c, -x) for c, x in ((self.a, l), (self.b, k), (self.c, n), (self.d, m)) if x]


@dataclass(frozen=True)
class ExactZero:
    alpha: Vec22
    variant = "ExactZero"

    def to_json(self):
        return {"variant": self.variant, "alpha": list(self.alpha), "bound_num": 0, "bound_den": 1}


@dataclass(frozen=True)
class SmallNonzero:
    alpha: Vec22
    bound: Fraction
    enclosure: Interval  # certified interval for h(alpha); excludes 0, inside (-bound, bound)
    step: int  # index of the convergent pair that produced alpha
    variant = "SmallNonzero"

    def to_json(self):
        return {
            "variant": self.variant,
            "alpha": list(self.alpha),
            "bound_num": self.bound.numerator,
            "bound_den": self.bound.denominator,
        }


def height(h: HeightFunctional, v, precision) -> Interval:
    """Interval of width at most ``precision`` containing ``h(v)``."""
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    terms = h._terms(v)
    total = Interval.point(0)
    for coef, x in terms:
        eps = precision / (len(terms) * abs(x))
        total = total + coef.interval(eps).scale(x)
    return total


def convergents(x, depth: int) -> list[Fraction]:
    """The first ``depth`` continued fraction convergents of ``x``.

    Rational inputs may run out early; a :class:`TerminatedEarly` warning is
    issued and the shorter list returned.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    x = as_real(x)
    out = []
    for c in convergent_stream(x):
        out.append(c)
        if len(out) == depth:
            return out
    warnings.warn(
        TerminatedEarly(f"expansion ended after {len(out)} of {depth} convergents"),
        stacklevel=2,
    )
    return out


class _Convergents:
    """Lazily extended convergent list; the last entry repeats once a rational expansion ends."""

    def __init__(self, x: CertifiedReal):
        self._it = convergent_stream(x)
        self._list: list[Fraction] = []
        self._done = False

    def __getitem__(self, j):
        while len(self._list) <= j and not self._done:
            nxt = next(self._it, None)
            if nxt is None:
                self._done = True
            else:
                self._list.append(nxt)
        return self._list[min(j, len(self._list) - 1)]


# Coordinate permutations preserving kl + mn = -1.  Each is an involution; the
# functional h o pi has coefficients given by the index map below.
_PAIRINGS = (
    (lambda v: Vec22(v[0], v[1], v[2], v[3]), (0, 1, 2, 3)),
    (lambda v: Vec22(v[1], v[0], v[3], v[2]), (1, 0, 3, 2)),
    (lambda v: Vec22(v[1], v[0], v[2], v[3]), (1, 0, 2, 3)),
    (lambda v: Vec22(v[0], v[1], v[3], v[2]), (0, 1, 3, 2)),
)


def _pair_is_usable(b: CertifiedReal, d: CertifiedReal) -> bool:
    if b.is_zero() or d.is_zero():
        return False
    if b.rational is not None and d.rational is not None:
        return False
    if isinstance(b, QuadraticReal) and isinstance(d, QuadraticReal) and b.D == d.D:
        return b.a * d.b != b.b * d.a
    return True


def _decide(fn, start: Fraction, settled) -> Optional[Interval]:
    """Refine ``fn(prec)`` by halving until ``settled(interval)``; None if it never does."""
    prec = start
    for _ in range(_MAX_REFINE):
        iv = fn(prec)
        if settled(iv):
            return iv
        prec /= 2
    return None


def _settled(iv: Interval, eps: Fraction) -> bool:
    """Sign known, and either entirely inside ``(-eps, eps)`` or entirely outside it."""
    if iv.contains_zero():
        return False
    return iv.within(eps) or iv.lo >= eps or iv.hi <= -eps


def _search(h: HeightFunctional, eps: Fraction, budget: int):
    """Family search over ``(l, n)`` with ``d l - b n`` shrinking to zero.

    With ``b`` or ``d`` rational, ``l = q2 p1`` and ``n = q1 p2`` come from
    convergents ``p1/q1`` of ``b`` and ``p2/q2`` of ``d``.  When both are
    irrational that product only shrinks ``M`` if the two expansions happen
    to be in step, so ``l / n`` are taken from convergents of ``b / d``
    instead.
    """
    if h.b.rational is None and h.d.rational is None:
        conv_r = _Convergents(quotient(h.b, h.d))

        def pair(step):
            r = conv_r[step]
            return r.numerator, r.denominator
    else:
        conv_b, conv_d = _Convergents(h.b), _Convergents(h.d)

        def pair(step):
            x, y = conv_b[step], conv_d[step]
            return y.denominator * x.numerator, x.denominator * y.numerator

    seen = set()
    for step in range(budget):
        l, n = pair(step)
        g = math.gcd(l, n)
        if g == 0:
            continue
        l, n = l // g, n // g
        if (l, n) in seen:
            continue
        seen.add((l, n))
        fam = family_for(l, n)
        base = family_member(fam, 0)
        direction = (n, 0, -l, 0)  # h(member(t)) = M t + N with M = h(direction)
        M = _decide(lambda p: height(h, direction, p), eps / 8, lambda iv: not iv.contains_zero())
        if M is None:
            continue
        # t = round(-N / M) needs M to relative accuracy ~ |M| / |N|
        m_low = min(abs(M.lo), abs(M.hi))
        n_size = height(h, base, Fraction(1)).abs_upper() + 1
        if M.width:
            M = height(h, direction, min(M.width, m_low * m_low / (16 * n_size)))
        N = height(h, base, m_low / 16)
        t = round(-N.mid / M.mid)
        alpha = family_member(fam, t)
        iv = _decide(lambda p: height(h, alpha, p), eps / 8, lambda iv: _settled(iv, eps))
        if iv is not None and iv.within(eps):
            return alpha, step
    return None


def _exact_zero(h: HeightFunctional, multipliers) -> ExactZero:
    den = math.lcm(*(r.denominator for r in multipliers))
    rho = Vec22(*(int(r * den) for r in multipliers))
    alpha = orthogonal_root(rho).alpha
    return ExactZero(alpha)


def _proportional_multipliers(h: HeightFunctional) -> Optional[tuple[Fraction, ...]]:
    """``r`` with ``h = theta * r`` for one quadratic irrational ``theta``, if such exists."""
    nonzero = [x for x in h.coeffs if not x.is_zero()]
    if not nonzero or not all(isinstance(x, QuadraticReal) for x in nonzero):
        return None
    theta = nonzero[0]
    out = []
    for x in h.coeffs:
        if x.is_zero():
            out.append(Fraction(0))
            continue
        if x.D != theta.D or x.a * theta.b != x.b * theta.a:
            return None
        out.append(x.b / theta.b)
    return tuple(out)


def small_height_root(h: HeightFunctional, epsilon, budget: int = DEFAULT_BUDGET):
    """A root with ``0 < |h(alpha)| < epsilon``, or an exactly orthogonal root if ``h`` vanishes on one.

    Rational functionals, quadratic ones proportional to a rational
    functional, and functionals with ``a = b = 0`` or ``c = d = 0`` all vanish
    on some root and give :class:`ExactZero`.  Raises
    :class:`Inconclusive` when no certified root turns up within ``budget``
    convergent steps.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    rat = h.rational_coeffs()
    if rat is not None:
        if not any(rat):
            raise ValueError("the zero functional has no non-vanishing heights")
        out = _exact_zero(h, rat)
        if h.exact(out.alpha) != 0:
            raise AssertionError(f"internal error: h({list(out.alpha)}) != 0")
        return out
    multipliers = _proportional_multipliers(h)
    if multipliers is not None:
        return _exact_zero(h, multipliers)

    coeffs = h.coeffs
    attempts = []
    for perm, index in _PAIRINGS:
        permuted = HeightFunctional(*(coeffs[j] for j in index))
        if _pair_is_usable(permuted.b, permuted.d):
            attempts.append((perm, permuted))
    if not attempts:
        # every root has kl != 0 or mn != 0; a vanishing block gives an exact zero
        if h.a.is_zero() and h.b.is_zero():
            return ExactZero(Vec22(1, -1, 0, 0))
        if h.c.is_zero() and h.d.is_zero():
            return ExactZero(Vec22(0, 0, 1, -1))
    for perm, permuted in attempts:
        found = _search(permuted, epsilon, budget)
        if found is None:
            continue
        alpha_p, step = found
        alpha = perm(alpha_p)
        # re-certify against the original functional
        iv = _decide(lambda p: height(h, alpha, p), epsilon / 8, lambda iv: _settled(iv, epsilon))
        if iv is None or not iv.within(epsilon) or not is_root22(alpha):
            raise AssertionError(f"internal error: certificate for {list(alpha)} failed")
        return SmallNonzero(alpha, epsilon, iv, step)
    raise Inconclusive(budget)


def parse_functional(values: Sequence) -> HeightFunctional:
    if len(values) != 4:
        raise ValueError("a functional needs exactly four coefficients a, b, c, d")
    return HeightFunctional.of(*values)
