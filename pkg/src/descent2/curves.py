"""Exact arithmetic on y^2 = x(x^2 + a x + b) and its 2-isogenous partner.

E : y^2 = x(x^2 + a x + b) maps by phi onto E_hat : y^2 = x(x^2 + a_hat x + b_hat)
with a_hat = -2a and b_hat = a^2 - 4b.  The family E_k has (a, b) = (-2k, 2k^2).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional


class Which(enum.Enum):
    E = "E"
    E_HAT = "E_hat"


@dataclass(frozen=True)
class CurvePair:
    a: int
    b: int
    a_hat: int
    b_hat: int
    k: Optional[int] = None

    def coeffs(self, which: Which) -> tuple[int, int]:
        return (self.a, self.b) if which is Which.E else (self.a_hat, self.b_hat)

    @property
    def conductor(self) -> Optional[int]:
        # only recorded for family members; never used analytically
        return None if self.k is None else 2**7 * self.k * self.k


def make_pair(a: int, b: int, k: Optional[int] = None) -> CurvePair:
    b_hat = a * a - 4 * b
    if b == 0 or b_hat == 0:
        raise ValueError(f"singular curve y^2 = x(x^2 + {a}x + {b})")
    return CurvePair(a, b, -2 * a, b_hat, k)


def make_Ek(k: int) -> CurvePair:
    if k == 0:
        raise ValueError("k must be nonzero")
    return make_pair(-2 * k, 2 * k * k, k)


@dataclass(frozen=True)
class RatPoint:
    """A rational point; x = y = None is the point at infinity."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> RatPoint:
        return self if self.is_infinity else RatPoint(self.x, -self.y)

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = RatPoint()


def point(x, y) -> RatPoint:
    return RatPoint(Fraction(x), Fraction(y))


def on_curve(P: RatPoint, which: Which, pair: CurvePair) -> bool:
    if P.is_infinity:
        return True
    a, b = pair.coeffs(which)
    return P.y * P.y == P.x * (P.x * P.x + a * P.x + b)


def add(P: RatPoint, Q: RatPoint, which: Which, pair: CurvePair) -> RatPoint:
    """Chord-tangent addition on y^2 = x^3 + a x^2 + b x."""
    for R in (P, Q):
        if not on_curve(R, which, pair):
            raise ValueError(f"{R} is not on {which.value}")
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    a, b = pair.coeffs(which)
    if P.x == Q.x:
        if P.y == -Q.y:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * a * P.x + b) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - a - P.x - Q.x
    y3 = -(P.y + lam * (x3 - P.x))
    return RatPoint(x3, y3)


def multiply(n: int, P: RatPoint, which: Which, pair: CurvePair) -> RatPoint:
    if n < 0:
        return multiply(-n, -P, which, pair)
    result = INFINITY
    while n:
        if n & 1:
            result = add(result, P, which, pair)
        P = add(P, P, which, pair)
        n >>= 1
    return result


def sqfree_kernel(n: int, primes: Optional[Iterable[int]] = None) -> int:
    """n with its largest square factor removed, sign kept.

    With ``primes`` given, only those primes are stripped and the cofactor
    must be a perfect square; this avoids factoring large point coordinates
    whose class is known to be supported on a fixed prime set.
    """
    if n == 0:
        raise ValueError("zero has no square class")
    sign = -1 if n < 0 else 1
    n = abs(n)
    if primes is None:
        from sympy import factorint

        out = 1
        for p, e in factorint(n).items():
            if e % 2:
                out *= p
        return sign * out
    out = 1
    for p in primes:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            out *= p
    r = isqrt(n)
    if r * r != n:
        raise ArithmeticError("cofactor is not a square; prime support too small")
    return sign * out


def class_product(c1: int, c2: int) -> int:
    """Product in Q^x / Q^x^2 of two squarefree representatives."""
    from math import gcd

    g = gcd(c1, c2)
    return (c1 // g) * (c2 // g)


def descent_image(P: RatPoint, which: Which, pair: CurvePair, primes: Optional[Iterable[int]] = None) -> int:
    """alpha (on E) or beta (on E_hat): x Q^x^2, with O -> 1 and T -> b Q^x^2.

    The class of a rational point is supported on the primes of b, so by
    default only those are stripped and the coordinates are never factored.
    """
    if not on_curve(P, which, pair):
        raise ValueError(f"{P} is not on {which.value}")
    if P.is_infinity:
        return 1
    _, b = pair.coeffs(which)
    if primes is None:
        from sympy import primefactors

        primes = primefactors(b)
    if P.x == 0:
        assert P.y == 0
        return sqfree_kernel(b, primes)
    return sqfree_kernel(P.x.numerator * P.x.denominator, primes)


def alpha_image(P: RatPoint, pair: CurvePair) -> int:
    return descent_image(P, Which.E, pair)


def beta_image(P: RatPoint, pair: CurvePair) -> int:
    return descent_image(P, Which.E_HAT, pair)


def torsion_point() -> RatPoint:
    return point(0, 0)
