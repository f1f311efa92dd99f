"""Arithmetic in Z[sqrt2] and Z[i] and the quadratic residue symbol [alpha/pi].

Only degree-1 primes (norm an odd rational prime p) are supported as
moduli.  The symbol is evaluated in the residue field Z/p: if
pi = u + v*w then w = -u/v (mod pi), so x + y*w maps to x - y*u/v (mod p).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from sympy import isprime

from .symbols import legendre, pell_rep, two_squares


class Ring(enum.Enum):
    SQRT2 = 2  # w^2 = 2
    GAUSS = -1  # w^2 = -1

    @property
    def w_squared(self) -> int:
        return self.value


@dataclass(frozen=True)
class QuadElem:
    ring: Ring
    x: int
    y: int = 0

    def _check(self, other: QuadElem) -> None:
        if not isinstance(other, QuadElem):
            raise TypeError(f"expected QuadElem, got {type(other).__name__}")
        if other.ring is not self.ring:
            raise ValueError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")

    def _coerce(self, other: QuadElem | int) -> QuadElem:
        if isinstance(other, int):
            return QuadElem(self.ring, other, 0)
        self._check(other)
        return other

    def __add__(self, other: QuadElem | int) -> QuadElem:
        o = self._coerce(other)
        return QuadElem(self.ring, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __sub__(self, other: QuadElem | int) -> QuadElem:
        o = self._coerce(other)
        return QuadElem(self.ring, self.x - o.x, self.y - o.y)

    def __neg__(self) -> QuadElem:
        return QuadElem(self.ring, -self.x, -self.y)

    def __mul__(self, other: QuadElem | int) -> QuadElem:
        o = self._coerce(other)
        d = self.ring.w_squared
        return QuadElem(self.ring, self.x * o.x + d * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QuadElem:
        if n < 0:
            raise ValueError("negative powers are not supported")
        result, base = QuadElem(self.ring, 1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> QuadElem:
        return QuadElem(self.ring, self.x, -self.y)

    def norm(self) -> int:
        return self.x * self.x - self.ring.w_squared * self.y * self.y

    def __str__(self) -> str:
        w = "sqrt2" if self.ring is Ring.SQRT2 else "i"
        if self.y == 0:
            return str(self.x)
        sign = "+" if self.y > 0 else "-"
        return f"{self.x}{sign}{abs(self.y)}{w}"


EPSILON = QuadElem(Ring.SQRT2, 1, 1)  # fundamental unit of Z[sqrt2]


def ring_arith(a: QuadElem, b: QuadElem | None, op: str) -> QuadElem | int:
    """Dispatch a named ring operation: add, sub, mul, conj or norm."""
    if op == "conj":
        return a.conj()
    if op == "norm":
        return a.norm()
    if b is None:
        raise ValueError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op!r}")


@dataclass(frozen=True)
class SplitPrime:
    p: int
    pi: QuadElem
    pibar: QuadElem


@lru_cache(maxsize=4096)
def split_prime(p: int, ring: Ring) -> SplitPrime:
    """Normalized pi = x + y*w of norm p (x odd, y even, both positive)."""
    if p % 8 != 1:
        raise ValueError(f"{p} is not = 1 mod 8")
    if ring is Ring.SQRT2:
        rep = pell_rep(p)
        pi = QuadElem(ring, rep.e, rep.f)
    else:
        sq = two_squares(p)
        pi = QuadElem(ring, sq.a, sq.b)
    return SplitPrime(p, pi, pi.conj())


def _degree_one_prime(pi: QuadElem) -> int:
    p = abs(pi.norm())
    if p < 3 or p % 2 == 0 or not isprime(p):
        raise ValueError(f"{pi} does not generate a degree-1 prime of odd norm")
    return p


def reduce_mod(alpha: QuadElem, pi: QuadElem) -> int:
    """Image of alpha in Z/p under the residue map of the degree-1 prime pi."""
    alpha = pi._coerce(alpha)
    p = _degree_one_prime(pi)
    w = -pi.x * pow(pi.y, -1, p) % p
    return (alpha.x + alpha.y * w) % p


def residue_symbol(alpha: QuadElem | int, pi: QuadElem) -> int:
    """[alpha/pi] = alpha^((p-1)/2) mod pi, as +-1."""
    p = _degree_one_prime(pi)
    if isinstance(alpha, int):
        alpha = QuadElem(pi.ring, alpha, 0)
    r = reduce_mod(alpha, pi)
    if r == 0:
        raise ValueError(f"{alpha} is divisible by {pi}")
    return legendre(r, p)


def symbol_between_primes(p: int, q: int, ring: Ring) -> int:
    """[pi_p / pi_q] for the normalized splittings of p and q."""
    if p == q:
        raise ValueError("need distinct primes")
    return residue_symbol(split_prime(p, ring).pi, split_prime(q, ring).pi)


def product(elems, ring: Ring) -> QuadElem:
    out = QuadElem(ring, 1, 0)
    for e in elems:
        out = out * e
    return out
