"""Residue symbols over the rational integers.

Legendre and Jacobi symbols, square roots modulo a prime, the biquadratic
symbol ``(a/p)_4`` and the composite symbols ``chi(p)``, ``(1+i/p)`` and
``(1+sqrt2/p)`` for primes ``p = 1 (mod 8)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from sympy import isprime


def _require_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not isprime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion; 0 when p divides a."""
    _require_odd_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd n >= 1, computed by binary reciprocity."""
    if n < 1 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs a positive odd modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@lru_cache(maxsize=None)
def _least_nonresidue(p: int) -> int:
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    return z


def sqrt_mod(a: int, p: int) -> int:
    """Return x in (0, p) with x^2 = a (mod p).

    Tonelli-Shanks seeded with the least quadratic non-residue, so the
    output is deterministic.  Which of the two roots comes back is not part
    of the contract.
    """
    if legendre(a, p) != 1:
        raise ValueError(f"{a} is not a nonzero quadratic residue mod {p}")
    a %= p
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    c = pow(_least_nonresidue(p), q, p)
    x = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = x * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return x


def quartic_symbol(a: int, p: int) -> int:
    """Biquadratic symbol (a/p)_4 = (x/p) where x^2 = a (mod p)."""
    if p % 4 != 1:
        raise ValueError(f"(a/p)_4 needs p = 1 mod 4, got {p}")
    return legendre(sqrt_mod(a, p), p)


def chi(n: int) -> int:
    """(-1)^((n-1)/8) for n = 1 (mod 8)."""
    if n % 8 != 1:
        raise ValueError(f"chi needs n = 1 mod 8, got {n}")
    return -1 if ((n - 1) // 8) % 2 else 1


def _require_1_mod_8(p: int) -> None:
    if p % 8 != 1:
        raise ValueError(f"{p} is not = 1 mod 8")
    _require_odd_prime(p)


def symbol_one_plus_i(p: int) -> int:
    """(1+i/p) = (2/p)_4 * chi(p)."""
    _require_1_mod_8(p)
    return quartic_symbol(2, p) * chi(p)


def symbol_one_plus_sqrt2(p: int) -> int:
    """(1+sqrt2/p), evaluated as the Jacobi symbol (-1/(e+f)) with p = e^2 - 2f^2."""
    _require_1_mod_8(p)
    rep = pell_rep(p)
    return jacobi(-1, rep.e + rep.f)


@dataclass(frozen=True)
class TwoSquares:
    p: int
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a * self.a + self.b * self.b != self.p:
            raise ValueError(f"{self.a}^2 + {self.b}^2 != {self.p}")
        if self.a <= 0 or self.b <= 0 or self.a % 2 == 0 or self.b % 2:
            raise ValueError("need a odd, b even, both positive")


@dataclass(frozen=True)
class PellRep:
    p: int
    e: int
    f: int

    def __post_init__(self) -> None:
        if self.e * self.e - 2 * self.f * self.f != self.p:
            raise ValueError(f"{self.e}^2 - 2*{self.f}^2 != {self.p}")
        if self.e <= 0 or self.f <= 0 or self.e % 2 == 0 or self.f % 2:
            raise ValueError("need e odd, f even, both positive")


@lru_cache(maxsize=4096)
def two_squares(p: int) -> TwoSquares:
    """p = a^2 + b^2 with a odd, b even (Cornacchia)."""
    if p % 4 != 1:
        raise ValueError(f"{p} is not = 1 mod 4")
    _require_odd_prime(p)
    r = sqrt_mod(-1, p)
    if 2 * r > p:
        r = p - r
    x, y = p, r
    limit = isqrt(p)
    while y > limit:
        x, y = y, x % y
    u = y
    v = isqrt(p - u * u)
    a, b = (u, v) if u % 2 else (v, u)
    return TwoSquares(p, a, b)


@lru_cache(maxsize=4096)
def pell_rep(p: int) -> PellRep:
    """p = e^2 - 2f^2 with e odd, f even and e minimal.

    Every class of solutions has a member with 0 < f <= sqrt(p/2), and e
    grows with f along p = e^2 - 2f^2, so the first hit is the minimal one.
    """
    _require_1_mod_8(p)
    f = 1
    while 2 * f * f <= p:
        e2 = p + 2 * f * f
        e = isqrt(e2)
        if e * e == e2:
            return PellRep(p, e, f)
        f += 1
    raise ArithmeticError(f"no representation found for {p}")
