"""Descent torsors N^2 = b1 M^4 + c M^2 e^2 + b2 e^4.

PSI-side torsors (c = a, b1 b2 = b) detect the image of alpha and yield
points on E; PHI-side torsors (c = a_hat, b1 b2 = b_hat) detect the image
of beta and yield points on E_hat.
"""
from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Callable, Optional, Union

from .curves import (
    INFINITY,
    CurvePair,
    RatPoint,
    Which,
    add,
    class_product,
    descent_image,
    on_curve,
    sqfree_kernel,
)
from .symbols import legendre

INF = "inf"
Place = Union[int, str]


class Side(enum.Enum):
    PHI = "phi"
    PSI = "psi"

    @property
    def codomain(self) -> Which:
        return Which.E_HAT if self is Side.PHI else Which.E

    @classmethod
    def parse(cls, s: str) -> Side:
        return cls(s.lower())


@dataclass(frozen=True)
class Torsor:
    side: Side
    b1: int
    b2: int
    mid: int
    pair: CurvePair

    def value(self, M: int, e: int) -> int:
        m2, e2 = M * M, e * e
        return self.b1 * m2 * m2 + self.mid * m2 * e2 + self.b2 * e2 * e2

    @property
    def disc(self) -> int:
        """Discriminant of the binary quartic b1 x^4 + c x^2 z^2 + b2 z^4."""
        return 16 * self.b1 * self.b2 * (self.mid * self.mid - 4 * self.b1 * self.b2) ** 2

    def __str__(self) -> str:
        return f"N^2 = {self.b1}M^4 {self.mid:+}M^2e^2 {self.b2:+}e^4"


@dataclass(frozen=True)
class TorsorSolution:
    N: int
    M: int
    e: int

    def __post_init__(self) -> None:
        if min(self.N, self.M, self.e) < 0:
            raise ValueError("solutions are taken with N, M, e >= 0")
        if self.N == self.M == self.e == 0:
            raise ValueError("the zero triple is not a solution")

    @property
    def primitive(self) -> bool:
        return gcd(self.N, self.e) == 1 and gcd(self.M, self.e) == 1

    def solves(self, t: Torsor) -> bool:
        return self.primitive and self.N * self.N == t.value(self.M, self.e)


@dataclass(frozen=True)
class SearchBounds:
    m_max: int = 500
    e_max: int = 50

    def __post_init__(self) -> None:
        if self.m_max < 1 or self.e_max < 1:
            raise ValueError("search bounds must be >= 1")


def side_constants(pair: CurvePair, side: Side) -> tuple[int, int]:
    """(middle coefficient, product b1*b2) of the torsors on ``side``."""
    if side is Side.PSI:
        return pair.a, pair.b
    return pair.a_hat, pair.b_hat


def make_torsor(pair: CurvePair, side: Side, b1: int) -> Torsor:
    if b1 == 0 or sqfree_kernel(b1) != b1:
        raise ValueError(f"b1 = {b1} is not squarefree")
    mid, prod = side_constants(pair, side)
    if prod % b1:
        raise ValueError(f"b1 = {b1} does not divide {prod}; b2 would not be integral")
    return Torsor(side, b1, prod // b1, mid, pair)


# --- search -----------------------------------------------------------------

_SQUARE_MOD_64 = frozenset(i * i % 64 for i in range(64))
_SQUARE_MOD_63 = frozenset(i * i % 63 for i in range(63))
_SQUARE_MOD_65 = frozenset(i * i % 65 for i in range(65))


def _is_square(v: int) -> bool:
    if v < 0 or (v & 63) not in _SQUARE_MOD_64:
        return False
    if v % 63 not in _SQUARE_MOD_63 or v % 65 not in _SQUARE_MOD_65:
        return False
    r = isqrt(v)
    return r * r == v


def _search_es(t: Torsor, m_max: int, es) -> Optional[TorsorSolution]:
    b1, mid, b2 = t.b1, t.mid, t.b2
    for e in es:
        if e == 0:
            if _is_square(b1):
                return TorsorSolution(isqrt(b1), 1, 0)
            continue
        e2 = e * e
        c, d = mid * e2, b2 * e2 * e2
        for M in range(0, m_max + 1):
            if gcd(M, e) != 1:
                continue
            m2 = M * M
            v = (b1 * m2 + c) * m2 + d
            if _is_square(v):
                N = isqrt(v)
                if gcd(N, e) == 1:
                    return TorsorSolution(N, M, e)
    return None


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("DESCENT2_THREADS", "1")))
    except ValueError:
        return 1


def search_solution(t: Torsor, bounds: SearchBounds, workers: Optional[int] = None) -> Optional[TorsorSolution]:
    """First primitive solution in the order (e ascending, M ascending).

    Finding nothing proves nothing.  With several workers the e-range is
    dealt out round-robin and the smallest hit wins, so the answer does not
    depend on the partitioning.
    """
    workers = default_workers() if workers is None else workers
    if workers <= 1:
        return _search_es(t, bounds.m_max, range(0, bounds.e_max + 1))
    chunks = [range(w, bounds.e_max + 1, workers) for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        hits = list(pool.map(_search_es, [t] * workers, [bounds.m_max] * workers, chunks))
    hits = [h for h in hits if h is not None]
    return min(hits, key=lambda s: (s.e, s.M)) if hits else None


# --- table normalization ----------------------------------------------------


@dataclass(frozen=True)
class TableForm:
    """b1 n^2 = m^4 + 2 c1 m^2 e^2 - c1^2 e^4 with 2k = b1 c1; N = b1 n, M = m."""

    torsor: Torsor
    b1: int
    c1: int

    def value(self, m: int, e: int) -> int:
        m2, e2 = m * m, e * e
        return m2 * m2 + 2 * self.c1 * m2 * e2 - self.c1 * self.c1 * e2 * e2

    def satisfied_by(self, n: int, m: int, e: int) -> bool:
        return self.b1 * n * n == self.value(m, e)

    def to_solution(self, n: int, m: int, e: int) -> TorsorSolution:
        return TorsorSolution(abs(self.b1 * n), m, e)

    def from_solution(self, s: TorsorSolution) -> tuple[int, int, int]:
        if s.N % self.b1:
            raise ArithmeticError("N is not divisible by b1")
        return abs(s.N // self.b1), s.M, s.e


def normalize_table_form(t: Torsor) -> TableForm:
    k = t.pair.k
    if t.side is not Side.PHI or k is None:
        raise ValueError("table form is defined for PHI-side family torsors only")
    if (2 * k) % t.b1:
        raise ValueError(f"b1 = {t.b1} does not divide 2k = {2 * k}")
    return TableForm(t, t.b1, 2 * k // t.b1)


# --- points -----------------------------------------------------------------


def solution_to_point(t: Torsor, s: TorsorSolution) -> RatPoint:
    """(b1 M^2/e^2, b1 M N/e^3) on the codomain curve (E_hat for PHI, E for PSI)."""
    if not s.solves(t):
        raise ValueError(f"{s} does not solve {t}")
    if s.e == 0:
        return INFINITY
    P = RatPoint(Fraction(t.b1 * s.M * s.M, s.e**2), Fraction(t.b1 * s.M * s.N, s.e**3))
    assert on_curve(P, t.side.codomain, t.pair)
    return P


def _side_primes(pair: CurvePair, side: Side) -> list[int]:
    from sympy import primefactors

    _, prod = side_constants(pair, side)
    return primefactors(2 * prod)


def point_to_solution(pair: CurvePair, side: Side, P: RatPoint) -> tuple[int, Optional[TorsorSolution]]:
    """Class of P under the descent map and a primitive solution of its torsor."""
    which = side.codomain
    cls = descent_image(P, which, pair, _side_primes(pair, side))
    if P.is_infinity:
        return 1, TorsorSolution(1, 1, 0)
    t = make_torsor(pair, side, cls)
    if P.x == 0:
        sol = TorsorSolution(isqrt(t.b2), 0, 1)
    else:
        u, v = P.x.numerator, P.x.denominator
        e = isqrt(v)
        if e * e != v or u % cls:
            raise ArithmeticError(f"{P} does not have the shape b1 M^2/e^2")
        M = isqrt(u // cls)
        N = Fraction(abs(P.y) * e**3, abs(cls) * M)
        if N.denominator != 1:
            raise ArithmeticError(f"{P} gives a non-integral N")
        sol = TorsorSolution(int(N), M, e)
    if not sol.solves(t):
        raise ArithmeticError(f"reconstructed {sol} does not solve {t}")
    return cls, sol


def combine(t1: Torsor, s1: TorsorSolution, t2: Torsor, s2: TorsorSolution) -> tuple[int, Optional[TorsorSolution]]:
    """Add the points of two solutions; return the class of the sum and its solution.

    When the sum is O the class is 1 and no finite solution is returned.
    """
    if t1.side is not t2.side or t1.pair != t2.pair:
        raise ValueError("torsors live on different sides or curves")
    which = t1.side.codomain
    S = add(solution_to_point(t1, s1), solution_to_point(t2, s2), which, t1.pair)
    expected = class_product(t1.b1, t2.b1)
    if S.is_infinity:
        assert expected == 1
        return 1, None
    cls, sol = point_to_solution(t1.pair, t1.side, S)
    if cls != expected:
        raise ArithmeticError(f"group law gave class {cls}, expected {expected}")
    return cls, sol


# --- local solvability ------------------------------------------------------


def _val(n: int, p: int) -> float:
    if n == 0:
        return float("inf")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_padic_square(n: int, p: int) -> bool:
    """Whether the nonzero integer n is a square in Q_p."""
    v = int(_val(n, p))
    if v % 2:
        return False
    u = n // p**v
    if p == 2:
        return u % 8 == 1
    return legendre(u, p) == 1


_MAX_DEPTH = 400


def _class_soluble(g: Callable[[int], int], dg: Callable[[int], int], p: int, x0: int, n: int, depth: int = 0) -> bool:
    """Is g(x) in Q_p^2 (zero allowed) for some x = x0 (mod p^n)?

    g(x0 + h) = g(x0) + g'(x0) h + O(h^2) with integral Taylor coefficients,
    so on the class g is fixed modulo p^min(m + n, 2n), m = v(g'(x0)).
    """
    if depth > _MAX_DEPTH:
        raise RuntimeError("p-adic refinement did not terminate; is the quartic singular?")
    gx = g(x0)
    if gx == 0 or is_padic_square(gx, p):
        return True
    l = _val(gx, p)
    m = _val(dg(x0), p)
    fixed = min(m + n, 2 * n)
    if l < fixed:
        if l % 2:
            return False
        prec = fixed - l
        if p != 2 or prec >= 3:
            return False  # square class of every value in the class is that of gx
        u = gx // p ** int(l)
        if prec == 2 and u % 4 == 3:
            return False
    elif l > 2 * m and l - m >= n:
        return True  # Hensel: a root of g lies in the class
    step = p**n
    return any(_class_soluble(g, dg, p, x0 + t * step, n + 1, depth + 1) for t in range(p))


def quartic_locally_solvable(b1: int, c: int, b2: int, place: Place) -> bool:
    """Solvability of N^2 = b1 M^4 + c M^2 e^2 + b2 e^4 over R ('inf') or Q_p."""
    if place == INF:
        # need b1 u^4 + c u^2 + b2 >= 0 for some real u, or b1 > 0 at u = oo
        return b1 > 0 or b2 > 0 or (c > 0 and c * c >= 4 * b1 * b2)
    p = int(place)
    if p % 2 and (b1 * b2 * (c * c - 4 * b1 * b2)) % p:
        return True  # smooth genus-one reduction has F_p-points that lift
    return _padic_soluble(b1, c, b2, p)


def locally_solvable(t: Torsor, place: Place) -> bool:
    return quartic_locally_solvable(t.b1, t.mid, t.b2, place)


@lru_cache(maxsize=65536)
def _padic_soluble(b1: int, c: int, b2: int, p: int) -> bool:
    def g1(x):
        x2 = x * x
        return (b1 * x2 + c) * x2 + b2

    def dg1(x):
        return (4 * b1 * x * x + 2 * c) * x

    def g2(z):
        z2 = z * z
        return (b2 * z2 + c) * z2 + b1

    def dg2(z):
        return (4 * b2 * z * z + 2 * c) * z

    # P^1(Q_p) = {(x : 1) : x in Z_p} u {(1 : z) : z in pZ_p}
    return _class_soluble(g1, dg1, p, 0, 0) or _class_soluble(g2, dg2, p, 0, 1)


def _bad_places(b1: int, c: int, b2: int) -> list[Place]:
    from sympy import primefactors

    return [INF] + primefactors(2 * b1 * b2 * (c * c - 4 * b1 * b2))


def bad_places(t: Torsor) -> list[Place]:
    return _bad_places(t.b1, t.mid, t.b2)


def local_report(t: Torsor) -> dict[str, bool]:
    return {str(pl): locally_solvable(t, pl) for pl in bad_places(t)}


def everywhere_locally_solvable(t: Torsor) -> bool:
    return all(locally_solvable(t, pl) for pl in bad_places(t))


def class_locally_solvable(pair: CurvePair, side: Side, b1: int) -> bool:
    """Everywhere local solvability of the class b1, divisor of b (b_hat) or not.

    For a non-divisor the torsor has rational b2 = prod/b1; scaling N by b1
    gives the integral quartic (b1^3, c b1^2, b1 prod) in the same class.
    """
    mid, prod = side_constants(pair, side)
    if prod % b1 == 0:
        coeffs = (b1, mid, prod // b1)
    else:
        coeffs = (b1**3, mid * b1 * b1, b1 * prod)
    return all(quartic_locally_solvable(*coeffs, pl) for pl in _bad_places(*coeffs))
