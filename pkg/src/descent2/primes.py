"""Admissible primes and prime tuples with prescribed symbol patterns."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from sympy import primerange

from .obstructions import classify_case
from .rings import Ring, symbol_between_primes
from .symbols import legendre, symbol_one_plus_i


@dataclass(frozen=True)
class AdmissibilityFilter:
    bound: int
    require_one_plus_i: bool = True
    mod16: Optional[int] = None
    case_label: Optional[str] = None
    sqrt2_pattern: Optional[tuple] = None
    gauss_pattern: Optional[tuple] = None

    def __post_init__(self) -> None:
        if self.bound < 17:
            raise ValueError("bound must be at least 17")
        if self.mod16 not in (None, 1, 9):
            raise ValueError("mod16 must be 1 or 9")
        for pat in (self.sqrt2_pattern, self.gauss_pattern):
            if pat is not None and any(pat[i][j] != pat[j][i] for i in range(len(pat)) for j in range(len(pat))):
                raise ValueError("symbol patterns must be symmetric")


def admissible_primes(bound: int, require_one_plus_i: bool = True) -> list[int]:
    """Primes p <= bound with p = 1 (mod 8) and (1+i/p) = +1."""
    return [p for p in primerange(17, bound + 1)
            if p % 8 == 1 and (not require_one_plus_i or symbol_one_plus_i(p) == 1)]


def _pattern_ok(tup, pattern, ring: Ring) -> bool:
    if pattern is None:
        return True
    return all(symbol_between_primes(tup[i], tup[j], ring) == pattern[i][j]
               for i, j in combinations(range(len(tup)), 2))


def find_tuples(t: int, flt: AdmissibilityFilter) -> list[tuple]:
    """Ascending t-tuples of admissible primes matching the filter, in lexicographic order.

    With ``mod16`` set and t odd, the product must be = mod16 (mod 16).
    """
    if t not in (2, 3):
        raise ValueError("t must be 2 or 3")
    ps = admissible_primes(flt.bound, flt.require_one_plus_i)
    out = []
    for tup in combinations(ps, t):
        if any(legendre(p, q) != 1 for p, q in combinations(tup, 2)):
            continue
        if flt.mod16 is not None and t % 2:
            prod = 1
            for p in tup:
                prod *= p
            if prod % 16 != flt.mod16:
                continue
        if not _pattern_ok(tup, flt.sqrt2_pattern, Ring.SQRT2):
            continue
        if not _pattern_ok(tup, flt.gauss_pattern, Ring.GAUSS):
            continue
        if flt.case_label is not None:
            try:
                if classify_case(tup).case_label != flt.case_label:
                    continue
            except ValueError:
                continue
        out.append(tup)
    return out
