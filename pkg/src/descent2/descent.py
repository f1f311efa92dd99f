"""Selmer groups, Weil groups and the bookkeeping of a first 2-descent."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from sympy import divisors, primefactors

from .curves import CurvePair, class_product, sqfree_kernel
from .symbols import legendre, symbol_one_plus_i
from .torsors import (
    SearchBounds,
    Side,
    TorsorSolution,
    everywhere_locally_solvable,
    make_torsor,
    search_solution,
    side_constants,
)


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; results cannot be trusted."""


class InadmissibleError(ValueError):
    """k is not a product of primes = 1 mod 8 meeting the symbol hypotheses."""


@dataclass(frozen=True)
class SelmerSet:
    side: Side
    classes: frozenset

    @property
    def size(self) -> int:
        return len(self.classes)

    @property
    def rank(self) -> int:
        r = self.size.bit_length() - 1
        if 1 << r != self.size:
            raise InvariantViolation(f"{self.size} classes do not form an elementary 2-group")
        return r

    def is_subgroup(self) -> bool:
        if 1 not in self.classes:
            return False
        return all(class_product(a, b) in self.classes for a, b in combinations(self.classes, 2))

    def sorted(self) -> list[int]:
        return sorted(self.classes, key=lambda c: (abs(c), c))

    def __contains__(self, c: int) -> bool:
        return c in self.classes

    def __iter__(self):
        return iter(self.sorted())


def subgroup_generated(side: Side, gens: Iterable[int]) -> SelmerSet:
    group = {1}
    for g in gens:
        if g not in group:
            group |= {class_product(g, h) for h in group}
    return SelmerSet(side, frozenset(group))


def torsion_class(pair: CurvePair, side: Side) -> int:
    """Image of the 2-torsion point: b on the PSI side, b_hat on the PHI side."""
    _, prod = side_constants(pair, side)
    return sqfree_kernel(prod)


def candidate_classes(pair: CurvePair, side: Side) -> list[int]:
    _, prod = side_constants(pair, side)
    rad = 1
    for p in primefactors(abs(prod)):
        rad *= p
    return sorted((s * d for d in divisors(rad) for s in (1, -1)), key=lambda c: (abs(c), c))


def selmer_compute(pair: CurvePair, side: Side) -> SelmerSet:
    """Squarefree divisors b1 of b (or b_hat) whose torsor is everywhere locally solvable."""
    classes = frozenset(b1 for b1 in candidate_classes(pair, side)
                        if everywhere_locally_solvable(make_torsor(pair, side, b1)))
    sel = SelmerSet(side, classes)
    if not sel.is_subgroup():
        raise InvariantViolation(f"{side.name} Selmer set {sel.sorted()} is not a group")
    return sel


def admissible_factorization(k: int) -> list[int]:
    """Primes of |k| if it meets the standing hypotheses, else InadmissibleError.

    |k| must be a squarefree product of primes p = 1 (mod 8) with
    (p_i/p_j) = +1 for i != j and (1+i/p) = +1 for each p.  k = +-1 is
    the empty product.
    """
    from sympy import factorint

    if k == 0:
        raise InadmissibleError("k = 0")
    fac = factorint(abs(k))
    primes = sorted(fac)
    if any(e > 1 for e in fac.values()):
        raise InadmissibleError(f"{k} is not squarefree")
    for p in primes:
        if p % 8 != 1:
            raise InadmissibleError(f"{p} is not = 1 mod 8")
        if symbol_one_plus_i(p) != 1:
            raise InadmissibleError(f"(1+i/{p}) = -1")
    for p, q in combinations(primes, 2):
        if legendre(p, q) != 1:
            raise InadmissibleError(f"({p}/{q}) = -1")
    return primes


def selmer_closed_form(k: int, side: Side) -> SelmerSet:
    """Divisor description of the Selmer groups of E_k under the standing hypotheses."""
    admissible_factorization(k)
    n = abs(k)
    if side is Side.PHI:
        base = 2 * n if k > 0 else n
        classes = {s * d for d in divisors(base) for s in (1, -1)}
    else:
        classes = set(divisors(2 * n))
    return SelmerSet(side, frozenset(classes))


def solve_classes(pair: CurvePair, side: Side, classes: Iterable[int],
                  bounds: SearchBounds, workers: Optional[int] = None) -> dict[int, TorsorSolution]:
    found = {}
    for b1 in classes:
        s = search_solution(make_torsor(pair, side, b1), bounds, workers)
        if s is not None:
            found[b1] = s
    return found


def weil_lower(pair: CurvePair, side: Side, bounds: SearchBounds,
               selmer: Optional[SelmerSet] = None) -> SelmerSet:
    """Subgroup generated by the torsion class and every class with a found solution."""
    selmer = selmer_compute(pair, side) if selmer is None else selmer
    found = solve_classes(pair, side, selmer, bounds)
    return subgroup_generated(side, [torsion_class(pair, side), *found])


def _floor_log2(n: int) -> int:
    return n.bit_length() - 1


def rank_interval(w_psi_lower: SelmerSet, w_phi_lower: SelmerSet,
                  upper_psi: SelmerSet | frozenset, upper_phi: SelmerSet | frozenset) -> tuple[int, int]:
    """Bounds on the Mordell-Weil rank from 2^(r+2) = #im alpha * #im beta.

    The upper sets need not be groups (Selmer minus obstructed classes); the
    image is a group inside them, so its order is at most the largest power
    of two not exceeding their size.
    """
    lo = max(0, w_psi_lower.rank + w_phi_lower.rank - 2)
    hi = _floor_log2(len(_classes(upper_psi))) + _floor_log2(len(_classes(upper_phi))) - 2
    if lo > hi:
        raise InvariantViolation(f"empty rank interval [{lo}, {hi}]")
    return lo, hi


def _classes(s) -> frozenset:
    return s.classes if isinstance(s, SelmerSet) else frozenset(s)


def sha_lower_bound(selmer: SelmerSet, w_upper: SelmerSet | frozenset) -> int:
    """Lower bound on the 2-rank of Sha[phi] (or Sha[psi]) from 0 -> W -> S -> Sha -> 0."""
    w = _classes(w_upper)
    if not w <= selmer.classes:
        raise ValueError("w_upper is not contained in the Selmer group")
    return selmer.rank - _floor_log2(len(w))


def family_root_number(k: int) -> Optional[int]:
    """Root number of E_k where it is known to this package, else None.

    Only 0 < k = 1 (mod 8) is covered (w = -1); this is an external result
    taken on trust, not computed here.
    """
    if k > 0 and k % 8 == 1:
        return -1
    return None


def conjecture_a_check(selmer_phi: SelmerSet, selmer_psi: SelmerSet, root_number: int) -> bool:
    """rank S^phi + rank S^psi = v (mod 2) where root_number = (-1)^v."""
    if root_number not in (1, -1):
        raise ValueError("root number must be +-1")
    v = 0 if root_number == 1 else 1
    return (selmer_phi.rank + selmer_psi.rank) % 2 == v

