"""Reciprocity obstructions to rational points on the descent torsors of E_k.

Each torsor factors over Z[sqrt2] (PHI side) or Z[i] (PSI side).  Writing
the factors as kappa_1 * nu^2 and reducing modulo the primes above k gives
necessary conditions for a rational point in terms of quadratic residue
symbols of the split primes.  A failed condition proves the torsor has no
rational point; passing all of them proves nothing.

Conditions are evaluated on the normalized splittings returned by
:func:`descent2.rings.split_prime`; under the standing hypotheses on k the
symbols involved do not depend on that choice.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Optional

from .curves import class_product
from .descent import (
    InadmissibleError,
    InvariantViolation,
    SelmerSet,
    admissible_factorization,
    selmer_compute,
    torsion_class,
)
from .rings import QuadElem, Ring, product, residue_symbol, split_prime
from .symbols import chi, legendre, quartic_symbol, symbol_one_plus_i
from .torsors import (
    SearchBounds,
    Side,
    TorsorSolution,
    combine,
    make_torsor,
    search_solution,
)
from .curves import make_Ek


class Condition(NamedTuple):
    label: str
    holds: bool


class Status(enum.Enum):
    OBSTRUCTED = "OBSTRUCTED"
    SOLVED = "SOLVED"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    status: Status
    reason: Optional[str] = None
    certificate: Optional[TorsorSolution] = None

    @property
    def table_cell(self) -> str:
        return "no" if self.status is Status.OBSTRUCTED else "?"


def _split(primes, ring: Ring) -> dict[int, QuadElem]:
    return {p: split_prime(p, ring).pi for p in primes}


def _parts(k: int, k1: int) -> tuple[list[int], list[int]]:
    primes = admissible_factorization(k)
    if k1 <= 0 or abs(k) % k1:
        raise ValueError(f"k1 = {k1} is not a positive divisor of {abs(k)}")
    inside = [p for p in primes if k1 % p == 0]
    return inside, [p for p in primes if p not in inside]


def lemma10_conditions(k: int, k1: int, mod16: bool = True) -> list[Condition]:
    """Necessary conditions for T^phi(k1) (b1 = k1 odd) to have a point.

    kappa_1 = prod of pi_p over p | k1 in Z[sqrt2].
    """
    inside, outside = _parts(k, k1)
    pis = _split(inside + outside, Ring.SQRT2)
    kappa = product((pis[p] for p in inside), Ring.SQRT2)
    out = []
    if mod16:
        out.append(Condition("b1 = 1 mod 16", k1 % 16 == 1))
    for q in outside:
        for pi in (pis[q], pis[q].conj()):
            out.append(Condition(f"[kappa1/{pi}] = 1", residue_symbol(kappa, pi) == 1))
    for p in inside:
        rest = product((pis[r] for r in inside if r != p), Ring.SQRT2)
        out.append(Condition(f"[kappa1'/{pis[p]}] = 1", residue_symbol(rest, pis[p]) == 1))
    return out


def lemma11_conditions(k: int, k1: int, mod16: bool = False) -> list[Condition]:
    """Necessary conditions for T^phi(2 k1) to have a point."""
    inside, outside = _parts(k, k1)
    pis = _split(inside + outside, Ring.SQRT2)
    kappa = product((pis[p] for p in inside), Ring.SQRT2)
    out = []
    if mod16:
        out.append(Condition("k1 = 1 mod 16", k1 % 16 == 1))
    for q in outside:
        target = quartic_symbol(2, q)
        for pi in (pis[q], pis[q].conj()):
            out.append(Condition(f"[kappa1/{pi}] = (2/{q})_4", residue_symbol(kappa, pi) == target))
    for p in inside:
        out.append(Condition(f"[conj(kappa1)/{pis[p]}] = 1", residue_symbol(kappa.conj(), pis[p]) == 1))
    return out


def lemma12_conditions(k: int, k1: int) -> list[Condition]:
    """Necessary conditions for T^psi(k1) (b1 = k1 odd) to have a point, in Z[i]."""
    inside, outside = _parts(k, k1)
    sigmas = _split(inside + outside, Ring.GAUSS)
    kappa = product((sigmas[p] for p in inside), Ring.GAUSS)
    out = []
    for q in outside:
        for s in (sigmas[q], sigmas[q].conj()):
            out.append(Condition(f"[kappa1/{s}] = 1", residue_symbol(kappa, s) == 1))
    for p in inside:
        s = sigmas[p].conj()
        out.append(Condition(f"[kappa1/{s}] = 1", residue_symbol(kappa, s) == 1))
    return out


def negative_k_conditions(k: int, k1: int, which: str) -> list[Condition]:
    """Lemma conditions adapted to E_k with k < 0.

    L10 loses its mod-16 condition, L11 gains k1 = 1 (mod 16), L12 is unchanged.
    """
    if k >= 0:
        raise ValueError("negative_k_conditions needs k < 0")
    if which == "L10":
        return lemma10_conditions(k, k1, mod16=False)
    if which == "L11":
        return lemma11_conditions(k, k1, mod16=True)
    if which == "L12":
        return lemma12_conditions(k, k1)
    raise ValueError(f"unknown lemma {which!r}")


def _first_failure(conds: list[Condition]) -> Optional[str]:
    for c in conds:
        if not c.holds:
            return c.label
    return None


def lemma_verdict(k: int, side: Side, b1: int) -> Optional[str]:
    """Name of the failing condition that rules out T^side(b1), or None."""
    n = abs(b1)
    if side is Side.PHI:
        if n % 2:
            conds, name = lemma10_conditions(k, n, mod16=k > 0), "L10"
        else:
            conds, name = lemma11_conditions(k, n // 2, mod16=k < 0), "L11"
    else:
        odd = n // 2 if n % 2 == 0 else n
        conds, name = lemma12_conditions(k, odd), "L12"
    failed = _first_failure(conds)
    if failed is None:
        return None
    notes = []
    if b1 < 0:
        notes.append("-1 in W")
    if side is Side.PSI and n % 2 == 0:
        notes.append("2 in W")
    suffix = f" (via {', '.join(notes)})" if notes else ""
    return f"{name}: {failed}{suffix}"


# --- case profiles ----------------------------------------------------------

LETTERS = "abcdefgh"


@dataclass(frozen=True)
class CaseProfile:
    primes: tuple
    chi_values: tuple
    pairwise_sqrt2_symbols: tuple
    pairwise_gauss_symbols: tuple
    case_label: str


def _matrix(primes, ring: Ring) -> tuple:
    n = len(primes)
    return tuple(tuple(0 if i == j else residue_symbol(split_prime(primes[i], ring).pi, split_prime(primes[j], ring).pi)
                       for j in range(n)) for i in range(n))


def classify_case(primes: tuple) -> CaseProfile:
    """Case letter of an ordered pair (p, q) or triple (p, q, r).

    Pairs are labelled by (chi(p), chi(q), [pi_p/pi_q]); triples, which must
    have chi = -1 throughout, by ([pi/lambda], [pi/rho], [rho/lambda]).  In
    each position -1 comes before +1, so a = (-,-,-) and h = (+,+,+).
    """
    primes = tuple(primes)
    if len(primes) not in (2, 3) or len(set(primes)) != len(primes):
        raise ValueError("need 2 or 3 distinct primes")
    for p in primes:
        if p % 8 != 1 or symbol_one_plus_i(p) != 1:
            raise InadmissibleError(f"{p} is not an admissible prime")
    for p, q in combinations(primes, 2):
        if legendre(p, q) != 1:
            raise InadmissibleError(f"({p}/{q}) = -1")
    chis = tuple(chi(p) for p in primes)
    sq = _matrix(primes, Ring.SQRT2)
    gauss = _matrix(primes, Ring.GAUSS)
    if len(primes) == 2:
        signs = (chis[0], chis[1], sq[0][1])
    else:
        if any(c != -1 for c in chis):
            raise InadmissibleError("three-prime cases need chi = -1 for every prime")
        signs = (sq[0][1], sq[0][2], sq[2][1])
    idx = sum((s == 1) << (2 - i) for i, s in enumerate(signs))
    return CaseProfile(primes, chis, sq, gauss, LETTERS[idx])


# --- sweeps -----------------------------------------------------------------


@dataclass
class Sweep:
    k: int
    side: Side
    selmer: SelmerSet
    verdicts: dict = field(default_factory=dict)

    def classes_with(self, status: Status) -> frozenset:
        return frozenset(c for c, v in self.verdicts.items() if v.status is status)

    @property
    def w_upper(self) -> frozenset:
        return self.selmer.classes - self.classes_with(Status.OBSTRUCTED)

    @property
    def solved(self) -> dict:
        return {c: v.certificate for c, v in self.verdicts.items() if v.status is Status.SOLVED}


SOUNDNESS_LOG: list = []  # (k, side, class) for every verdict checked; read by the test suite


def _record(k: int, side: Side, b1: int, obstructed: bool, solved: bool) -> None:
    SOUNDNESS_LOG.append((k, side, b1, obstructed, solved))
    if obstructed and solved:
        raise InvariantViolation(f"T^{side.value}({b1}) for k = {k} is both obstructed and solved")


def obstruction_sweep(k: int, side: Side, bounds: Optional[SearchBounds] = None,
                      workers: Optional[int] = None) -> Sweep:
    """Verdict for every Selmer class of E_k on one side.

    Every class is searched (obstructed ones too) so that a solution of an
    obstructed torsor is caught as an InvariantViolation.  Classes without a
    direct hit are then completed through the group law from solved ones.
    """
    bounds = bounds or SearchBounds()
    pair = make_Ek(k)
    selmer = selmer_compute(pair, side)
    try:
        admissible_factorization(k)
        lemmas = True
    except InadmissibleError:
        lemmas = False

    reasons = {b1: (lemma_verdict(k, side, b1) if lemmas else None) for b1 in selmer}
    certs: dict[int, TorsorSolution] = {}
    for b1 in selmer:
        s = search_solution(make_torsor(pair, side, b1), bounds, workers)
        if s is not None:
            certs[b1] = s

    # close the solved set under the group law
    changed = True
    while changed:
        changed = False
        for c1, c2 in combinations(sorted(certs, key=abs), 2):
            c3 = class_product(c1, c2)
            if c3 in certs or c3 not in selmer:
                continue
            cls, sol = combine(make_torsor(pair, side, c1), certs[c1], make_torsor(pair, side, c2), certs[c2])
            if sol is not None:
                certs[c3] = sol
                changed = True

    sweep = Sweep(k, side, selmer)
    for b1 in selmer:
        reason, cert = reasons[b1], certs.get(b1)
        _record(k, side, b1, reason is not None, cert is not None)
        if cert is not None:
            sweep.verdicts[b1] = Verdict(Status.SOLVED, certificate=cert)
        elif reason is not None:
            sweep.verdicts[b1] = Verdict(Status.OBSTRUCTED, reason=reason)
        else:
            sweep.verdicts[b1] = Verdict(Status.UNKNOWN)
    if torsion_class(pair, side) not in sweep.solved:
        raise InvariantViolation("torsion class was not solved")
    return sweep


def predicted_w_upper(k: int, side: Side) -> Optional[frozenset]:
    """The W bound predicted for E_k when every pairwise symbol is -1, else None.

    PHI side uses the Z[sqrt2] symbols, PSI side the Z[i] symbols.  For
    k > 0 with t odd the PHI prediction also needs k = 9 (mod 16).
    """
    primes = admissible_factorization(k)
    t = len(primes)
    if t == 0:
        return None
    ring = Ring.SQRT2 if side is Side.PHI else Ring.GAUSS
    if any(residue_symbol(split_prime(p, ring).pi, split_prime(q, ring).pi) != -1
           for p, q in combinations(primes, 2)):
        return None
    n = abs(k)
    if side is Side.PSI:
        return frozenset({1, 2} if t % 2 == 0 else {1, 2, n, 2 * n})
    if k > 0:
        if t % 2:
            return frozenset({1, -1}) if n % 16 == 9 else None
        return frozenset({1, -1, 2 * n, -2 * n})
    if t % 2 == 0:
        return frozenset({1, -1})
    return frozenset({1, -1, n, -n})
