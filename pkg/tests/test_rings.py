from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import PRIMES_1_MOD_8, SMALL_PRIMES_1_MOD_8
from descent2.rings import (
    EPSILON,
    QuadElem,
    Ring,
    reduce_mod,
    residue_symbol,
    ring_arith,
    split_prime,
    symbol_between_primes,
)
from descent2.symbols import legendre, quartic_symbol

rings = st.sampled_from(list(Ring))
coeff = st.integers(-10**6, 10**6)


def elems(ring):
    return st.builds(QuadElem, st.just(ring), coeff, coeff)


def divides(pi: QuadElem, gamma: QuadElem) -> bool:
    p = abs(pi.norm())
    t = gamma * pi.conj()
    return t.x % p == 0 and t.y % p == 0


def power_mod(alpha: QuadElem, n: int, p: int) -> QuadElem:
    result, base = QuadElem(alpha.ring, 1, 0), QuadElem(alpha.ring, alpha.x % p, alpha.y % p)
    while n:
        if n & 1:
            r = result * base
            result = QuadElem(r.ring, r.x % p, r.y % p)
        b = base * base
        base = QuadElem(b.ring, b.x % p, b.y % p)
        n >>= 1
    return result


def definitional_symbol(alpha: QuadElem, pi: QuadElem) -> int:
    p = abs(pi.norm())
    beta = power_mod(alpha, (p - 1) // 2, p)
    if divides(pi, beta - 1):
        return 1
    assert divides(pi, beta + 1)
    return -1


def test_ring_arith_examples():
    assert ring_arith(QuadElem(Ring.SQRT2, 5, 2), None, "norm") == 17
    assert ring_arith(QuadElem(Ring.GAUSS, 4, 1), None, "conj") == QuadElem(Ring.GAUSS, 4, -1)
    assert ring_arith(EPSILON, EPSILON.conj(), "mul") == QuadElem(Ring.SQRT2, -1, 0)
    assert EPSILON.norm() == -1


def test_ring_mismatch_and_unknown_op():
    with pytest.raises(ValueError):
        QuadElem(Ring.SQRT2, 1, 1) + QuadElem(Ring.GAUSS, 1, 1)
    with pytest.raises(ValueError):
        ring_arith(EPSILON, EPSILON, "div")


@pytest.mark.parametrize("p, ring, pi", [
    (17, Ring.SQRT2, QuadElem(Ring.SQRT2, 5, 2)),
    (17, Ring.GAUSS, QuadElem(Ring.GAUSS, 1, 4)),
    (41, Ring.SQRT2, QuadElem(Ring.SQRT2, 7, 2)),
])
def test_split_prime_examples(p, ring, pi):
    sp = split_prime(p, ring)
    assert sp.pi == pi and sp.pibar == pi.conj()


def test_split_prime_rejects_other_residues():
    with pytest.raises(ValueError):
        split_prime(13, Ring.GAUSS)


def test_symbol_examples():
    sigma = split_prime(17, Ring.GAUSS).pi
    pi = split_prime(17, Ring.SQRT2).pi
    assert residue_symbol(sigma.conj(), sigma) == 1
    assert residue_symbol(pi.conj(), pi) == -1
    assert symbol_between_primes(41, 409, Ring.SQRT2) == -1
    assert symbol_between_primes(113, 337, Ring.SQRT2) == 1


def test_symbol_of_multiple_is_an_error():
    pi = split_prime(17, Ring.SQRT2).pi
    with pytest.raises(ValueError):
        residue_symbol(pi * 3, pi)


@given(rings.flatmap(lambda r: st.tuples(elems(r), elems(r))))
def test_norm_is_multiplicative(pair):
    a, b = pair
    assert (a * b).norm() == a.norm() * b.norm()
    assert (a * b).conj() == a.conj() * b.conj()


@given(rings, st.sampled_from(PRIMES_1_MOD_8[:200]), coeff, coeff)
def test_residue_map_matches_power_definition(ring, p, x, y):
    pi = split_prime(p, ring).pi
    alpha = QuadElem(ring, x, y)
    if divides(pi, alpha):
        return
    assert residue_symbol(alpha, pi) == definitional_symbol(alpha, pi)
    assert reduce_mod(alpha * alpha.conj(), pi) == alpha.norm() % p


@pytest.mark.parametrize("p", PRIMES_1_MOD_8)
def test_conjugate_symbols(p):
    sigma = split_prime(p, Ring.GAUSS).pi
    pi = split_prime(p, Ring.SQRT2).pi
    assert residue_symbol(sigma.conj(), sigma) == 1
    assert residue_symbol(QuadElem(Ring.GAUSS, 0, 1), sigma) == 1
    assert residue_symbol(pi.conj(), pi) == quartic_symbol(2, p)


def test_symbol_symmetry_in_sqrt2():
    for p, q in combinations(SMALL_PRIMES_1_MOD_8, 2):
        assert symbol_between_primes(p, q, Ring.SQRT2) == symbol_between_primes(q, p, Ring.SQRT2), (p, q)


def test_symbol_independent_of_chosen_prime():
    eps2 = EPSILON * EPSILON
    for p, q in combinations(SMALL_PRIMES_1_MOD_8[:40], 2):
        if legendre(p, q) != 1:
            continue
        for ring in Ring:
            kappa = split_prime(p, ring).pi
            sp = split_prime(q, ring)
            ref = residue_symbol(kappa, sp.pi)
            assert residue_symbol(kappa.conj(), sp.pi) == ref
            assert residue_symbol(kappa, sp.pibar) == ref
            if ring is Ring.SQRT2:
                assert residue_symbol(kappa * eps2, sp.pi) == ref
