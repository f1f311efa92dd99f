from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from descent2.curves import (
    INFINITY,
    RatPoint,
    Which,
    add,
    alpha_image,
    beta_image,
    class_product,
    make_Ek,
    make_pair,
    multiply,
    on_curve,
    point,
    sqfree_kernel,
    torsion_point,
)
from descent2.torsors import Side, TorsorSolution, make_torsor, solution_to_point

K = 113 * 257
PAIR = make_Ek(K)
# points on E_k from solutions of the PSI torsors of classes 257 and 113
P1 = solution_to_point(make_torsor(PAIR, Side.PSI, 257), TorsorSolution(4369, 19, 1))
P2 = solution_to_point(make_torsor(PAIR, Side.PSI, 113), TorsorSolution(8857505, 771, 56))
T = torsion_point()
GENERATORS = [P1, P2, T]


@pytest.mark.parametrize("a, b, a_hat, b_hat", [
    (0, 1, 0, -4), (-2, 2, 4, -4), (-226, 25538, 452, -51076),
])
def test_make_pair_examples(a, b, a_hat, b_hat):
    pair = make_pair(a, b)
    assert (pair.a_hat, pair.b_hat) == (a_hat, b_hat)


@pytest.mark.parametrize("k, a, b", [(1, -2, 2), (4633, -9266, 42929378), (-113, 226, 25538)])
def test_make_Ek_examples(k, a, b):
    pair = make_Ek(k)
    assert (pair.a, pair.b) == (a, b)
    assert pair.conductor == 2**7 * k * k


@pytest.mark.parametrize("a, b", [(0, 0), (2, 1), (4, 4)])
def test_singular_curves_rejected(a, b):
    with pytest.raises(ValueError):
        make_pair(a, b)


def test_make_Ek_rejects_zero():
    with pytest.raises(ValueError):
        make_Ek(0)


@given(st.integers(-500, 500), st.integers(-500, 500).filter(bool))
def test_double_dual_rescales(a, b):
    if a * a == 4 * b:
        return
    pair = make_pair(a, b)
    dd = make_pair(pair.a_hat, pair.b_hat)
    assert (dd.a_hat, dd.b_hat) == (4 * a, 16 * b)


def test_on_curve_examples():
    pair = make_Ek(4633)
    assert on_curve(INFINITY, Which.E, pair)
    assert on_curve(point(0, 0), Which.E, pair)
    assert on_curve(point(Fraction(189953, 49), Fraction(21464689, 343)), Which.E_HAT, pair)
    assert not on_curve(point(Fraction(189953, 49), Fraction(21464689, 343)), Which.E, pair)


def test_add_examples():
    assert add(P1, INFINITY, Which.E, PAIR) == P1
    assert add(T, T, Which.E, PAIR) == INFINITY
    assert add(P1, -P1, Which.E, PAIR) == INFINITY


@pytest.mark.parametrize("n, expected", [(4, 1), (-18, -2), (2 * 4633**2, 2), (-1, -1), (12, 3)])
def test_sqfree_kernel_examples(n, expected):
    assert sqfree_kernel(n) == expected


def test_sqfree_kernel_rejects_zero():
    with pytest.raises(ValueError):
        sqfree_kernel(0)


def test_torsion_images():
    pair = make_Ek(4633)
    assert alpha_image(INFINITY, pair) == 1
    assert alpha_image(T, pair) == 2
    assert beta_image(T, pair) == -1


def test_generator_images():
    assert alpha_image(P1, PAIR) == 257
    assert alpha_image(P2, PAIR) == 113


combos = st.tuples(*[st.integers(-2, 2)] * 3)


def _combo(cs):
    out = INFINITY
    for c, g in zip(cs, GENERATORS):
        out = add(out, multiply(c, g, Which.E, PAIR), Which.E, PAIR)
    return out


@given(combos, combos)
def test_alpha_is_a_homomorphism(c1, c2):
    P, Q = _combo(c1), _combo(c2)
    S = add(P, Q, Which.E, PAIR)
    assert on_curve(S, Which.E, PAIR)
    assert alpha_image(S, PAIR) == class_product(alpha_image(P, PAIR), alpha_image(Q, PAIR))


@given(combos)
def test_doubling_is_in_the_kernel(cs):
    P = _combo(cs)
    assert alpha_image(multiply(2, P, Which.E, PAIR), PAIR) == 1


def test_multiply_matches_repeated_addition():
    acc = INFINITY
    for n in range(6):
        assert multiply(n, P1, Which.E, PAIR) == acc
        acc = add(acc, P1, Which.E, PAIR)
    assert multiply(-3, P1, Which.E, PAIR) == -multiply(3, P1, Which.E, PAIR)


def test_ratpoint_infinity():
    assert RatPoint().is_infinity and -INFINITY == INFINITY
