import pytest

from descent2.obstructions import classify_case
from descent2.primes import AdmissibilityFilter, admissible_primes, find_tuples
from descent2.rings import Ring, symbol_between_primes
from descent2.symbols import symbol_one_plus_i


def test_admissible_primes_examples():
    small = admissible_primes(120)
    assert 41 in small and 113 in small and 17 not in small
    assert (73 in small) == (symbol_one_plus_i(73) == 1)
    assert {257, 337, 353, 409, 569} <= set(admissible_primes(600))
    assert admissible_primes(16) == []
    assert admissible_primes(600) == sorted(admissible_primes(600))


def test_filter_validation():
    with pytest.raises(ValueError):
        AdmissibilityFilter(10)
    with pytest.raises(ValueError):
        AdmissibilityFilter(100, mod16=3)
    with pytest.raises(ValueError):
        AdmissibilityFilter(100, sqrt2_pattern=((0, 1), (-1, 0)))
    with pytest.raises(ValueError):
        find_tuples(4, AdmissibilityFilter(100))


def test_find_tuples_examples():
    assert (41, 409) in find_tuples(2, AdmissibilityFilter(600, case_label="a"))
    assert (113, 337) in find_tuples(2, AdmissibilityFilter(600, case_label="h"))
    assert isinstance(find_tuples(2, AdmissibilityFilter(100, case_label="d")), list)


@pytest.mark.parametrize("label", "abcdefgh")
def test_every_two_prime_case_is_realized(label):
    found = find_tuples(2, AdmissibilityFilter(600, case_label=label))
    assert found
    assert all(classify_case(t).case_label == label for t in found)
    assert found == sorted(found)


def test_mod16_and_patterns():
    triples = find_tuples(3, AdmissibilityFilter(1200, mod16=9))
    assert triples and all((a * b * c) % 16 == 9 for a, b, c in triples)
    minus = ((0, -1), (-1, 0))
    pairs = find_tuples(2, AdmissibilityFilter(600, sqrt2_pattern=minus, gauss_pattern=minus))
    assert pairs
    for p, q in pairs:
        assert symbol_between_primes(p, q, Ring.SQRT2) == -1
        assert symbol_between_primes(p, q, Ring.GAUSS) == -1
