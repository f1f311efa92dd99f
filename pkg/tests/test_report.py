import json

import pytest

from descent2.descent import InvariantViolation
from descent2.report import DescentReport, descent_report
from descent2.torsors import SearchBounds

QUICK = SearchBounds(120, 10)


@pytest.fixture(scope="module")
def case_f():
    return descent_report(4633)


def test_case_f_report(case_f):
    assert case_f.rank_interval == [1, 1]
    assert case_f.closed_form_checked
    assert case_f.sha_phi_rank_lower == 2 and case_f.sha_psi_rank_lower == 2
    assert set(case_f.w_phi_lower) == {1, -1, 113, -113}
    assert case_f.conjecture_a and case_f.root_number == -1
    assert case_f.rank_interval_if_parity == [1, 1]
    cert = next(c for c in case_f.certificates if c["side"] == "phi" and c["b1"] == 113)
    assert cert["point"] == {"x": "189953/49", "y": "21464689/343"}


def test_json_round_trip(case_f):
    text = case_f.to_json()
    again = DescentReport.from_json(text)
    assert again == case_f
    assert again.to_json() == text
    assert list(json.loads(text)) == sorted(json.loads(text))


def test_trivial_k():
    rep = descent_report(1, QUICK)
    assert rep.rank_interval == [1, 1]
    assert rep.selmer_psi == [1, 2]


def test_negative_k():
    rep = descent_report(-113, QUICK)
    assert rep.selmer_phi == [-1, 1, -113, 113]
    assert rep.root_number is None and rep.conjecture_a is None
    assert rep.rank_interval == [2, 2]


def test_non_admissible_k_skips_closed_form():
    rep = descent_report(17, QUICK)
    assert not rep.closed_form_checked
    assert rep.rank_interval[0] <= rep.rank_interval[1]


def test_zero_k():
    with pytest.raises(ValueError):
        descent_report(0)


def test_rank_lower_bound_monotone_in_bounds():
    small = descent_report(113 * 337, SearchBounds(30, 3))
    big = descent_report(113 * 337, SearchBounds(200, 20))
    assert small.rank_interval[0] <= big.rank_interval[0]
    assert big.rank_interval[1] <= small.rank_interval[1]
    assert set(small.w_phi_lower) <= set(big.w_phi_lower)


def test_closed_form_mismatch_is_an_invariant_violation(monkeypatch):
    import descent2.report as report
    from descent2.descent import SelmerSet

    monkeypatch.setattr(report, "selmer_closed_form", lambda k, side: SelmerSet(side, frozenset({1})))
    with pytest.raises(InvariantViolation):
        report.descent_report(113, QUICK)
