"""Exact first 2-descent on the curves y^2 = x(x^2 - 2kx + 2k^2)."""
from .curves import CurvePair, RatPoint, Which, make_Ek, make_pair
from .descent import (
    InadmissibleError,
    InvariantViolation,
    SelmerSet,
    selmer_closed_form,
    selmer_compute,
)
from .obstructions import Status, Verdict, classify_case, obstruction_sweep
from .primes import AdmissibilityFilter, admissible_primes, find_tuples
from .report import DescentReport, descent_report
from .tables import verify_tables
from .torsors import SearchBounds, Side, Torsor, TorsorSolution, make_torsor, search_solution

__all__ = [
    "AdmissibilityFilter", "CurvePair", "DescentReport", "InadmissibleError", "InvariantViolation",
    "RatPoint", "SearchBounds", "SelmerSet", "Side", "Status", "Torsor", "TorsorSolution",
    "Verdict", "Which", "admissible_primes", "classify_case", "descent_report", "find_tuples",
    "make_Ek", "make_pair", "make_torsor", "obstruction_sweep", "search_solution",
    "selmer_closed_form", "selmer_compute", "verify_tables",
]
__version__ = "0.1.0"
