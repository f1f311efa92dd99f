"""Full descent pipeline for E_k and its JSON form."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from .curves import make_Ek
from .descent import (
    InadmissibleError,
    InvariantViolation,
    SelmerSet,
    conjecture_a_check,
    family_root_number,
    rank_interval,
    selmer_closed_form,
    sha_lower_bound,
    subgroup_generated,
    torsion_class,
)
from .obstructions import Status, Sweep, obstruction_sweep
from .torsors import SearchBounds, Side, make_torsor, solution_to_point


def _classes(s) -> list[int]:
    return sorted(s, key=lambda c: (abs(c), c))


@dataclass
class DescentReport:
    k: int
    bounds: dict
    selmer_phi: list
    selmer_psi: list
    w_phi_lower: list
    w_psi_lower: list
    w_phi_upper: list
    w_psi_upper: list
    unknown_phi: list
    unknown_psi: list
    rank_interval: list
    sha_phi_rank_lower: int
    sha_psi_rank_lower: int
    sha_phi_rank_upper: int
    sha_psi_rank_upper: int
    closed_form_checked: bool
    root_number: Optional[int]
    conjecture_a: Optional[bool]
    rank_interval_if_parity: Optional[list]
    certificates: list = field(default_factory=list)
    obstructions: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> DescentReport:
        return cls(**json.loads(text))


def _sha_upper(selmer: SelmerSet, w_lower: SelmerSet) -> int:
    return selmer.rank - w_lower.rank


def descent_report(k: int, bounds: Optional[SearchBounds] = None, workers: Optional[int] = None) -> DescentReport:
    if k == 0:
        raise ValueError("k must be nonzero")
    bounds = bounds or SearchBounds()
    pair = make_Ek(k)
    sweeps: dict[Side, Sweep] = {s: obstruction_sweep(k, s, bounds, workers) for s in Side}

    checked = False
    for side, sw in sweeps.items():
        try:
            closed = selmer_closed_form(k, side)
        except InadmissibleError:
            continue
        if closed.classes != sw.selmer.classes:
            raise InvariantViolation(f"{side.name} Selmer group disagrees with the closed form")
        checked = True

    lower = {s: subgroup_generated(s, [torsion_class(pair, s), *sw.solved]) for s, sw in sweeps.items()}
    for s, sw in sweeps.items():
        if not lower[s].classes <= sw.w_upper:
            raise InvariantViolation(f"{s.name}: a solved class is also obstructed")
    phi, psi = sweeps[Side.PHI], sweeps[Side.PSI]
    lo, hi = rank_interval(lower[Side.PSI], lower[Side.PHI], psi.w_upper, phi.w_upper)

    w = family_root_number(k)
    conj = None if w is None else conjecture_a_check(phi.selmer, psi.selmer, w)
    parity = None
    if w is not None:
        v = 0 if w == 1 else 1
        allowed = [r for r in range(lo, hi + 1) if r % 2 == v]
        parity = [allowed[0], allowed[-1]] if allowed else []

    certs = []
    obstructions = {}
    for side, sw in sweeps.items():
        for b1, sol in sorted(sw.solved.items(), key=lambda kv: (abs(kv[0]), kv[0])):
            P = solution_to_point(make_torsor(pair, side, b1), sol)
            certs.append({
                "side": side.value,
                "b1": b1,
                "solution": {"N": sol.N, "M": sol.M, "e": sol.e},
                "point": None if P.is_infinity else {"x": str(P.x), "y": str(P.y)},
            })
        obstructions[side.value] = {
            str(b1): v.reason for b1, v in sw.verdicts.items() if v.status is Status.OBSTRUCTED
        }

    return DescentReport(
        k=k,
        bounds={"m_max": bounds.m_max, "e_max": bounds.e_max},
        selmer_phi=phi.selmer.sorted(),
        selmer_psi=psi.selmer.sorted(),
        w_phi_lower=lower[Side.PHI].sorted(),
        w_psi_lower=lower[Side.PSI].sorted(),
        w_phi_upper=_classes(phi.w_upper),
        w_psi_upper=_classes(psi.w_upper),
        unknown_phi=_classes(phi.classes_with(Status.UNKNOWN)),
        unknown_psi=_classes(psi.classes_with(Status.UNKNOWN)),
        rank_interval=[lo, hi],
        sha_phi_rank_lower=sha_lower_bound(phi.selmer, phi.w_upper),
        sha_psi_rank_lower=sha_lower_bound(psi.selmer, psi.w_upper),
        sha_phi_rank_upper=_sha_upper(phi.selmer, lower[Side.PHI]),
        sha_psi_rank_upper=_sha_upper(psi.selmer, lower[Side.PSI]),
        closed_form_checked=checked,
        root_number=w,
        conjecture_a=conj,
        rank_interval_if_parity=parity,
        certificates=certs,
        obstructions=obstructions,
    )
