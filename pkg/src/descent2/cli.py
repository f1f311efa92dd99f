"""Command-line interface: ``python -m descent2 <command> ...``.

Exit codes: 0 success, 1 usage error, 2 internal inconsistency or table mismatch.
"""
from __future__ import annotations

import argparse
import configparser
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from .curves import make_Ek
from .descent import (
    InadmissibleError,
    InvariantViolation,
    admissible_factorization,
    selmer_closed_form,
    selmer_compute,
)
from .obstructions import Status, classify_case, obstruction_sweep
from .primes import AdmissibilityFilter, find_tuples
from .report import descent_report
from .rings import Ring, split_prime, symbol_between_primes
from .symbols import chi, quartic_symbol, symbol_one_plus_i, symbol_one_plus_sqrt2
from .tables import render_verdicts, verify_tables
from .torsors import (
    SearchBounds,
    Side,
    local_report,
    make_torsor,
    search_solution,
    solution_to_point,
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def load_config(path: Optional[str]) -> dict[str, int]:
    """Read key=value defaults (m_max, e_max, threads) from ``path`` or $DESCENT2_CONFIG."""
    path = path or os.environ.get("DESCENT2_CONFIG")
    if not path:
        return {}
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"config file {path} not found")
    cp = configparser.ConfigParser()
    try:
        cp.read_string("[defaults]\n" + p.read_text())
        out = {key: int(val) for key, val in cp["defaults"].items()}
    except (configparser.Error, ValueError) as exc:
        raise UsageError(f"bad config file {path}: {exc}") from None
    unknown = set(out) - {"m_max", "e_max", "threads"}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return out


def _bounds(args) -> SearchBounds:
    try:
        return SearchBounds(args.m_max, args.e_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text)


# --- commands ---------------------------------------------------------------


def cmd_symbols(args) -> int:
    primes = [args.p] + ([args.q] if args.q else [])
    rows, data = [], {"primes": {}}
    for p in primes:
        if p % 8 != 1:
            raise UsageError(f"{p} is not a prime = 1 mod 8")
        g, s = split_prime(p, Ring.GAUSS), split_prime(p, Ring.SQRT2)
        entry = {
            "chi": chi(p),
            "two_quartic": quartic_symbol(2, p),
            "one_plus_i": symbol_one_plus_i(p),
            "one_plus_sqrt2": symbol_one_plus_sqrt2(p),
            "gauss": str(g.pi),
            "sqrt2": str(s.pi),
        }
        data["primes"][str(p)] = entry
        rows.append(f"p = {p}: chi = {entry['chi']:+d}, (2/p)_4 = {entry['two_quartic']:+d}, "
                    f"(1+i/p) = {entry['one_plus_i']:+d}, (1+sqrt2/p) = {entry['one_plus_sqrt2']:+d}, "
                    f"p = N({entry['gauss']}) = N({entry['sqrt2']})")
    if args.q:
        p, q = primes
        pair = {
            "sqrt2": symbol_between_primes(p, q, Ring.SQRT2),
            "gauss": symbol_between_primes(p, q, Ring.GAUSS),
        }
        data["pairwise"] = pair
        rows.append(f"[pi_{p}/pi_{q}] = {pair['sqrt2']:+d} in Z[sqrt2], {pair['gauss']:+d} in Z[i]")
    _emit(args, data, "\n".join(rows))
    return 0


def cmd_torsor(args) -> int:
    pair = make_Ek(args.k)
    side = Side.parse(args.side)
    try:
        t = make_torsor(pair, side, args.b1)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sol = search_solution(t, _bounds(args), args.threads)
    P = solution_to_point(t, sol) if sol is not None else None
    local = local_report(t)
    data = {
        "k": args.k,
        "side": side.value,
        "b1": args.b1,
        "solution": None if sol is None else {"n": sol.N, "m": sol.M, "e": sol.e},
        "point": None if P is None or P.is_infinity else {"x": _frac(P.x), "y": _frac(P.y)},
        "local": local,
    }
    lines = [str(t), "local: " + ", ".join(f"{pl}={'yes' if ok else 'no'}" for pl, ok in local.items())]
    if sol is None:
        lines.append("none within bounds")
    else:
        lines.append(f"solution (N, M, e) = ({sol.N}, {sol.M}, {sol.e})")
        if data["point"]:
            lines.append(f"point ({data['point']['x']}, {data['point']['y']})")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_descend(args) -> int:
    rep = descent_report(args.k, _bounds(args), args.threads)
    if args.json:
        print(rep.to_json())
        return 0
    lo, hi = rep.rank_interval
    lines = [
        f"E_{rep.k}: y^2 = x(x^2 {-2 * rep.k:+d}x {2 * rep.k * rep.k:+d})",
        f"S^phi = {rep.selmer_phi}",
        f"S^psi = {rep.selmer_psi}",
        f"W^phi lower {rep.w_phi_lower}, upper {rep.w_phi_upper}",
        f"W^psi lower {rep.w_psi_lower}, upper {rep.w_psi_upper}",
        f"rank in [{lo}, {hi}]",
        f"Sha[phi] 2-rank in [{rep.sha_phi_rank_lower}, {rep.sha_phi_rank_upper}]",
        f"Sha[psi] 2-rank in [{rep.sha_psi_rank_lower}, {rep.sha_psi_rank_upper}]",
    ]
    if rep.root_number is not None:
        lines.append(f"root number {rep.root_number:+d} (assumed); parity check "
                     f"{'passes' if rep.conjecture_a else 'fails'}; "
                     f"rank in {rep.rank_interval_if_parity} if the parity conjecture holds")
    _emit(args, None, "\n".join(lines))
    return 0


def cmd_selmer(args) -> int:
    pair = make_Ek(args.k)
    sides = list(Side) if args.side == "both" else [Side.parse(args.side)]
    data, lines = {}, []
    for side in sides:
        sel = selmer_compute(pair, side)
        try:
            closed = selmer_closed_form(args.k, side).sorted()
        except InadmissibleError:
            closed = None
        if closed is not None and closed != sel.sorted():
            raise InvariantViolation(f"{side.value}: computed {sel.sorted()} but closed form {closed}")
        data[side.value] = {"classes": sel.sorted(), "rank": sel.rank, "closed_form": closed}
        tag = "" if closed is None else " (matches closed form)"
        lines.append(f"S^{side.value} = {sel.sorted()}, rank {sel.rank}{tag}")
    _emit(args, data, "\n".join(lines))
    return 0


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None


def cmd_classify(args) -> int:
    prof = classify_case(_parse_primes(args.primes))
    data = {
        "primes": list(prof.primes),
        "case": prof.case_label,
        "chi": list(prof.chi_values),
        "sqrt2_symbols": [list(r) for r in prof.pairwise_sqrt2_symbols],
        "gauss_symbols": [list(r) for r in prof.pairwise_gauss_symbols],
    }
    _emit(args, data, f"primes {list(prof.primes)}: case {prof.case_label}, chi = {list(prof.chi_values)}")
    return 0


def cmd_sweep(args) -> int:
    side = Side.parse(args.side)
    sw = obstruction_sweep(args.k, side, _bounds(args), args.threads)
    order = sorted(sw.verdicts, key=lambda c: (abs(c), c))
    try:
        t = len(admissible_factorization(args.k))
    except InadmissibleError:
        t = None
    extrapolated = t is not None and t >= 4
    data = {"k": args.k, "side": side.value, "extrapolated": extrapolated, "verdicts": {}}
    lines = ["extrapolated, no golden file (t >= 4)"] if extrapolated else []
    for b1 in order:
        v = sw.verdicts[b1]
        entry = {"status": v.status.value, "reason": v.reason}
        if v.certificate is not None:
            entry["solution"] = {"n": v.certificate.N, "m": v.certificate.M, "e": v.certificate.e}
        data["verdicts"][str(b1)] = entry
        extra = v.reason if v.status is Status.OBSTRUCTED else (
            f"({v.certificate.N}, {v.certificate.M}, {v.certificate.e})" if v.certificate else "")
        lines.append(f"{b1:>12}  {v.status.value:<10} {extra}")
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_search_k(args) -> int:
    try:
        flt = AdmissibilityFilter(args.bound, mod16=args.mod16, case_label=args.case)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    tuples = find_tuples(args.t, flt)
    data = {"t": args.t, "case": args.case, "bound": args.bound, "tuples": [list(t) for t in tuples]}
    text = "\n".join(" ".join(map(str, t)) for t in tuples) or "no tuples"
    _emit(args, data, text)
    return 0


def cmd_verify_tables(args) -> int:
    try:
        rep = verify_tables(args.golden, _bounds(args))
    except FileNotFoundError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(rep.to_dict(), sort_keys=True, indent=2))
    else:
        for table in ("t=2 verdicts", "t=3 verdicts"):
            if rep.counts(table)[1]:
                print(f"{table} (actual/expected; ! mismatch, ~ ambiguous):")
                print(render_verdicts(rep, table))
        for c in rep.failures + rep.ambiguous_differences:
            print(c)
        print("\n".join(rep.summary()))
    return 0 if rep.ok else 2


# --- parser -----------------------------------------------------------------


def build_parser(defaults: dict[str, int]) -> argparse.ArgumentParser:
    parser = _Parser(prog="descent2", description="2-descent on y^2 = x(x^2 - 2kx + 2k^2)")
    parser.add_argument("--config", help="key=value file with m_max, e_max, threads")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, func, search=False):
        p = sub.add_parser(name)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if search:
            p.add_argument("--m-max", type=int, default=defaults.get("m_max", SearchBounds.m_max))
            p.add_argument("--e-max", type=int, default=defaults.get("e_max", SearchBounds.e_max))
            p.add_argument("--threads", type=int, default=defaults.get("threads"))
        p.set_defaults(func=func)
        return p

    p = add("symbols", cmd_symbols)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int)

    p = add("torsor", cmd_torsor, search=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--side", choices=["phi", "psi"], required=True)
    p.add_argument("--b1", type=int, required=True)

    p = add("descend", cmd_descend, search=True)
    p.add_argument("--k", type=int, required=True)

    p = add("selmer", cmd_selmer)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--side", choices=["phi", "psi", "both"], default="both")

    p = add("classify", cmd_classify)
    p.add_argument("--primes", required=True, help="p,q or p,q,r")

    p = add("sweep", cmd_sweep, search=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--side", choices=["phi", "psi"], required=True)

    p = add("search-k", cmd_search_k)
    p.add_argument("--t", type=int, choices=[2, 3], required=True)
    p.add_argument("--case", choices=list("abcdefgh"))
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--mod16", type=int, choices=[1, 9])

    p = add("verify-tables", cmd_verify_tables)
    p.add_argument("--golden", type=Path, help="directory of golden files (default: shipped set)")
    p.set_defaults(m_max=200, e_max=20)
    return parser


def _config_arg(argv: Sequence[str]) -> Optional[str]:
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        defaults = load_config(_config_arg(argv))
        args = build_parser(defaults).parse_args(argv)
        if getattr(args, "k", None) == 0:
            raise UsageError("k must be nonzero")
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except (InadmissibleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
