"""Command-line front end: ``weilform <command> [--input FILE] [--format json|text]``.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 when the input is malformed.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations
from typing import List, Optional

from .cohomology import IhInput, ih_check, mixed_check
from .duality import classify_self_duality
from .errors import InputError, InvariantViolation, NonIntegralWeight, PurityError, RepresentationError, WeilformError
from .exact.poly import Poly, rat_str
from .frobenius import FrobeniusModule, char_poly, invariant_factors, jordan_profile, weight_split
from .groups import FiniteGroup, FiniteGroupRep, bundled_irreps
from .indicator import bg_l2_series, chebotarev_identity, class_union, classify_rep
from .kring import run_program
from .nilpotent import NilpotentDatum, induced_primitive_gram, la_witness, monodromy_filtration, parse_blocks
from .report import Report

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _load(args) -> object:
    path = getattr(args, "input", None)
    try:
        if path and path != "-":
            with open(path) as fh:
                return json.load(fh)
        return json.load(sys.stdin)
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None


def _matrix_json(m) -> list:
    return [[rat_str(x) for x in row] for row in m]


# -- commands -----------------------------------------------------------------


def cmd_classify(args) -> Report:
    data = _load(args)
    if not isinstance(data, dict):
        raise InputError("module JSON must be an object")
    module = FrobeniusModule.from_json(data, check=False)
    w = data.get("weight")
    if not isinstance(w, int):
        raise InputError("classify needs an integer 'weight'")
    sign = args.sign if args.sign is not None else data.get("sign")
    if sign not in (None, 1, -1):
        raise InputError("sign must be +1 or -1")
    report = Report("classify")
    try:
        verdict = classify_self_duality(module, w, require_pure=data.get("require_pure", True))
    except PurityError as exc:
        report.add("purity", False, reason=str(exc), witness=[b.to_json() for b in exc.witness or []])
        return report
    details = verdict.to_json()
    if sign is not None:
        ok = verdict.flag(sign)
        wit = verdict.witnesses.get(sign)
        details["witness"] = _matrix_json(wit) if wit is not None else None
        details["witness_sign"] = sign if wit is not None else None
        label = f"{sign:+d}-self-dual"
    else:
        ok, label = verdict.self_dual, "self-dual"
    report.add(f"{label} at weight {w}", ok, **details)
    return report


def cmd_jordan(args) -> Report:
    data = _load(args)
    module = FrobeniusModule.from_json(data, check=False)
    report = Report("jordan")
    profile = jordan_profile(module)
    report.add(
        "jordan profile",
        profile.check_dimension(),
        char_poly=str(char_poly(module)),
        invariant_factors=[str(f) for f in invariant_factors(module)],
        **profile.to_json(),
    )
    return report


def cmd_weights(args) -> Report:
    data = _load(args)
    if not isinstance(data, dict) or "q" not in data:
        raise InputError("weights input needs 'q' and 'poly' or 'matrix'")
    if "matrix" in data:
        p = char_poly(FrobeniusModule.from_json(data, check=False))
    elif "poly" in data:
        p = Poly.from_json(data["poly"])
    else:
        raise InputError("weights input needs 'poly' or 'matrix'")
    if p.is_zero() or p[0] != 1:
        raise InputError("polynomial must have constant term 1")
    report = Report("weights")
    try:
        parts = weight_split(p, data["q"])
    except NonIntegralWeight as exc:
        report.add("integral weights", False, reason=str(exc), box=exc.box.to_json() if exc.box else None)
        return report
    report.add("integral weights", True, factors={str(w): f.to_json() for w, f in parts.items()})
    return report


def cmd_monodromy(args) -> Report:
    data = _load(args)
    datum = NilpotentDatum.from_json(data)
    filt = monodromy_filtration(datum)
    report = Report("monodromy")
    try:
        filt.verify()
        report.add("monodromy filtration", True, **filt.to_json())
    except InvariantViolation as exc:
        report.add("monodromy filtration", False, reason=str(exc))
        return report
    if datum.A is not None:
        for i, p in filt.primitive_dims().items():
            if p:
                try:
                    g = induced_primitive_gram(datum, i)
                    report.add(f"primitive form on P_{i}", True, **g.to_json())
                except InvariantViolation as exc:
                    report.add(f"primitive form on P_{i}", False, reason=str(exc))
    return report


def cmd_witness(args) -> Report:
    if args.blocks is None:
        raise InputError("witness needs --blocks n:m,...")
    mults = parse_blocks(args.blocks)
    res = la_witness(mults, args.sign)
    report = Report("witness")
    report.add(f"pairing with sign {args.sign:+d} for blocks {args.blocks}", res.ok, **res.to_json())
    return report


def cmd_kring(args) -> Report:
    if args.program:
        args.input = args.program
    data = _load(args)
    result, membership = run_program(data)
    report = Report("kring")
    report.add("evaluate", True, result=result.to_json())
    if membership is not None:
        report.add(f"membership for sign {data['sigma']:+d}", membership.member, **membership.to_json())
    return report


def _group_reps(args):
    if args.bundled:
        return bundled_irreps(args.bundled)
    data = _load(args)
    if not isinstance(data, dict) or "group" not in data:
        raise InputError("input needs 'group' (and 'rep' or 'reps')")
    G = FiniteGroup.from_json(data["group"])
    raw = data.get("reps") or ([data["rep"]] if "rep" in data else [])
    return G, [FiniteGroupRep.from_json(G, r) for r in raw]


def cmd_indicator(args) -> Report:
    G, reps = _group_reps(args)
    report = Report("indicator")
    for k, rep in enumerate(reps):
        c = classify_rep(rep)
        report.add(f"{G.name or 'group'} rep {rep.name or k}", True, irreducible=rep.is_irreducible(), **c.to_json())
    return report


def cmd_bg_lseries(args) -> Report:
    G, reps = _group_reps(args)
    report = Report("bg-lseries")
    for k, rep in enumerate(reps):
        series = bg_l2_series(rep, args.terms)
        report.add(f"{G.name or 'group'} rep {rep.name or k}", True, **series.to_json())
    return report


def cmd_chebotarev(args) -> Report:
    if args.bundled:
        G, _ = bundled_irreps(args.bundled)
        unions = [c for size in (1, 2, 3) for c in combinations(range(len(G.classes)), size)]
    else:
        data = _load(args)
        if not isinstance(data, dict) or "group" not in data:
            raise InputError("input needs 'group' and 'classes'")
        G = FiniteGroup.from_json(data["group"])
        unions = [tuple(u) for u in data.get("classes", [])]
    report = Report("chebotarev")
    for u in unions:
        lhs, rhs = chebotarev_identity(G, class_union(G, u))
        report.add(f"classes {list(u)}", lhs == rhs, lhs=rat_str(lhs), rhs=rat_str(rhs))
    return report


def cmd_ih_check(args) -> Report:
    data = IhInput.from_json(_load(args))
    return ih_check(data, jobs=args.jobs)


def cmd_mixed_check(args) -> Report:
    data = IhInput.from_json(_load(args))
    return mixed_check(data, jobs=args.jobs)


COMMANDS = {
    "classify": (cmd_classify, "self-duality verdict for a Frobenius module"),
    "jordan": (cmd_jordan, "invariant factors and Jordan layers"),
    "weights": (cmd_weights, "split det(1 - T F) by weight"),
    "monodromy": (cmd_monodromy, "monodromy filtration and primitive forms"),
    "witness": (cmd_witness, "explicit pairing for a nilpotent Jordan type"),
    "kring": (cmd_kring, "evaluate a K-ring expression"),
    "indicator": (cmd_indicator, "Frobenius-Schur indicators and invariant forms"),
    "bg-lseries": (cmd_bg_lseries, "L^2 series on the classifying stack"),
    "chebotarev": (cmd_chebotarev, "class-sum identity for conjugation-closed sets"),
    "ih-check": (cmd_ih_check, "parity checks on intersection cohomology"),
    "mixed-check": (cmd_mixed_check, "weight-by-weight checks on ordinary cohomology"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="weilform", description="Exact checks on Frobenius modules and their pairings.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", "-i", help="JSON input file (default: stdin)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if name == "classify":
            p.add_argument("--sign", type=int, choices=(1, -1))
        if name == "witness":
            p.add_argument("--blocks", help='block multiplicities, e.g. "2:1,3:2"')
            p.add_argument("--sign", type=int, choices=(1, -1), required=True)
        if name == "kring":
            p.add_argument("--program", help="program JSON file")
        if name in ("indicator", "bg-lseries", "chebotarev"):
            p.add_argument("--bundled", help="bundled group: S3, D4, Q8, A4, S4, Z<n>")
        if name == "bg-lseries":
            p.add_argument("--terms", type=int, default=20)
        if name in ("ih-check", "mixed-check"):
            p.add_argument("--jobs", type=int, default=1)
    return parser


def cli_dispatch(argv: Optional[List[str]] = None, *, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    fn = COMMANDS[args.command][0]
    try:
        report = fn(args)
    except (InputError, RepresentationError) as exc:
        print(f"weilform {args.command}: malformed input: {exc}", file=stderr)
        return EXIT_INPUT
    except WeilformError as exc:
        # internal invariant violations surface as a failed record
        report = Report(args.command)
        report.add("internal consistency", False, reason=str(exc), error=type(exc).__name__)
    if args.format == "text":
        print(report.to_text(), file=stdout)
    else:
        print(report.dumps(), file=stdout)
    return report.exit_code


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
