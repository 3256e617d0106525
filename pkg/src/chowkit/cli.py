"""Command-line driver and machine-readable reports.

Subcommands: verify (relation suite, symbolic or at sampled genera),
strata (boundary enumeration, optionally oracle-checked), det (the
mu=(3) determinant and its root report), jet (jet-matrix ranks).

Exit codes: 0 all requested checks passed, 1 a verification failed,
2 usage errors, unknown ids, malformed specs, or guard violations.
JSON reports use kebab-case keys, canonical class strings, and a fixed
field order, so serialization is byte-stable for fixed inputs; the
structure is frozen in report-schema.json next to this module.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .bundles import JetPoint, in_locus_B, jet_rank
from .linalg import param_rank
from .strata import (enumerate_codim1, format_factor, format_stratum,
                     oracle_enumerate)
from .verify import (LemmaId, StageFailure, relation_determinant,
                     relation_matrix, tt_chain, verify_relation)

_REPORT_FIELDS = (
    ("tool-version", "tool_version"),
    ("mode", "mode"),
    ("g-values", "g_values"),
    ("verdicts", "verdicts"),
    ("chain", "chain"),
    ("strata", "strata"),
    ("determinant", "determinant"),
    ("overall-pass", "overall_pass"),
)


@dataclass
class Report:
    tool_version: str
    mode: str
    g_values: list
    verdicts: list
    chain: dict | None
    strata: dict | None
    determinant: dict | None
    overall_pass: bool

    def to_json(self):
        payload = {key: getattr(self, attr) for key, attr in _REPORT_FIELDS}
        return json.dumps(payload, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        return cls(**{attr: payload[key] for key, attr in _REPORT_FIELDS})


def _empty_report(mode="symbolic", g_values=()):
    return Report(tool_version=__version__, mode=mode,
                  g_values=list(g_values), verdicts=[], chain=None,
                  strata=None, determinant=None, overall_pass=True)


def _verdict_payload(verdict, g):
    return {
        "lemma": verdict.lemma,
        "g": g,
        "computed": verdict.computed.canonical(),
        "expected": verdict.expected.canonical(),
        "pass": verdict.passed,
    }


def _chain_payload(chain):
    return {stage: value.canonical() for stage, value in chain.stages()}


def _factor_payload(factor):
    return {
        "degrees": list(factor.degrees),
        "genera": list(factor.genera),
        "profiles": [list(p) for p in factor.profiles],
        "display": format_factor(factor),
    }


def _stratum_payload(stratum):
    return {
        "j": stratum.j,
        "node-profile": list(stratum.node_profile),
        "side1": _factor_payload(stratum.side1),
        "side2": _factor_payload(stratum.side2),
        "quotient": stratum.quotient_group,
        "display": format_stratum(stratum),
    }


def parse_g_spec(text):
    """None for symbolic, else a list of nonnegative integers.

    Accepts a single value, a comma list, and ranges like 0..50.
    """
    if text == "symbolic":
        return None
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if ".." in chunk:
            lo_text, hi_text = chunk.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if lo > hi:
                raise ValueError(f"empty range {chunk!r}")
            values.extend(range(lo, hi + 1))
        elif chunk:
            values.append(int(chunk))
        else:
            raise ValueError("empty g entry")
    if not values:
        raise ValueError("no g values given")
    if any(v < 0 for v in values):
        raise ValueError("g must be nonnegative")
    seen = set()
    out = []
    for v in values:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _emit(report, fmt, out):
    if fmt == "json":
        print(report.to_json(), file=out)
        return
    for v in report.verdicts:
        g = "symbolic" if v["g"] is None else v["g"]
        mark = "pass" if v["pass"] else "FAIL"
        print(f"{v['lemma']:<20} g={g:<9} {mark}  {v['computed']}", file=out)
    if report.chain is not None:
        for stage, value in report.chain.items():
            print(f"chain {stage:<12} {value}", file=out)
    if report.strata is not None:
        for s in report.strata["strata"]:
            print(s["display"], file=out)
        print(f"total: {report.strata['count']}", file=out)
        if report.strata.get("oracle-checked"):
            agree = report.strata["oracle-agrees"]
            print("oracle: " + ("agrees" if agree else "MISMATCH"), file=out)
    if report.determinant is not None:
        d = report.determinant
        basis = ", ".join(d["basis"])
        print(f"determinant in basis ({basis}): {d['poly']}", file=out)
        if d["nonneg-integer-roots"]:
            print(f"roots at integers g >= 0: {d['nonneg-integer-roots']}",
                  file=out)
        else:
            print("no roots at integers g >= 0", file=out)
        print(f"certified rank: {d['rank']}", file=out)
    print("overall: " + ("PASS" if report.overall_pass else "FAIL"),
          file=out)


def cmd_verify(args, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        g_values = parse_g_spec(args.g)
    except ValueError as exc:
        print(f"bad --g value: {exc}", file=err)
        return 2
    if args.lemma == "all":
        lemmas = list(LemmaId)
    else:
        try:
            lemmas = [LemmaId.from_string(args.lemma)]
        except ValueError as exc:
            print(str(exc), file=err)
            return 2

    mode = "symbolic" if g_values is None else "sampled"
    report = _empty_report(mode=mode,
                           g_values=[] if g_values is None else g_values)
    sweep = [None] if g_values is None else g_values
    try:
        for g in sweep:
            for lemma in lemmas:
                verdict = verify_relation(lemma, g=g)
                report.verdicts.append(_verdict_payload(verdict, g))
                if not verdict.passed:
                    report.overall_pass = False
        if g_values is None and LemmaId.REL_3_TT in lemmas:
            report.chain = _chain_payload(tt_chain())
    except StageFailure as exc:
        print(f"verification aborted at stage {exc.stage!r}: {exc}",
              file=err)
        return 1
    _emit(report, args.fmt, out)
    return 0 if report.overall_pass else 1


def cmd_strata(args, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    if args.g < 0:
        print("genus must be nonnegative", file=err)
        return 2
    strata = enumerate_codim1(args.g)
    payload = {
        "genus": args.g,
        "count": len(strata),
        "oracle-checked": bool(args.oracle),
        "oracle-agrees": None,
        "strata": [_stratum_payload(s) for s in strata],
    }
    report = _empty_report(mode="sampled", g_values=[args.g])
    report.strata = payload
    if args.oracle:
        try:
            reference = oracle_enumerate(args.g)
        except ValueError as exc:
            print(str(exc), file=err)
            return 2
        agree = reference == strata
        payload["oracle-agrees"] = agree
        if not agree:
            report.overall_pass = False
            print(f"oracle mismatch: {len(strata)} enumerated vs "
                  f"{len(reference)} brute-forced", file=err)
    _emit(report, args.fmt, out)
    return 0 if report.overall_pass else 1


def cmd_det(args, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    det = relation_determinant()
    basis, rows, _ = relation_matrix((3,))
    roots = [] if det.is_zero() else det.nonneg_integer_roots()
    rank = param_rank(rows)
    ok = not det.is_zero() and not roots and rank == len(basis)
    report = _empty_report()
    report.determinant = {
        "poly": str(det),
        "basis": list(basis),
        "nonneg-integer-roots": list(roots),
        "rank": rank,
    }
    report.overall_pass = ok
    _emit(report, args.fmt, out)
    return 0 if ok else 1


def _parse_rows_spec(text):
    """'3p3q' -> jets at p and q; digits before each point label."""
    spec = text.strip().lower()
    probe, rest = spec.split("p", 1) if "p" in spec else (None, None)
    if probe is None or not rest.endswith("q"):
        raise ValueError(f"row spec {text!r} not of the form <n>p<m>q")
    jets_q = rest[:-1]
    if not probe.isdigit() or not jets_q.isdigit():
        raise ValueError(f"row spec {text!r} needs integer jet counts")
    jp, jq = int(probe), int(jets_q)
    if jp < 1 or jq < 1:
        raise ValueError("jet counts must be at least 1")
    return jp, jq


def cmd_jet(args, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        jets_p, jets_q = _parse_rows_spec(args.rows)
    except ValueError as exc:
        print(str(exc), file=err)
        return 2
    if args.m > args.n:
        print("normalize the splitting so m <= n", file=err)
        return 2
    if args.p_directrix:
        p = JetPoint(x=Fraction(0), jets=jets_p, on_directrix=True)
    else:
        p = JetPoint(x=Fraction(0), jets=jets_p, y=Fraction(0))
    if args.q_directrix:
        q = JetPoint(x=Fraction(1), jets=jets_q, on_directrix=True)
    else:
        q = JetPoint(x=Fraction(1), jets=jets_q)
    (rows, cols), rank = jet_rank(args.m, args.n, (p, q))
    locus = "inside" if in_locus_B(args.m, args.n) else "outside"
    print(f"splitting (m, n) = ({args.m}, {args.n}), {locus} the "
          "globally generated locus", file=out)
    print(f"matrix {rows}x{cols}, rank {rank}", file=out)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chowkit",
        description="Exact Chow-ring verification for trigonal covers: "
                    "relation classes, pushforward chains, triviality "
                    "certificates, and boundary strata.")
    parser.add_argument("--version", action="version",
                        version=f"chowkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser(
        "verify", help="re-derive relation classes and compare")
    p_verify.add_argument("--g", default="symbolic",
                          help="symbolic (default), an integer, a comma "
                               "list, or a range like 0..50")
    p_verify.add_argument("--lemma", default="all",
                          help="a relation id or 'all'")
    p_verify.add_argument("--format", dest="fmt", default="text",
                          choices=("text", "json"))
    p_verify.set_defaults(func=cmd_verify)

    p_strata = sub.add_parser(
        "strata", help="enumerate codimension-1 boundary strata")
    p_strata.add_argument("--g", type=int, required=True)
    p_strata.add_argument("--oracle", action="store_true",
                          help="cross-check against the brute-force oracle")
    p_strata.add_argument("--format", dest="fmt", default="text",
                          choices=("text", "json"))
    p_strata.set_defaults(func=cmd_strata)

    p_det = sub.add_parser(
        "det", help="determinant of the total-ramification relation system")
    p_det.add_argument("--format", dest="fmt", default="text",
                       choices=("text", "json"))
    p_det.set_defaults(func=cmd_det)

    p_jet = sub.add_parser(
        "jet", help="rank of a fiberwise jet-evaluation matrix")
    p_jet.add_argument("--m", type=int, required=True)
    p_jet.add_argument("--n", type=int, required=True)
    p_jet.add_argument("--rows", default="3p3q",
                       help="jets per point, e.g. 3p3q or 1p1q")
    p_jet.add_argument("--p-directrix", action="store_true",
                       help="place p on the directrix")
    p_jet.add_argument("--q-directrix", action="store_true",
                       help="place q on the directrix")
    p_jet.set_defaults(func=cmd_jet)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
