"""Batch command-line front end with machine-readable reports.

Exit codes: 0 success (including an undetermined freeness verdict), 2 for
input errors, 3 for internal invariant violations.  Reports are
byte-identical for identical inputs; wall-clock timings are only included
when explicitly requested.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .checks import run_enveloping_suites
from .derivations import (Divisor, LogFrame, derivation_generators,
                          koszul_test, search_frame)
from .enveloping import LieRinehartData, to_weyl
from .errors import LogdivError
from .frames import load_frame, load_lie_data
from .ring import PolyRing
from .spencer import (Connection, h1_certificate, induce_to_weyl,
                      presentation_generators, spencer_complex,
                      spencer_complex_twisted)
from .weyl import parse_operator


def _emit(doc: dict, args, text_lines) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    names = [v.strip() for v in args.vars.split(",") if v.strip()]
    ring = PolyRing(names)
    h = ring.parse(args.h)
    divisor = Divisor(h)
    timings = {}
    if args.frame:
        doc_frame = load_frame(args.frame, local=args.local)
        if doc_frame.ring != ring or doc_frame.divisor.h != h:
            raise LogdivError("frame file does not match the given divisor")
        frame = doc_frame
        num_generators = None
    else:
        gens = derivation_generators(divisor)
        num_generators = len(gens)
        frame = None
        if len(gens) == divisor.n:
            try:
                frame = LogFrame(divisor, gens, local=args.local)
            except LogdivError:
                frame = None
        if frame is None:
            frame = search_frame(divisor, max_subsets=args.search_bound,
                                 local=args.local)
    timings["frame"] = time.perf_counter() - t0
    report = {
        "divisor": str(h),
        "variables": names,
    }
    lines = [f"divisor: {h}"]
    if num_generators is not None:
        report["num_generators"] = num_generators
        lines.append(f"derivation generators: {num_generators}")
    if frame is None:
        report["free"] = "undetermined"
        lines.append("free: undetermined (no certified frame found)")
        _emit(report, args, lines)
        return 0
    cert = frame.certificate
    report["free"] = True
    report["matrix"] = [[str(p) for p in r.coeffs] for r in frame.rows]
    report["det_constant"] = (str(cert.constant)
                              if cert.constant is not None else None)
    if cert.constant is None:
        report["local_unit"] = str(cert.unit)
    report["alphas"] = [str(a) for a in frame.alphas]
    report["brackets"] = [
        {"pair": [i + 1, j + 1], "coefficients": [str(c) for c in vec]}
        for (i, j), vec in sorted(frame.bracket_table().items())]
    lines.append("free: yes")
    lines.append("det = c*h with c = "
                 + (str(cert.constant) if cert.constant is not None
                    else f"unit {cert.unit}"))
    for i, a in enumerate(report["alphas"]):
        lines.append(f"alpha_{i + 1} = {a}")
    for entry in report["brackets"]:
        i, j = entry["pair"]
        lines.append(f"[delta_{i}, delta_{j}] = "
                     + " , ".join(entry["coefficients"]))
    if args.koszul:
        t1 = time.perf_counter()
        report["koszul"] = koszul_test(frame)
        timings["koszul"] = time.perf_counter() - t1
        lines.append(f"koszul: {report['koszul']}")
    if args.timings:
        report["timings"] = {k: round(v, 6) for k, v in timings.items()}
    _emit(report, args, lines)
    return 0


def cmd_syzygy_check(args) -> int:
    frame = load_frame(args.frame)
    with open(args.operators) as fh:
        doc = json.load(fh)
    if "operators" not in doc:
        raise LogdivError("operator file needs an 'operators' list")
    ops = [parse_operator(frame.ring, s) for s in doc["operators"]]
    report = h1_certificate(frame, ops)
    out = {
        "kernel": report.kernel_ok,
        "certified": report.certified,
        "verdict": report.verdict,
        "components": [{
            "index": c.index + 1,
            "subideal": c.subideal,
            "pattern_in_subideal": c.pattern_ok,
            "orders_at_most_one": c.orders_ok,
            "symbols_regular_sequence": c.symbols_regular,
            "bracket_closed_over_O": c.bracket_closed,
            "colon_ideal_basis": c.colon_basis,
            "colon_inside_maximal_ideal": c.colon_at_origin,
            "certified": c.certified,
            "note": c.note,
        } for c in report.components],
    }
    lines = [f"kernel check: {'ok' if report.kernel_ok else 'FAILED'}"]
    for c in report.components:
        lines.append(
            f"component {c.index + 1}: subideal ({', '.join(c.subideal) or '0'})"
            f" | symbols regular: {c.symbols_regular}"
            f" | bracket closed: {c.bracket_closed}"
            f" | colon = ({', '.join(c.colon_basis) or '-'})"
            f" | at origin: {c.colon_at_origin}")
    lines.append(report.verdict)
    _emit(out, args, lines)
    return 0


def cmd_presentation(args) -> int:
    frame = load_frame(args.frame)
    gens = presentation_generators(frame, args.m)
    doc = {"m": args.m, "generators": [str(g) for g in gens]}
    _emit(doc, args, [str(g) for g in gens])
    return 0


def cmd_spencer(args) -> int:
    frame = load_frame(args.frame)
    data = LieRinehartData.from_frame(frame)
    if args.twist is None:
        complex_ = spencer_complex(data)
    else:
        complex_ = spencer_complex_twisted(
            data, Connection.pole_twist(frame, args.twist))
    if not complex_.verify_zero_compositions():
        print("internal error: composition of differentials is nonzero",
              file=sys.stderr)
        return 3
    if args.weyl:
        complex_ = induce_to_weyl(complex_, data)
        if not complex_.verify_zero_compositions():
            print("internal error: induced compositions nonzero",
                  file=sys.stderr)
            return 3
    doc = complex_.export()
    doc["divisor"] = str(frame.divisor.h)
    if args.twist is not None:
        doc["twist"] = args.twist
    text = json.dumps(doc, indent=2, sort_keys=True)
    if args.export:
        with open(args.export, "w") as fh:
            fh.write(text + "\n")
        print(f"wrote complex to {args.export}")
    else:
        print(text)
    return 0


def cmd_appendix_check(args) -> int:
    data = load_lie_data(args.frame)
    results = run_enveloping_suites([(data, 1)], args.samples, args.seed)
    doc = {
        "samples": args.samples,
        "seed": args.seed,
        "suites": [{"name": r.name, "samples": r.samples,
                    "failures": r.failures, "ok": r.ok} for r in results],
        "ok": all(r.ok for r in results),
    }
    lines = [r.line() for r in results]
    lines.append("all identities hold" if doc["ok"]
                 else "IDENTITY FAILURES FOUND")
    _emit(doc, args, lines)
    return 0 if doc["ok"] else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logdiv",
        description="Exact computations with logarithmic derivations, "
                    "their enveloping algebra, and Spencer complexes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--json", action="store_true",
                       help="machine-readable JSON report")
        p.add_argument("--text", action="store_true",
                       help="plain text report (default)")

    p = sub.add_parser("analyze", help="full analysis of a divisor")
    p.add_argument("vars", help="comma-separated variable names")
    p.add_argument("h", help="defining polynomial")
    p.add_argument("--frame", help="JSON frame file with candidate rows")
    p.add_argument("--koszul", action="store_true",
                   help="also run the symbol regular-sequence test")
    p.add_argument("--local", action="store_true",
                   help="accept determinant units at the origin")
    p.add_argument("--search-bound", type=int, default=200,
                   help="max generator subsets tried when searching a frame")
    p.add_argument("--timings", action="store_true",
                   help="include wall-clock timings in the report")
    add_output_flags(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("syzygy-check",
                       help="kernel/colon certificate for operator triples")
    p.add_argument("frame", help="JSON frame file")
    p.add_argument("operators", help="JSON file with an 'operators' list")
    add_output_flags(p)
    p.set_defaults(func=cmd_syzygy_check)

    p = sub.add_parser("presentation",
                       help="generators of the annihilator of h^-m")
    p.add_argument("frame", help="JSON frame file")
    p.add_argument("-m", type=int, required=True, help="pole order")
    add_output_flags(p)
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("spencer", help="emit the Spencer complex as JSON")
    p.add_argument("frame", help="JSON frame file")
    p.add_argument("--twist", type=int, default=None,
                   help="twist by the pole-order connection O(mD)")
    p.add_argument("--weyl", action="store_true",
                   help="base change the matrices to the Weyl algebra")
    p.add_argument("--export", help="write the JSON to this file")
    add_output_flags(p)
    p.set_defaults(func=cmd_spencer)

    p = sub.add_parser("appendix-check",
                       help="randomized identity suites for the enveloping "
                            "algebra")
    p.add_argument("frame", help="JSON frame file")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    add_output_flags(p)
    p.set_defaults(func=cmd_appendix_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LogdivError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
