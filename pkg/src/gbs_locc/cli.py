"""Command line: synthesize, verify, sweep and inspect.

Exit codes: 0 success / perfect, 1 verification failure, 2 usage or validation
error, 3 certificate only (d=4 external-reference case, no protocol).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import states
from .document import DocumentError, ProtocolDocument
from .locc_sim import DEFAULT_TOL, ProtocolError, verify_perfect_discrimination
from .sweep import DEFAULT_CAP, default_jobs, run_sweep
from .synthesizer import Triple, UnsupportedDimensionError, synthesize
from .weyl import DomainError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CERTIFICATE_ONLY = 3


class UsageError(Exception):
    pass


def _pair(text: str) -> tuple:
    try:
        m, n = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a label 'm,n', got {text!r}")
    return m, n


def _triple(d: int, pairs) -> Triple:
    if len(pairs) != 3:
        raise UsageError(f"need exactly three labels, got {len(pairs)}")
    try:
        return Triple.from_pairs(d, pairs)
    except DomainError as exc:
        raise UsageError(str(exc))


def cmd_synthesize(args) -> int:
    t = _triple(args.d, args.labels)
    try:
        protocol, cert = synthesize(t)
    except UnsupportedDimensionError as exc:
        raise UsageError(str(exc))
    doc = ProtocolDocument(t.dim, t.indices, protocol, cert)
    text = doc.dumps(indent=1)
    if args.output and args.output != "-":
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
        print(f"route {cert.route}; wrote {args.output}", file=sys.stderr)
    else:
        print(text)
    return EXIT_CERTIFICATE_ONLY if protocol is None else EXIT_OK


def cmd_verify(args) -> int:
    args.protocol, labels = args.items[0], args.items[1:]
    try:
        args.labels = [_pair(x) for x in labels]
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc))
    try:
        with open(args.protocol) as fh:
            doc = ProtocolDocument.loads(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {args.protocol}: {exc}")
    d = doc.dim if args.d is None else args.d
    if d != doc.dim:
        raise UsageError(f"document is for d={doc.dim}, not d={d}")
    t = _triple(d, args.labels) if args.labels else Triple(d, doc.hypotheses)
    if doc.protocol is None:
        route = doc.certificate.route if doc.certificate else "none"
        print(f"no protocol in document (certificate route {route})")
        return EXIT_CERTIFICATE_ONLY
    try:
        report = verify_perfect_discrimination(t.states(), doc.protocol, args.tol)
    except (ProtocolError, DomainError) as exc:
        raise UsageError(f"invalid protocol: {exc}")
    if args.json:
        print(json.dumps({
            "perfect": report.perfect,
            "triple": [list(i.pair()) for i in t.indices],
            "tol": args.tol,
            "records": len(report.branches),
            "totals": report.totals.tolist(),
            "failures": [{"record": [list(p) for p in r], "reason": why} for r, why in report.failures],
        }, indent=1))
    else:
        print(f"triple {[i.pair() for i in t.indices]} at d={d}, tol={args.tol:g}")
        print(report.summary())
    return EXIT_OK if report.perfect else EXIT_FAILED


def cmd_sweep(args) -> int:
    try:
        report = run_sweep(args.dmin, args.dmax, args.jobs, args.tol, args.cap, args.check_roundtrip)
    except ValueError as exc:
        raise UsageError(str(exc))
    for d, row in report["per_dimension"].items():
        routes = ", ".join(f"{k}={v}" for k, v in row["routes"].items())
        print(f"d={d}: {row['triples']} triples, {len(row['failures'])} failures, "
              f"{row['external_certificates']} external; {routes}")
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(report, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return EXIT_OK if report["total_failures"] == 0 else EXIT_FAILED


def _format_matrix(mat: np.ndarray) -> str:
    rows = []
    for row in mat:
        rows.append("  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
    return "\n".join(rows)


def cmd_inspect(args) -> int:
    if args.matrix:
        parts = args.matrix.split(":")
        try:
            if parts[0] == "H" and len(parts) == 3:
                mat = states.build_h(int(parts[1]), int(parts[2]))
            elif parts[0] in ("X", "Z") and len(parts) == 2:
                build = states.build_x if parts[0] == "X" else states.build_z
                mat = build(int(parts[1]))
            else:
                raise UsageError(f"matrix spec must be H:alpha:d, X:d or Z:d, got {args.matrix!r}")
        except (ValueError, DomainError) as exc:
            raise UsageError(str(exc))
        print(_format_matrix(mat))
    elif args.gram is not None:
        if args.gram < 2:
            raise UsageError("d must be >= 2")
        print(f"max |Gram - I| over {args.gram ** 2} states at d={args.gram}: "
              f"{states.gram_deviation(args.gram):.3e}")
    else:
        d = args.lemma1
        if d < 2:
            raise UsageError("d must be >= 2")
        print(f"max phase-aligned H conjugation deviation at d={d} over valid alpha: "
              f"{states.lemma1_max_deviation(d):.3e}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbs-locc", description="LOCC protocols for three generalized Bell states."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthesize", help="emit a protocol document for a triple")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("labels", nargs="+", type=_pair, metavar="m,n")
    p.add_argument("-o", "--output", help="output path (default: standard output)")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", help="simulate a protocol document on a triple")
    p.add_argument("items", nargs="+", metavar="PROTOCOL [m,n ...]",
                   help="protocol document, then hypothesis labels (default: those in the document)")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="synthesize and verify every triple for a range of d")
    p.add_argument("--dmin", type=int, default=4)
    p.add_argument("--dmax", type=int, default=6)
    p.add_argument("--jobs", type=int, default=default_jobs())
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--check-roundtrip", action="store_true",
                   help="also check JSON round trip of every document")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("inspect", help="print matrices and numerical checks")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--matrix", metavar="H:alpha:d|X:d|Z:d")
    group.add_argument("--gram", type=int, metavar="d")
    group.add_argument("--lemma1", type=int, metavar="d")
    p.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args, extras = parser.parse_known_args(argv)
        # verify takes labels after its options too: ``verify doc.json --d 6 0,0 3,0 0,3``
        if extras and getattr(args, "command", None) == "verify" and not any(
            x.startswith("--") for x in extras
        ):
            args.items += extras
        elif extras:
            parser.error(f"unrecognized arguments: {' '.join(extras)}")
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
