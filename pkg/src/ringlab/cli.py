"""``ringlab`` command line.

Exit codes: 0 when every measured value matches its prediction, 1 on any
mismatch, 2 on bad input (unparsable spec, non-prime modulus, size cap).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from .analysis import Mu1TooLarge
from .constructions import MatrixRing, NotPrimeError
from .core import DEFAULT_MAX_SIZE, RingSizeError
from .harness import (
    DEFAULT_SCAN_SIZE,
    EXIT_INPUT,
    EXIT_MISMATCH,
    EXIT_OK,
    SCHEMA_VERSION,
    Config,
    analyze,
    conjecture_scan,
    oeis_check,
    reproduce_tables,
)
from .specparse import RingSpecSyntaxError, parse_ring_spec
from .witness import MatrixOverField, check_witness, default_window, nilpotent_jordan, non_period_witness

INPUT_ERRORS = (RingSpecSyntaxError, NotPrimeError, RingSizeError, ValueError)


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_analyze(args) -> int:
    config = Config(max_ring_size=args.max_size, output_format="json" if args.json else "text")
    report = analyze(args.spec, config)
    _emit(args, report.to_dict(), report.to_text())
    if report.status != "ok":
        return EXIT_MISMATCH
    return EXIT_OK if report.all_match else EXIT_MISMATCH


def cmd_tables(args) -> int:
    report = reproduce_tables(Config())
    _emit(args, report.to_dict(), report.to_text())
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_oeis(args) -> int:
    if args.limit < 2:
        raise ValueError("--limit must be at least 2")
    entries = oeis_check(args.limit, Config(max_ring_size=max(args.limit, DEFAULT_MAX_SIZE)))
    bad = [e for e in entries if not e.ok]
    if args.json:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "limit": args.limit,
            "ok": not bad,
            "mismatches": [{"n": e.n, "measured": e.measured, "predicted": e.predicted} for e in bad],
            "values": {str(e.n): e.measured for e in entries},
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        # b-file layout: "n a(n)" per line, measured values
        for e in entries:
            print(f"{e.n} {e.measured}" + ("" if e.ok else f"  # predicted {e.predicted}"))
        print(f"# {len(entries) - len(bad)}/{len(entries)} match lambda(n) + E(n) - 1", file=sys.stderr)
    return EXIT_OK if not bad else EXIT_MISMATCH


def cmd_scan(args) -> int:
    report = conjecture_scan(Config(max_ring_size=max(args.max_size, 1)), max_size=args.max_size)
    _emit(args, report.to_dict(), report.to_text())
    return EXIT_OK if not report.violations else EXIT_MISMATCH


def _parse_entries(tokens: list[str]) -> list[int]:
    values = []
    for tok in tokens:
        for part in tok.replace(",", " ").split():
            try:
                values.append(int(part))
            except ValueError:
                raise ValueError(f"matrix entry {part!r} is not an integer") from None
    return values


def cmd_witness(args) -> int:
    R = parse_ring_spec(args.spec, args.max_size)
    if not isinstance(R, MatrixRing):
        raise ValueError("witness needs a matrix ring spec mat:<p>^<k>,<n>")
    entries = _parse_entries(args.nilpotent)
    n = R.n
    if len(entries) != n * n:
        raise ValueError(f"expected {n * n} row-major entries, got {len(entries)}")
    A = MatrixOverField(R.F, np.array(entries, dtype=np.int64).reshape(n, n))
    if A.is_zero():
        raise ValueError("the nilpotent matrix must be nonzero")
    if not (A ** n).is_zero():
        raise ValueError("matrix is not nilpotent")
    S, J = nilpotent_jordan(A)
    window = default_window(R.F, n)
    try:
        X = non_period_witness(A, window)
        ok = True
    except AssertionError:
        X, ok = None, False
    payload = {
        "schema_version": SCHEMA_VERSION,
        "spec": args.spec,
        "A": A.entries.tolist(),
        "S": S.entries.tolist(),
        "J": J.entries.tolist(),
        "X": None if X is None else X.entries.tolist(),
        "window": window,
        "guarantee_holds": ok and check_witness(A, X, window),
    }
    text = "\n".join([
        f"A = {payload['A']}",
        f"S = {payload['S']}",
        f"J = {payload['J']}",
        f"X = {payload['X']}",
        f"det(X^m) != 0 and det((X - A)^m) == 0 for m = 1..{window}: {payload['guarantee_holds']}",
    ])
    _emit(args, payload, text)
    return EXIT_OK if payload["guarantee_holds"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ringlab", description="Power-map dynamics of finite rings.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="measure one ring and compare with its closed form")
    p.add_argument("spec", help="ring spec, e.g. zmod:12, gr:2^2,2, prod(gf:2^2,nilzero:3)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("tables", help="reproduce the enumeration tables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("oeis", help="distinct power maps of Z/nZ as a b-file")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oeis)

    p = sub.add_parser("scan", help="nilperiod / NI scan over the ring zoo")
    p.add_argument("--max-size", type=int, default=DEFAULT_SCAN_SIZE)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("witness", help="non-period witness for a nilpotent matrix")
    p.add_argument("spec", help="mat:<p>^<k>,<n>")
    p.add_argument("--nilpotent", nargs="+", required=True, metavar="ENTRY",
                   help="row-major entries (field element ids)")
    p.add_argument("--max-size", type=int, default=DEFAULT_MAX_SIZE)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except Mu1TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
