"""Command-line front end: ``kfusion {modules,fuse,table,qdim,verify} --k K ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or label error,
3 the fusion table could not be built (conflict or gap).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cyclo import qdim, to_float
from .fusion import ConflictError, IncompleteError, build_table
from .labels import LabelError, canonicalize, check_level, enumerate_labels, format_label, parse_label
from .verify import verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUILD = 0, 1, 2, 3

OUT_DIR_ENV = "KFUSION_OUT_DIR"


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, required=True, help="level, k >= 3")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help=f"write output to this file (relative paths resolve against ${OUT_DIR_ENV})")
    common.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                        help="worker threads for building and verifying")

    p = argparse.ArgumentParser(prog="kfusion", description="Fusion rules of the Klein orbifold L(k,0)^K.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("modules", parents=[common], help="list the irreducible modules")
    f = sub.add_parser("fuse", parents=[common], help="fusion product of two modules")
    f.add_argument("a")
    f.add_argument("b")
    sub.add_parser("table", parents=[common], help="export the full fusion table")
    q = sub.add_parser("qdim", parents=[common], help="exact quantum dimension of a module")
    q.add_argument("a")
    v = sub.add_parser("verify", parents=[common], help="run the consistency checks")
    v.add_argument("--seed", type=int, default=0)
    return p


def _label(text: str, k: int):
    try:
        return canonicalize(parse_label(text), k)
    except LabelError as exc:
        raise UsageError(f"bad label {text!r}: {exc}") from None


def _cmd_modules(args):
    labels = enumerate_labels(args.k)
    if args.format == "json":
        return json.dumps([{"label": format_label(x), "qdim": qdim(x, args.k).to_json()} for x in labels], indent=2)
    if args.format == "csv":
        return "\n".join(["label,qdim"] + [f"{format_label(x)},{to_float(qdim(x, args.k)):.12g}" for x in labels])
    return "\n".join(f"{format_label(x):12s} {to_float(qdim(x, args.k)):.10f}" for x in labels)


def _cmd_fuse(args):
    A, B = _label(args.a, args.k), _label(args.b, args.k)
    out = build_table(args.k, jobs=args.jobs).fuse(A, B)
    if args.format == "json":
        return json.dumps({"inputs": [format_label(A), format_label(B)],
                           "outcome": [[format_label(c), m] for c, m in out.items()]})
    if args.format == "csv":
        return f"A,B,outcome\n{format_label(A)},{format_label(B)},{out.format()}"
    print(f"{format_label(A)} x {format_label(B)}", file=sys.stderr)
    return out.format()


def _cmd_table(args):
    table = build_table(args.k, jobs=args.jobs)
    if args.format == "json":
        return table.to_json()
    if args.format == "csv":
        return table.to_csv().rstrip("\n")
    lines = []
    for n, A in enumerate(table.labels):
        for B in table.labels[n:]:
            row = table.fuse(A, B)
            if len(row):
                lines.append(f"{format_label(A)} x {format_label(B)} = {row.format()}")
    return "\n".join(lines)


def _cmd_qdim(args):
    A = _label(args.a, args.k)
    value = qdim(A, args.k)
    if args.format == "json":
        return json.dumps({"label": format_label(A), "qdim": value.to_json()})
    coeffs = " ".join(str(c) for c in value.coeffs)
    if args.format == "csv":
        return f"label,approx,coeffs\n{format_label(A)},{to_float(value):.12g},{coeffs}"
    return f"{format_label(A)}\nconductor {value.n}\ncoeffs {coeffs}\napprox {to_float(value):.12f}"


def _emit(text: str, args) -> None:
    if args.out:
        path = args.out
        base = os.environ.get(OUT_DIR_ENV)
        if base and not os.path.isabs(path):
            path = os.path.join(base, path)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        check_level(args.k)
    except LabelError as exc:
        print(f"kfusion: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "verify":
            report = verify_all(args.k, seed=args.seed, jobs=args.jobs)
            _emit(report.to_json() if args.format == "json" else report.to_text(), args)
            if report.checks and report.checks[0].name == "build" and report.checks[0].status == "fail":
                return EXIT_BUILD
            return EXIT_OK if report.passed else EXIT_FAIL
        handler = {"modules": _cmd_modules, "fuse": _cmd_fuse, "table": _cmd_table, "qdim": _cmd_qdim}
        _emit(handler[args.command](args), args)
        return EXIT_OK
    except UsageError as exc:
        print(f"kfusion: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConflictError, IncompleteError) as exc:
        print(f"kfusion: fusion table could not be built: {exc}", file=sys.stderr)
        return EXIT_BUILD


if __name__ == "__main__":
    sys.exit(main())
