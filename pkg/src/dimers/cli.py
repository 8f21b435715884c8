"""Command-line entry point. Every result is one JSON object per line on stdout.

Exit status: 0 on success, 1 on a usage error, 2 when a computation fails
(precision, sign calibration, quadrature tolerance or a failed verify check).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import mpmath

from . import asymptotics, codec, kasteleyn, oracle, spectral, verify
from .errors import USAGE_ERRORS, DimerError
from .grid import GridSpec, Vertex, build_grid

THREADS_ENV = "DIMERS_THREADS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class ResultRecord:
    command: str
    parameters: dict
    value: str
    method: str
    elapsed_ms: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self) -> str:
        data = asdict(self)
        if not self.extra:
            del data["extra"]
        return json.dumps(data)


def _mp_str(x, digits: int) -> str:
    return mpmath.nstr(x, digits, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def _digits(bits: int) -> int:
    return max(1, int(bits * 0.30103))


# subcommands -----------------------------------------------------------------

def _count(args, torus=False):
    m, n = args.rows, args.cols
    if torus:
        grid = GridSpec.torus(m, n, args.experimental)
        if args.method == "enumerate":
            return str(oracle.enumerate_matchings(grid))
        if args.method == "determinant":
            return str(kasteleyn.count_torus_det(m, n, args.experimental, workers=args.threads))
        return str(spectral.count_torus_spectral(m, n, args.precision_bits, args.experimental))
    grid = GridSpec.rectangle(m, n)
    if args.method == "enumerate":
        return str(oracle.enumerate_matchings(grid))
    if args.method == "determinant":
        return str(kasteleyn.count_rectangle_det(m, n))
    return str(spectral.count_rectangle_spectral(m, n, args.precision_bits))


def cmd_count(args):
    yield ResultRecord("count", {"rows": args.rows, "cols": args.cols}, _count(args), args.method)


def cmd_torus(args):
    params = {"rows": args.rows, "cols": args.cols, "experimental": args.experimental}
    yield ResultRecord("torus", params, _count(args, torus=True), args.method)


def cmd_overtilings(args):
    value = oracle.count_overtilings(args.rows, args.cols, args.max_cells)
    yield ResultRecord("overtilings", {"rows": args.rows, "cols": args.cols}, str(value), "enumerate")


def _parse_stub(text: str):
    try:
        x, y, d = text.split(",")
        return oracle.Stub(int(x), int(y), oracle.Direction[d.strip().upper()])
    except (ValueError, KeyError):
        raise UsageError(f"bad stub {text!r}; expected x,y,left|right|up|down") from None


def cmd_boundary(args):
    stubs = [_parse_stub(s) for s in args.stub]
    if len({(s.x, s.y) for s in stubs}) != len(stubs):
        raise UsageError("a cell may carry only one stub")
    config = oracle.BoundaryConfiguration(frozenset(stubs))
    value = oracle.count_with_boundary(args.rows, args.cols, config, args.max_cells)
    params = {"rows": args.rows, "cols": args.cols, "stubs": [f"{s.x},{s.y},{s.direction.name.lower()}" for s in stubs]}
    yield ResultRecord("boundary", params, str(value), "enumerate")


def read_dominoes(path: Path, rows: int, cols: int) -> oracle.Matching:
    """Parse ``x1 y1 x2 y2`` lines (1-based, one domino per line, # comments allowed)."""
    grid = GridSpec.rectangle(rows, cols)
    graph = build_grid(grid)
    edge_of = {e.endpoints: e for e in graph.edges}
    edges = []
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            x1, y1, x2, y2 = (int(t) for t in line.replace(",", " ").split())
        except ValueError:
            raise UsageError(f"{path}:{lineno}: expected four integers") from None
        key = frozenset((Vertex(x1, y1), Vertex(x2, y2)))
        if key not in edge_of:
            raise UsageError(f"{path}:{lineno}: cells are not adjacent on a {rows}x{cols} board")
        edges.append(edge_of[key])
    try:
        return oracle.Matching(grid, frozenset(edges))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def format_dominoes(matching: oracle.Matching) -> list:
    out = []
    for e in sorted(matching.edges, key=lambda e: (e.tail.y, e.tail.x)):
        out.append([e.tail.x, e.tail.y, e.head.x, e.head.y])
    return out


def cmd_encode(args):
    matching = read_dominoes(Path(args.input), args.rows, args.cols)
    code = codec.encode(matching)
    Path(args.output).write_bytes(code.to_bytes())
    params = {"rows": args.rows, "cols": args.cols, "input": args.input, "output": args.output}
    yield ResultRecord("encode", params, str(code), "codec", extra={"bits": len(code.bits)})


def cmd_decode(args):
    code = codec.TilingCode.from_bytes(Path(args.input).read_bytes())
    matching = codec.decode(code)
    dominoes = format_dominoes(matching)
    if args.output:
        lines = [" ".join(map(str, d)) for d in dominoes]
        Path(args.output).write_text("\n".join(lines) + "\n")
    params = {"rows": code.grid.rows, "cols": code.grid.cols, "input": args.input}
    yield ResultRecord("decode", params, str(code), "codec", extra={"dominoes": dominoes})


def cmd_entropy(args):
    if args.max_n < 2 or args.max_n % 2:
        raise UsageError("--max-n must be a positive even integer")
    digits = _digits(args.precision_bits)
    for r in asymptotics.finite_size_entropy(args.max_n, args.precision_bits):
        yield ResultRecord(
            "entropy",
            {"n": r.n, "precision_bits": args.precision_bits},
            _mp_str(r.per_site_log, digits),
            "spectral-sum",
            extra={"target": _mp_str(r.target, digits), "gap": _mp_str(r.gap, digits)},
        )


def cmd_catalan(args):
    g = asymptotics.catalan_constant(args.precision_bits)
    extra = {}
    if args.integral:
        q = asymptotics.entropy_integral(args.tolerance)
        extra = {"integral": repr(q.value), "error_bound": repr(q.error_bound)}
        with mpmath.workprec(args.precision_bits):
            extra["g_over_pi"] = _mp_str(g / mpmath.pi, _digits(args.precision_bits))
    yield ResultRecord(
        "catalan", {"precision_bits": args.precision_bits}, _mp_str(g, _digits(args.precision_bits)),
        "accelerated-series", extra=extra,
    )


def cmd_verify(args):
    failed = []
    for result in verify.run_checks(args.max_cells):
        if not result.passed:
            failed.append(result.name)
        yield ResultRecord(
            "verify", {"check": result.name, "max_cells": args.max_cells},
            "pass" if result.passed else "fail", "verify", extra={"detail": result.detail},
        )
    if failed:
        raise VerifyFailed(", ".join(failed))


class VerifyFailed(Exception):
    pass


# parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dimers", description="Exact counting of domino tilings.")
    parser.add_argument("--pretty", action="store_true", help="render a table instead of JSON lines")
    parser.add_argument("--threads", type=int, default=None,
                        help=f"worker cap (default: ${THREADS_ENV} or 1)")
    # the global flags are also accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add_parser = sub.add_parser

    def _add(name, **kwargs):
        return add_parser(name, parents=[common], **kwargs)

    sub.add_parser = _add

    def dims(p):
        p.add_argument("--rows", type=int, required=True)
        p.add_argument("--cols", type=int, required=True)

    methods = ("enumerate", "determinant", "spectral")
    p = sub.add_parser("count", help="tilings of a rectangle")
    dims(p)
    p.add_argument("--method", choices=methods, default="determinant")
    p.add_argument("--precision-bits", type=int, default=None)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("torus", help="tilings of a torus")
    dims(p)
    p.add_argument("--method", choices=methods, default="determinant")
    p.add_argument("--precision-bits", type=int, default=None)
    p.add_argument("--experimental", action="store_true", help="allow sides that are 2 mod 4")
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("overtilings", help="tilings where dominoes may straddle the boundary")
    dims(p)
    p.add_argument("--max-cells", type=int, default=None)
    p.set_defaults(func=cmd_overtilings)

    p = sub.add_parser("boundary", help="overtilings with a fixed set of boundary stubs")
    dims(p)
    p.add_argument("--stub", action="append", default=[], metavar="X,Y,DIR",
                   help="a stub at cell (X,Y) pointing left/right/up/down; repeatable")
    p.add_argument("--max-cells", type=int, default=None)
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("encode", help="encode a tiling (domino list file) into the bit format")
    dims(p)
    p.add_argument("--input", required=True, help="text file, one 'x1 y1 x2 y2' domino per line")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a bit-format file back into dominoes")
    p.add_argument("--input", required=True)
    p.add_argument("--output", default=None, help="optional domino list file to write")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("entropy", help="per-site log of N(n,n) for even n up to --max-n")
    p.add_argument("--max-n", type=int, default=64)
    p.add_argument("--precision-bits", type=int, default=64)
    p.set_defaults(func=cmd_entropy)

    p = sub.add_parser("catalan", help="Catalan's constant")
    p.add_argument("--precision-bits", type=int, default=128)
    p.add_argument("--integral", action="store_true", help="also evaluate the entropy integral")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.set_defaults(func=cmd_catalan)

    p = sub.add_parser("verify", help="run the cross-pipeline and property checks")
    p.add_argument("--max-cells", type=int, default=36)
    p.set_defaults(func=cmd_verify)
    return parser


def _render_pretty(records, out):
    for r in records:
        params = " ".join(f"{k}={v}" for k, v in r.parameters.items())
        tail = " ".join(f"{k}={v}" for k, v in r.extra.items()) if r.extra else ""
        out.write(f"{r.command:<12} {params:<40} {r.method:<20} {r.value}  ({r.elapsed_ms} ms) {tail}\n".rstrip() + "\n")


def _error(kind: str, message: str, stream) -> None:
    stream.write(json.dumps({"error": kind, "message": message}) + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _error("usage", str(exc), stderr)
        return 1
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    if args.threads is None:
        args.threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    start = time.perf_counter()
    records = []
    status = 0
    try:
        for record in args.func(args):
            record.elapsed_ms = int((time.perf_counter() - start) * 1000)
            if args.pretty:
                records.append(record)
            else:
                stdout.write(record.to_json() + "\n")
                stdout.flush()
    except (UsageError, *USAGE_ERRORS) as exc:
        _error(type(exc).__name__, str(exc), stderr)
        status = 1
    except VerifyFailed as exc:
        _error("VerifyFailed", f"failed checks: {exc}", stderr)
        status = 2
    except (DimerError, ArithmeticError) as exc:
        _error(type(exc).__name__, str(exc), stderr)
        status = 2
    except OSError as exc:
        _error("OSError", str(exc), stderr)
        status = 1
    if args.pretty:
        _render_pretty(records, stdout)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
