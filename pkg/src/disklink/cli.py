"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O or
malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .canonical_order import NotThreeConnected, compute_canonical_order
from .graph_gen import FAMILIES, GenSpec, SizeTooSmall, corpus_specs, generate
from .io_formats import (
    FormatError,
    SvgStyle,
    dumps,
    emit_svg,
    parse_drawing,
    parse_graph,
    parse_order,
    serialize_drawing,
    serialize_graph,
    serialize_order,
    serialize_report,
    serialize_trace,
)
from .layout import ALGORITHMS, MODES, draw
from .plane_graph import EmbeddingError, PlaneGraph, check_three_connected, validate_embedding
from .verify import edge_vertex_resolution, verify_drawing

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
CHECK_NAMES = (
    "planar",
    "convex_internal",
    "convex_outer",
    "resolution",
    "grid_bound",
    "slope_classes",
    "face_shape",
    "red_forest",
)


class InputError(Exception):
    """Unreadable or malformed input; maps to exit code 3."""


# ---------------------------------------------------------------------------
# I/O helpers
# ---------------------------------------------------------------------------


def _read(path: str | None) -> bytes:
    try:
        if path in (None, "-"):
            return sys.stdin.buffer.read()
        return Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str | None, data: bytes) -> None:
    try:
        if path in (None, "-"):
            sys.stdout.buffer.write(data)
            sys.stdout.buffer.flush()
        else:
            Path(path).write_bytes(data)
    except OSError as e:
        raise InputError(f"cannot write {path}: {e.strerror}") from None


def _load_graph(path: str | None, check_3conn: bool = False) -> PlaneGraph:
    try:
        g = parse_graph(_read(path))
    except (FormatError, EmbeddingError) as e:
        raise InputError(f"{path or '<stdin>'}: {e}") from None
    if check_3conn and not check_three_connected(g):
        raise InputError(f"{path or '<stdin>'}: graph is not 3-connected")
    return g


def _fmt_frac(x: Fraction | None) -> str:
    if x is None:
        return "inf"
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    size = args.size if args.size is not None else (0 if args.family == "cube" else None)
    if size is None:
        raise argparse.ArgumentTypeError("--size is required for this family")
    try:
        g = generate(GenSpec(args.family, size, args.seed))
    except SizeTooSmall as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    _write(args.output, serialize_graph(g))
    return EXIT_OK


def cmd_draw(args: argparse.Namespace) -> int:
    g = _load_graph(args.input, check_3conn=not args.skip_3conn_check)
    fs = validate_embedding(g)
    if args.order:
        try:
            pi = parse_order(_read(args.order))
        except FormatError as e:
            raise InputError(f"{args.order}: {e}") from None
    else:
        try:
            pi = compute_canonical_order(g, fs)
        except NotThreeConnected as e:
            raise InputError(f"no canonical order: {e}") from None
    d = draw(g, pi, args.algo, args.mode, f=fs.internal_count, trace=bool(args.trace))
    _write(args.output, serialize_drawing(d))
    if args.trace:
        _write(args.trace, serialize_trace(d))
    if args.order_out:
        _write(args.order_out, serialize_order(pi))
    return EXIT_OK


def _selected_checks(spec: str | None) -> list[str] | None:
    if not spec:
        return None
    names = [c.strip() for c in spec.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECK_NAMES]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown check(s): {', '.join(unknown)}")
    return names


def _verify_instance(item: tuple[GenSpec, str, list[str] | None]) -> tuple[str, dict]:
    spec, algo, checks = item
    g = generate(spec)
    fs = validate_embedding(g)
    pi = compute_canonical_order(g, fs)
    d = draw(g, pi, algo, f=fs.internal_count)
    rep = verify_drawing(g, d, fs, checks)
    return spec.name, rep.to_dict()


def cmd_verify(args: argparse.Namespace) -> int:
    checks = _selected_checks(args.checks)
    if args.profile:
        items = [(s, args.algo, checks) for s in corpus_specs(args.profile)]
        if args.jobs == 1:
            results = [_verify_instance(it) for it in items]
        else:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                results = list(ex.map(_verify_instance, items, chunksize=8))
        results.sort(key=lambda r: r[0])
        ok = all(r["ok"] for _, r in results)
        failed = [name for name, r in results if not r["ok"]]
        _write(args.output, dumps({"ok": ok, "algo": args.algo, "failed": failed, "instances": dict(results)}))
        return EXIT_OK if ok else EXIT_FAIL
    try:
        d = parse_drawing(_read(args.input))
    except FormatError as e:
        raise InputError(f"{args.input or '<stdin>'}: {e}") from None
    g = _load_graph(args.graph) if args.graph else None
    if g is not None and g.n != d.n:
        raise InputError(f"graph has {g.n} vertices, drawing has {d.n}")
    rep = verify_drawing(g, d, None, checks)
    _write(args.output, serialize_report(rep))
    if not rep.ok:
        name, witness = rep.first_failure()
        print(f"verification failed: {name}: {witness}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def _compare_row(item: tuple[str, PlaneGraph]) -> str:
    name, g = item
    fs = validate_embedding(g)
    pi = compute_canonical_order(g, fs)
    cols = [name, str(g.n), str(fs.internal_count), str(min(fs.internal_count, g.n - 3))]
    edges = g.edges()
    for algo in ALGORITHMS:
        d = draw(g, pi, algo, f=fs.internal_count)
        res, _ = edge_vertex_resolution(edges, d.coords)
        cols += [str(d.width), str(d.height), _fmt_frac(res)]
    return "\t".join(cols)


def cmd_compare(args: argparse.Namespace) -> int:
    header = "instance\tn\tf\ta\tck_width\tck_height\tck_res2\tdisklink_width\tdisklink_height\tdisklink_res2"
    if args.profile:
        items = [(s.name, generate(s)) for s in corpus_specs(args.profile)]
    elif args.input:
        items = [(Path(p).stem if p != "-" else "stdin", _load_graph(p)) for p in args.input]
    else:
        items = [("stdin", _load_graph(None))]
    rows = [_compare_row(it) for it in items]
    _write(args.output, ("\n".join([header, *rows]) + "\n").encode())
    return EXIT_OK


def cmd_svg(args: argparse.Namespace) -> int:
    try:
        d = parse_drawing(_read(args.input))
    except FormatError as e:
        raise InputError(f"{args.input or '<stdin>'}: {e}") from None
    style = SvgStyle(scale=args.scale, colored=not args.mono)
    _write(args.output, emit_svg(d, style))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _default_scale() -> int:
    raw = os.environ.get("DISKLINK_SCALE", "40")
    try:
        value = int(raw)
    except ValueError:
        return 40
    return value if value > 0 else 40


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="disklink", description="Convex disk-link grid drawings of 3-connected plane graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a plane graph")
    g.add_argument("--family", choices=FAMILIES, required=True)
    g.add_argument("--size", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("draw", help="draw a graph")
    d.add_argument("-i", "--input", help="graph JSON (default: stdin)")
    d.add_argument("-o", "--output")
    d.add_argument("--algo", choices=ALGORITHMS, default="disklink")
    d.add_argument("--mode", choices=MODES, default="forest")
    d.add_argument("--order", help="canonical order JSON to use instead of computing one")
    d.add_argument("--order-out", help="write the canonical order used")
    d.add_argument("--trace", help="write per-step trace JSON")
    d.add_argument("--skip-3conn-check", action="store_true", help="skip the quadratic 3-connectivity test")
    d.set_defaults(func=cmd_draw)

    v = sub.add_parser("verify", help="verify a drawing, or a whole corpus profile")
    v.add_argument("-i", "--input", help="drawing JSON (default: stdin)")
    v.add_argument("--graph", help="graph JSON; otherwise the embedding is read off the drawing")
    v.add_argument("-o", "--output")
    v.add_argument("--checks", help=f"comma-separated subset of: {', '.join(CHECK_NAMES)}")
    v.add_argument("--profile", choices=("smoke", "full"), help="draw and verify every corpus instance")
    v.add_argument("--algo", choices=ALGORITHMS, default="disklink", help="algorithm for --profile")
    v.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="TSV of CK versus disk-link per graph")
    c.add_argument("-i", "--input", nargs="*", help="graph JSON files")
    c.add_argument("--profile", choices=("smoke", "full"))
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_compare)

    s = sub.add_parser("svg", help="render a drawing as SVG")
    s.add_argument("-i", "--input", help="drawing JSON (default: stdin)")
    s.add_argument("-o", "--output")
    s.add_argument("--scale", type=_positive, default=_default_scale())
    s.add_argument("--mono", action="store_true", help="draw every edge in black")
    s.set_defaults(func=cmd_svg)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except argparse.ArgumentTypeError as e:
        print(f"disklink: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as e:
        print(f"disklink: {e}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run())
