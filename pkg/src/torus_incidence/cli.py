"""Command-line entry point.

Exit codes: 0 success or valid, 1 invariant violation, 2 usage or parse error,
3 size guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import formats, provider
from .coloring import verify_incidence_coloring, verify_partial, verify_vertex_coloring
from .config import load_settings
from .constructor import construct
from .exact import SearchLimitReached, SizeGuardError, exact_incidence_chromatic, exact_vertex_chromatic
from .graph import Direction, TorusGrid, square, torus_as_graph
from .pattern import Pattern, QuasiPattern, as_vertex_coloring, induce_incidence_coloring, induce_partial

OK, INVALID, USAGE, GUARD = 0, 1, 2, 3
FORMATS = ("json", "matrix", "dot", "ascii")


class _Usage(Exception):
    pass


def _grid_arg(value: str) -> int:
    try:
        v = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if v < 3:
        raise argparse.ArgumentTypeError(f"grid dimensions must be at least 3, got {v}")
    return v


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _format_coloring(c, fmt: str, extra: dict | None = None) -> str:
    if fmt == "json":
        return formats.coloring_to_json(c, extra)
    if fmt == "ascii":
        return formats.render_ascii(c)
    if fmt == "dot":
        return formats.render_dot(c)
    p = formats.pattern_from_coloring(c)
    if p is None:
        raise _Usage("matrix output needs a total coloring induced by a pattern")
    return formats.pattern_to_matrix(p)


def _load_any(text: str):
    """An incidence coloring document, a pattern document, or an ASCII drawing."""
    stripped = text.lstrip()
    if stripped.startswith("T_{"):
        return formats.parse_ascii(text)
    if stripped.startswith("{"):
        data = formats._load_json(text)
        if isinstance(data, dict) and "colors" in data:
            return formats.coloring_from_json(text)
        return formats.pattern_from_json(text)
    return formats.pattern_from_matrix(text)


def cmd_construct(args) -> int:
    coloring, trace = construct(args.m, args.n)
    if not verify_incidence_coloring(coloring).valid:
        print("internal error: constructed coloring failed verification", file=sys.stderr)
        return INVALID
    summary = {"case": trace.case_label, "palette": coloring.palette_size}
    text = _format_coloring(coloring, args.format, {"trace": summary} if args.format == "json" else None)
    _emit(text, args.out)
    if args.out or args.format != "json":
        print(f"case {trace.case_label}, palette {coloring.palette_size}", file=sys.stderr)
    return OK


def _show(item) -> str:
    if len(item) == 3:
        r, c, d = item
        return f"({r}, {c}, {Direction(d).name})"
    return str(tuple(item))


def cmd_verify(args) -> int:
    text = _read(args.path)
    if args.kind == "incidence":
        c = _load_any(text)
        if isinstance(c, (Pattern, QuasiPattern)):
            c = induce_partial(c) if isinstance(c, QuasiPattern) else induce_incidence_coloring(c)
        verdict = verify_partial(c)
        missing = c.unassigned_count
        note = f" (partial, {missing} unassigned)" if missing else ""
    else:
        p = formats.load_pattern(text)
        base, deleted = (p.base, p.deleted_edges) if isinstance(p, QuasiPattern) else (p, ())
        verdict = verify_vertex_coloring(as_vertex_coloring(base, deleted))
        note = ""
        if not verdict.valid:
            verdict = type(verdict)(False, tuple(divmod(v, base.cols) for v in verdict.witness))
    if verdict.valid:
        print("valid" + note)
        return OK
    a, b = (_show(x) for x in verdict.witness)
    print(f"invalid: {a} conflicts with {b}")
    return INVALID


def cmd_chromatic(args, settings) -> int:
    grid = TorusGrid(args.m, args.n)
    allow = args.allow_large or settings.allow_large
    try:
        if args.target == "incidence":
            report = exact_incidence_chromatic(grid, args.k_max, allow_large=allow)
        else:
            report = exact_vertex_chromatic(square(torus_as_graph(grid)), args.k_max, allow_large=allow)
    except SizeGuardError as exc:
        print(f"size guard: {exc}; pass --allow-large to override", file=sys.stderr)
        return GUARD
    except SearchLimitReached as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return INVALID
    out = report.to_json()
    if not args.witness:
        out.pop("witness")
    print(json.dumps(out, indent=2))
    return OK


def cmd_render(args) -> int:
    c = _load_any(_read(args.path))
    if isinstance(c, QuasiPattern):
        c = induce_partial(c)
    elif isinstance(c, Pattern):
        c = induce_incidence_coloring(c)
    sys.stdout.write(formats.render_ascii(c))
    return OK


def cmd_export(args) -> int:
    obj = _load_any(_read(args.path))
    if isinstance(obj, (Pattern, QuasiPattern)):
        if args.format == "matrix":
            if isinstance(obj, QuasiPattern):
                raise _Usage("matrix output cannot carry deleted edges; use json")
            _emit(formats.pattern_to_matrix(obj), args.out)
            return OK
        if args.format == "json":
            _emit(formats.pattern_to_json(obj), args.out)
            return OK
        obj = induce_partial(obj) if isinstance(obj, QuasiPattern) else induce_incidence_coloring(obj)
    _emit(_format_coloring(obj, args.format), args.out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torus-incidence", description="Incidence colorings of toroidal grids.")
    parser.add_argument("--config", help="TOML file with cache_dir / allow_large")
    parser.add_argument("--cache-dir", help="directory for cached base patterns")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an optimal incidence coloring of T_{m,n}")
    p.add_argument("--m", type=_grid_arg, required=True)
    p.add_argument("--n", type=_grid_arg, required=True)
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check an incidence coloring or a pattern")
    p.add_argument("path")
    p.add_argument("--kind", choices=("incidence", "vertex-square"), default="incidence")

    p = sub.add_parser("chromatic", help="exact chromatic numbers of small tori")
    p.add_argument("--m", type=_grid_arg, required=True)
    p.add_argument("--n", type=_grid_arg, required=True)
    p.add_argument("--target", choices=("incidence", "square"), default="incidence")
    p.add_argument("--k-max", type=int, default=10)
    p.add_argument("--allow-large", action="store_true")
    p.add_argument("--witness", action="store_true", help="include the witness coloring")

    p = sub.add_parser("render", help="draw a coloring file as ASCII")
    p.add_argument("path")

    p = sub.add_parser("export", help="convert between file formats")
    p.add_argument("path")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--out")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        settings = load_settings(args.config, args.cache_dir)
    except (OSError, ValueError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return USAGE
    provider.configure(settings)
    try:
        if args.command == "construct":
            return cmd_construct(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "chromatic":
            return cmd_chromatic(args, settings)
        if args.command == "render":
            return cmd_render(args)
        return cmd_export(args)
    except formats.FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (_Usage, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
