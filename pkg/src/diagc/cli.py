"""Command-line front end: compile files, dump IR, run golden checks.

Exit status: 0 on success, 1 when --strict promotes warnings or a
--check comparison fails, 2 on parse/expansion errors.  One output file
per figure; multiple figures in one input get a -N suffix.  Commands
outside \\bfig blocks form one implicit figure, compiled last.
Diagnostics go to standard error in input order.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

from .compiler import FORMATS, compile_source, render_figure
from .diagnostics import Diagnostic, DiagramError
from .geometry import ScaleConfig, as_fraction
from .metrics import DEFAULT_METRICS, FontMetrics, MetricsError, load_metrics

_EXTENSIONS = {"svg": ".svg", "tikz": ".tex", "xypic": ".xy", "ir": ".ir"}


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diagc",
        description="Compile commutative-diagram source files.",
    )
    parser.add_argument("inputs", nargs="+", help="diagram source files")
    parser.add_argument(
        "--format", "-f", choices=FORMATS, default="svg",
        help="output format (default: svg)",
    )
    parser.add_argument(
        "-o", "--output", default=None,
        help="output file (single result) or directory",
    )
    parser.add_argument("--scale", default="1", help="render scale (default: 1)")
    parser.add_argument("--em", default="10", help="em size in points (default: 10)")
    parser.add_argument(
        "--metrics", default=os.environ.get("DIAGC_METRICS"),
        help="character width table (default: $DIAGC_METRICS)",
    )
    parser.add_argument(
        "--strict", action="store_true", help="treat warnings as errors"
    )
    parser.add_argument(
        "--check", metavar="GOLDEN_DIR", default=None,
        help="compare output against golden files instead of writing",
    )
    return parser


@dataclass
class _FileResult:
    path: Path
    outputs: List[Tuple[str, str]] = field(default_factory=list)  # (name, text)
    diagnostics: List[Diagnostic] = field(default_factory=list)
    status: int = 0


def _compile_file(
    path: Path, fmt: str, cfg: ScaleConfig, metrics: FontMetrics
) -> _FileResult:
    result = _FileResult(path=path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        result.diagnostics.append(
            Diagnostic("error", f"cannot read {path}: {exc}", str(path))
        )
        result.status = 2
        return result
    try:
        figures = compile_source(text, str(path), cfg, metrics)
    except DiagramError as exc:
        result.diagnostics.append(exc.diagnostic)
        result.status = 2
        return result
    ext = _EXTENSIONS[fmt]
    for index, figure in enumerate(figures):
        result.diagnostics.extend(figure.warnings)
        if len(figures) > 1:
            name = f"{path.stem}-{index + 1}{ext}"
        else:
            name = f"{path.stem}{ext}"
        render_warnings: List[str] = []
        try:
            rendered = render_figure(figure, fmt, metrics, render_warnings)
        except DiagramError as exc:
            result.diagnostics.append(exc.diagnostic)
            result.status = 2
            continue
        result.diagnostics.extend(
            Diagnostic("warning", note, str(path)) for note in render_warnings
        )
        result.outputs.append((name, rendered))
    return result


def _write_atomic(dest: Path, text: str) -> None:
    # no partial files: write to a sibling temp file, then rename over
    fd, tmp = tempfile.mkstemp(dir=str(dest.parent), prefix=dest.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, dest)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def main(argv: Optional[List[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    try:
        cfg = ScaleConfig(scale=as_fraction(args.scale), em_size=as_fraction(args.em))
    except (ValueError, ZeroDivisionError) as exc:
        print(f"diagc: {exc}", file=sys.stderr)
        return 2
    try:
        metrics = load_metrics(args.metrics) if args.metrics else DEFAULT_METRICS
    except MetricsError as exc:
        print(f"diagc: {exc}", file=sys.stderr)
        return 2

    paths = [Path(p) for p in args.inputs]
    with ThreadPoolExecutor(max_workers=min(8, len(paths))) as pool:
        results = list(
            pool.map(lambda p: _compile_file(p, args.format, cfg, metrics), paths)
        )

    status = 0
    total_outputs = sum(len(r.outputs) for r in results)
    out_arg = args.output
    single_file_output = (
        out_arg is not None
        and not out_arg.endswith(os.sep)
        and not Path(out_arg).is_dir()
    )
    if single_file_output and total_outputs > 1:
        print(
            "diagc: --output names a single file but there are "
            f"{total_outputs} outputs; pass a directory",
            file=sys.stderr,
        )
        return 2

    for result in results:
        for diag in result.diagnostics:
            print(diag.format(), file=sys.stderr)
        status = max(status, result.status)
        if args.strict and any(d.severity == "warning" for d in result.diagnostics):
            status = max(status, 1)
        if result.status:
            continue
        for name, text in result.outputs:
            if args.check is not None:
                golden = Path(args.check) / name
                try:
                    expected = golden.read_text(encoding="utf-8")
                except OSError:
                    print(f"diagc: missing golden file {golden}", file=sys.stderr)
                    status = max(status, 1)
                    continue
                if expected != text:
                    print(f"diagc: golden mismatch for {name}", file=sys.stderr)
                    status = max(status, 1)
                continue
            if single_file_output:
                dest = Path(out_arg)
            else:
                base = Path(out_arg) if out_arg is not None else result.path.parent
                base.mkdir(parents=True, exist_ok=True)
                dest = base / name
            try:
                _write_atomic(dest, text)
            except OSError as exc:
                print(f"diagc: cannot write {dest}: {exc}", file=sys.stderr)
                status = max(status, 2)
    return status


if __name__ == "__main__":
    sys.exit(main())
