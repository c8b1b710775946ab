"""diagc: compiler for a TeX-flavored commutative-diagram command language.

Pipeline: parse_source -> expand_figure -> merge_duplicate_nodes ->
render_svg / render_tikz / render_xypic / emit_ir.  compile_source runs
the whole front half per figure.
"""

from .compiler import CompiledFigure, compile_source, render_figure
from .diagnostics import Diagnostic, DiagramError, ExpandError, LayoutError, ParseError
from .expand import expand_figure, measure_morphism_width, two_cell_endpoint
from .geometry import Point, ScaleConfig, ratchet, tex_div, to_em
from .ir import Arrow, DiagramIR, LabelSide, Node, merge_duplicate_nodes
from .irtext import emit_ir, parse_ir
from .layout import (
    baseline_offset,
    bounding_box,
    clip_arrow,
    layout_diagram,
    offset_parallel,
    resolve_label_side,
)
from .metrics import DEFAULT_METRICS, FontMetrics, load_metrics, text_width
from .parser import Command, Figure, format_command, parse_command, parse_payload, parse_source
from .styles import ArrowStyle, decode_style
from .svg import render_svg
from .tikz import render_tikz
from .xypic import render_xypic

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "ArrowStyle",
    "Command",
    "CompiledFigure",
    "DEFAULT_METRICS",
    "DiagramError",
    "DiagramIR",
    "Diagnostic",
    "ExpandError",
    "Figure",
    "FontMetrics",
    "LabelSide",
    "LayoutError",
    "Node",
    "ParseError",
    "Point",
    "ScaleConfig",
    "baseline_offset",
    "bounding_box",
    "clip_arrow",
    "compile_source",
    "decode_style",
    "emit_ir",
    "expand_figure",
    "format_command",
    "layout_diagram",
    "load_metrics",
    "measure_morphism_width",
    "merge_duplicate_nodes",
    "offset_parallel",
    "parse_command",
    "parse_ir",
    "parse_payload",
    "parse_source",
    "ratchet",
    "render_figure",
    "render_svg",
    "render_tikz",
    "render_xypic",
    "resolve_label_side",
    "tex_div",
    "text_width",
    "to_em",
    "two_cell_endpoint",
]
