"""Deterministic SVG 1.1 backend.

Nodes become text elements, arrows become marker-terminated lines, the
y axis is flipped for screen space, and one centi-em maps to
0.01 x em_size x scale px.  All numbers are exact decimals derived from
rational arithmetic, so output is byte-identical across runs and every
coordinate scales linearly with the configured scale.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .ir import DiagramIR, LabelSide
from .geometry import format_decimal
from .layout import (
    DrawablePath,
    knockout_spans,
    label_center,
    layout_diagram,
    left_perp,
    path_labels,
)
from .metrics import DEFAULT_METRICS, FontMetrics
from .styles import (
    ArrowStyle,
    BODY_DASHED,
    BODY_DOTTED,
    BODY_DOUBLE,
    HEAD_DOUBLE,
    HEAD_NONE,
    TAIL_HEAD,
    TAIL_HOOK,
    decode_style,
)

STROKE_WIDTH = 5        # centi-em
DOUBLE_GAP = 5          # half-gap between double shafts, centi-em
HEAD_LEN = 35           # marker length, centi-em (0.35 em)
HEAD_HALF_WIDTH = 14    # marker half-width, centi-em
BASELINE_DROP = 35      # text baseline below box center, centi-em


def _xml_escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _marker_defs(u: Fraction) -> Dict[str, str]:
    h = HEAD_LEN * u
    w = HEAD_HALF_WIDTH * u
    sw = STROKE_WIDTH * u
    f = format_decimal

    def marker(name: str, width: Fraction, ref_x: Fraction, body: str) -> str:
        return (
            f'<marker id="{name}" markerUnits="userSpaceOnUse"'
            f' markerWidth="{f(width)}" markerHeight="{f(2 * w)}"'
            f' refX="{f(ref_x)}" refY="{f(w)}" orient="auto">{body}</marker>'
        )

    fwd = f'<path d="M 0 0 L {f(h)} {f(w)} L 0 {f(2 * w)} Z"/>'
    fwd2 = (
        f'<path d="M 0 0 L {f(h)} {f(w)} L 0 {f(2 * w)} Z"/>'
        f'<path d="M {f(h)} 0 L {f(2 * h)} {f(w)} L {f(h)} {f(2 * w)} Z"/>'
    )
    rev = f'<path d="M {f(h)} 0 L 0 {f(w)} L {f(h)} {f(2 * w)} Z"/>'
    rev2 = (
        f'<path d="M {f(h)} 0 L 0 {f(w)} L {f(h)} {f(2 * w)} Z"/>'
        f'<path d="M {f(2 * h)} 0 L {f(h)} {f(w)} L {f(2 * h)} {f(2 * w)} Z"/>'
    )
    hook = (
        f'<path d="M {f(h)} 0 A {f(w)} {f(w)} 0 0 0 {f(h)} {f(2 * w)}"'
        f' fill="none" stroke="black" stroke-width="{f(sw)}"/>'
    )
    return {
        "dg-head": marker("dg-head", h, h, fwd),
        "dg-head2": marker("dg-head2", 2 * h, 2 * h, fwd2),
        "dg-rhead": marker("dg-rhead", h, Fraction(0), rev),
        "dg-rhead2": marker("dg-rhead2", 2 * h, Fraction(0), rev2),
        "dg-mono": marker("dg-mono", h, Fraction(0), fwd),
        "dg-rmono": marker("dg-rmono", h, h, rev),
        "dg-hook": marker("dg-hook", h, Fraction(0), hook),
    }


def _path_markers(style: ArrowStyle) -> Tuple[str, str]:
    """(marker-start, marker-end) ids for a decoded style."""
    start = ""
    end = ""
    if style.reversed:
        if style.head == HEAD_DOUBLE:
            start = "dg-rhead2"
        elif style.head != HEAD_NONE:
            start = "dg-rhead"
        if style.tail == TAIL_HEAD:
            end = "dg-rmono"
        elif style.tail == TAIL_HOOK:
            end = "dg-hook"
        return start, end
    if style.head == HEAD_DOUBLE:
        end = "dg-head2"
    elif style.head != HEAD_NONE:
        end = "dg-head"
    if style.tail == TAIL_HEAD:
        start = "dg-mono"
    elif style.tail == TAIL_HOOK:
        start = "dg-hook"
    return start, end


def render_svg(
    d: DiagramIR,
    metrics: FontMetrics = DEFAULT_METRICS,
    warnings: Optional[List[str]] = None,
) -> str:
    lay = layout_diagram(d, metrics)
    cfg = d.scale
    u = cfg.em_size * cfg.scale / 100  # px per centi-em
    x0, y0, x1, y1 = lay.bbox
    width = (x1 - x0) * u
    height = (y1 - y0) * u
    f = format_decimal

    def px(fx: Fraction) -> Fraction:
        return (fx - x0) * u

    def py(fy: Fraction) -> Fraction:
        return (y1 - fy) * u

    node_font = 100 * u
    label_font = 100 * cfg.label_scale * u
    sw = STROKE_WIDTH * u

    used_markers: set = set()
    arrow_elems: List[str] = []
    label_elems: List[str] = []

    def emit_line(a, b, extra: str = "") -> None:
        arrow_elems.append(
            f'<line x1="{f(px(a[0]))}" y1="{f(py(a[1]))}"'
            f' x2="{f(px(b[0]))}" y2="{f(py(b[1]))}"'
            f' stroke="black" stroke-width="{f(sw)}"{extra}/>'
        )

    def emit_label(text: str, center, font: Fraction) -> None:
        baseline = py(center[1]) + BASELINE_DROP * u * cfg.label_scale
        label_elems.append(
            f'<text class="label" x="{f(px(center[0]))}" y="{f(baseline)}"'
            f' font-size="{f(font)}" text-anchor="middle">'
            f"{_xml_escape(text)}</text>"
        )

    def shaft_attr(style: ArrowStyle) -> str:
        if style.body == BODY_DASHED:
            return f' stroke-dasharray="{f(20 * u)} {f(12 * u)}"'
        if style.body == BODY_DOTTED:
            return f' stroke-dasharray="{f(2 * u)} {f(10 * u)}" stroke-linecap="round"'
        return ""

    def draw_path(path: DrawablePath) -> None:
        arrow = path.arrow
        style = decode_style(arrow.style)
        if style.needs_fallback:
            if warnings is not None:
                warnings.append(
                    f"style {arrow.style!r} not supported by the SVG backend; "
                    "drawn as a solid arrow"
                )
            style = decode_style(">")
        mk_start, mk_end = _path_markers(style)
        used_markers.update(m for m in (mk_start, mk_end) if m)
        marker_attr = ""
        if mk_start:
            marker_attr += f' marker-start="url(#{mk_start})"'
        if mk_end:
            marker_attr += f' marker-end="url(#{mk_end})"'
        spans = [(path.start, path.end)]
        if arrow.side is LabelSide.ON_LINE and arrow.label:
            spans = knockout_spans(path, arrow.label, cfg, metrics)
        if style.body == BODY_DOUBLE:
            dx, dy = path.direction
            pxv, pyv = left_perp(dx, dy)
            gap = (pxv * DOUBLE_GAP, pyv * DOUBLE_GAP)
            for a, b in spans:
                emit_line(
                    (a[0] + gap[0], a[1] + gap[1]), (b[0] + gap[0], b[1] + gap[1])
                )
                emit_line(
                    (a[0] - gap[0], a[1] - gap[1]), (b[0] - gap[0], b[1] - gap[1])
                )
            if marker_attr:
                arrow_elems.append(
                    f'<line x1="{f(px(path.start[0]))}" y1="{f(py(path.start[1]))}"'
                    f' x2="{f(px(path.end[0]))}" y2="{f(py(path.end[1]))}"'
                    f' stroke="none"{marker_attr}/>'
                )
        else:
            dash = shaft_attr(style)
            for i, (a, b) in enumerate(spans):
                attr = dash
                if mk_start and i == 0 and a == path.start:
                    attr += f' marker-start="url(#{mk_start})"'
                if mk_end and i == len(spans) - 1 and b == path.end:
                    attr += f' marker-end="url(#{mk_end})"'
                emit_line(a, b, attr)
            if not spans and marker_attr:
                # shaft fully knocked out: keep the arrow tips
                arrow_elems.append(
                    f'<line x1="{f(px(path.start[0]))}" y1="{f(py(path.start[1]))}"'
                    f' x2="{f(px(path.end[0]))}" y2="{f(py(path.end[1]))}"'
                    f' stroke="none"{marker_attr}/>'
                )
        for text, side in path_labels(path):
            emit_label(text, label_center(path, side, cfg), label_font)

    node_elems: List[str] = []
    for placed in lay.nodes:
        if not placed.node.text:
            continue
        baseline = py(placed.center[1]) + BASELINE_DROP * u
        node_elems.append(
            f'<text class="node" x="{f(px(placed.center[0]))}" y="{f(baseline)}"'
            f' font-size="{f(node_font)}" text-anchor="middle">'
            f"{_xml_escape(placed.node.text)}</text>"
        )

    for path in lay.paths:
        draw_path(path)

    defs = _marker_defs(u)
    out: List[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1"'
        f' width="{f(width)}" height="{f(height)}"'
        f' viewBox="0 0 {f(width)} {f(height)}">'
    )
    if used_markers:
        out.append("<defs>")
        for name in sorted(used_markers):
            out.append(defs[name])
        out.append("</defs>")
    out.append('<g font-family="serif" fill="black">')
    out.extend(node_elems)
    out.extend(arrow_elems)
    out.extend(label_elems)
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
