"""TikZ backend: a semantically equivalent picture in em coordinates.

Node texts become \\node commands, arrows become \\draw commands with
labels riding midway; arrow tips beyond plain '->' assume the standard
arrows library.  Styles the backend cannot express fall back to a solid
arrow with a warning.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional

from .geometry import format_decimal
from .ir import DiagramIR, LabelSide
from .layout import layout_diagram, path_labels
from .metrics import DEFAULT_METRICS, FontMetrics

_OPTIONS = {
    ">": "->",
    "->": "->",
    ">->": ">->",
    "->>": "->>",
    "<-": "<-",
    "<-<": "<-<",
    "<<-": "<<-",
    "=": "double",
    "=>": "double, ->",
    "-->": "->, dashed",
    ".>": "->, dotted",
    "(->": "right hook->",
}

_SIDE_OPTION = {
    LabelSide.ABOVE: "above",
    LabelSide.BELOW: "below",
    LabelSide.ON_LINE: "fill=white, inner sep=1pt",
}


def render_tikz(
    d: DiagramIR,
    metrics: FontMetrics = DEFAULT_METRICS,
    warnings: Optional[List[str]] = None,
) -> str:
    lay = layout_diagram(d, metrics)
    cfg = d.scale

    def em(v: Fraction) -> str:
        return format_decimal(v * cfg.scale / 100) + "em"

    def at(p) -> str:
        return f"({em(p[0])},{em(p[1])})"

    lines: List[str] = ["\\begin{tikzpicture}[line cap=round]"]
    for placed in lay.nodes:
        if not placed.node.text:
            continue
        lines.append(f"\\node at {at(placed.center)} {{${placed.node.text}$}};")
    for path in lay.paths:
        token = path.arrow.style.strip()
        options = _OPTIONS.get(token)
        if options is None:
            if warnings is not None:
                warnings.append(
                    f"style {path.arrow.style!r} not supported by the TikZ "
                    "backend; drawn as a solid arrow"
                )
            options = "->"
        label_nodes = ""
        for text, side in path_labels(path):
            label_nodes += f" node[{_SIDE_OPTION[side]}] {{$\\scriptstyle {text}$}}"
        lines.append(
            f"\\draw[{options}] {at(path.start)} --{label_nodes} {at(path.end)};"
        )
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"
