"""Canonical structured-text dump of a DiagramIR, and its parser.

Field order and integer formatting are fixed so output is byte-stable;
emit -> parse -> emit is a fixpoint.  Text fields sit in balanced
braces (their content is brace-balanced by construction).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from .geometry import Point, ScaleConfig
from .ir import Arrow, DiagramIR, LabelSide, Node

_HEADER = "diagc-ir 1"


def _frac(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def emit_ir(d: DiagramIR) -> str:
    cfg = d.scale
    lines = [
        _HEADER,
        f"scale {_frac(cfg.scale)}",
        f"em {_frac(cfg.em_size)}",
        f"ex-ratio {_frac(cfg.ex_ratio)}",
        f"label-scale {_frac(cfg.label_scale)}",
        f"object-margin {cfg.object_margin}",
    ]
    for n in sorted(d.nodes, key=lambda n: n.seq):
        lines.append(
            f"node seq={n.seq} x={n.anchor.x} y={n.anchor.y}"
            f" align={n.align or '-'} standalone={int(n.standalone)}"
            f" text={{{n.text}}}"
        )
    for a in sorted(d.arrows, key=lambda a: a.seq):
        lines.append(
            f"arrow seq={a.seq} kind={a.kind}"
            f" x1={a.start.x} y1={a.start.y} x2={a.end.x} y2={a.end.y}"
            f" style={{{a.style}}} label={{{a.label}}} side={a.side.value}"
            f" label2={{{a.label2}}} start={{{a.start_text}}} end={{{a.end_text}}}"
            f" offset={_frac(a.offset_pt)} lscale={_frac(a.local_scale)}"
            f" group={a.group}"
        )
    lines.append("end")
    return "\n".join(lines) + "\n"


class IRSyntaxError(ValueError):
    pass


def _parse_kv(line: str) -> Dict[str, str]:
    fields: Dict[str, str] = {}
    i, n = 0, len(line)
    while i < n:
        if line[i] == " ":
            i += 1
            continue
        eq = line.find("=", i)
        if eq < 0:
            raise IRSyntaxError(f"malformed field in {line!r}")
        key = line[i:eq]
        i = eq + 1
        if i < n and line[i] == "{":
            depth = 0
            j = i
            while j < n:
                if line[j] == "{":
                    depth += 1
                elif line[j] == "}":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if depth != 0:
                raise IRSyntaxError(f"unbalanced braces in {line!r}")
            fields[key] = line[i + 1:j]
            i = j + 1
        else:
            j = line.find(" ", i)
            if j < 0:
                j = n
            fields[key] = line[i:j]
            i = j
    return fields


def parse_ir(text: str) -> DiagramIR:
    lines = text.splitlines()
    if not lines or lines[0] != _HEADER:
        raise IRSyntaxError("missing IR header")
    scalars: Dict[str, str] = {}
    nodes: List[Node] = []
    arrows: List[Arrow] = []
    ended = False
    for line in lines[1:]:
        if not line.strip():
            continue
        if ended:
            raise IRSyntaxError("content after end marker")
        if line == "end":
            ended = True
            continue
        kind, _, rest = line.partition(" ")
        if kind in ("scale", "em", "ex-ratio", "label-scale", "object-margin"):
            scalars[kind] = rest.strip()
        elif kind == "node":
            kv = _parse_kv(rest)
            nodes.append(
                Node(
                    Point(int(kv["x"]), int(kv["y"])),
                    kv["text"],
                    int(kv["seq"]),
                    align="" if kv["align"] == "-" else kv["align"],
                    standalone=bool(int(kv["standalone"])),
                )
            )
        elif kind == "arrow":
            kv = _parse_kv(rest)
            arrows.append(
                Arrow(
                    start=Point(int(kv["x1"]), int(kv["y1"])),
                    end=Point(int(kv["x2"]), int(kv["y2"])),
                    style=kv["style"],
                    label=kv["label"],
                    side=LabelSide(kv["side"]),
                    seq=int(kv["seq"]),
                    kind=kv["kind"],
                    start_text=kv["start"],
                    end_text=kv["end"],
                    label2=kv["label2"],
                    offset_pt=Fraction(kv["offset"]),
                    local_scale=Fraction(kv["lscale"]),
                    group=int(kv["group"]),
                )
            )
        else:
            raise IRSyntaxError(f"unknown IR line {line!r}")
    if not ended:
        raise IRSyntaxError("missing end marker")
    cfg = ScaleConfig(
        scale=Fraction(scalars["scale"]),
        em_size=Fraction(scalars["em"]),
        ex_ratio=Fraction(scalars["ex-ratio"]),
        label_scale=Fraction(scalars["label-scale"]),
        object_margin=int(scalars["object-margin"]),
    )
    return DiagramIR(tuple(nodes), tuple(arrows), cfg)
