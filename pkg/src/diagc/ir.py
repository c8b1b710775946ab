"""Flat node/arrow intermediate representation shared by all backends.

Values are immutable after construction and safe to share.  Geometry is
integer centi-em; render scale lives in the attached ScaleConfig.  Nodes
and arrows carry a creation-order seq that doubles as a stable id and
keeps every backend's output deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from .geometry import Point, ScaleConfig


class LabelSide(Enum):
    ABOVE = "above"      # left of the direction of travel
    BELOW = "below"      # right of the direction of travel
    ON_LINE = "online"   # knocked out of the arrow line
    NONE = "none"


# Arrow emission kinds, used by the token-stream backend.
KIND_POS = "pos"         # positioned arrow between two drawn node texts
KIND_VECTOR = "vector"   # bare arrow, no node texts
KIND_TO = "to"           # single inline arrow with ^/_ label pair
KIND_TWO = "two"         # parallel inline pair
KIND_THREE = "three"     # parallel inline triple
KIND_TWOAR = "twoar"     # double-shafted 2-cell arrow


@dataclass(frozen=True)
class Node:
    anchor: Point
    text: str
    seq: int
    align: str = ""          # placement alignment: '', 'l', 'r', 'u', 'd'
    standalone: bool = False  # placed on its own, not via an arrow's ends


@dataclass(frozen=True)
class Arrow:
    start: Point
    end: Point
    style: str               # raw style token, verbatim
    label: str
    side: LabelSide
    seq: int
    kind: str = KIND_POS
    start_text: str = ""     # node text drawn at each end (pos arrows)
    end_text: str = ""
    label2: str = ""         # inline 'to': the '_' label (drawn below)
    offset_pt: Fraction = Fraction(0)   # parallel offset, printer's points
    local_scale: Fraction = Fraction(1)  # extra render scale (2-cell arrows)
    group: int = -1          # inline arrows sharing one emission group

    @property
    def displacement(self) -> Tuple[int, int]:
        return (self.end.x - self.start.x, self.end.y - self.start.y)


@dataclass(frozen=True)
class DiagramIR:
    nodes: Tuple[Node, ...]
    arrows: Tuple[Arrow, ...]
    scale: ScaleConfig = ScaleConfig()

    def with_scale(self, cfg: ScaleConfig) -> "DiagramIR":
        return replace(self, scale=cfg)


def merge_duplicate_nodes(
    d: DiagramIR, warnings: Optional[List[str]] = None
) -> DiagramIR:
    """Collapse nodes with identical (anchor, text) to their first copy.

    Shapes overprint shared corners, so duplicates are the normal case.
    Same anchor with different text is kept (both copies) but reported,
    since TeX would overprint it silently.  Idempotent; arrows are
    untouched.
    """
    seen: dict = {}
    by_anchor: dict = {}
    kept: List[Node] = []
    for node in d.nodes:
        key = (node.anchor, node.text)
        if key in seen:
            continue
        other = by_anchor.get(node.anchor)
        if other is not None and other.text != node.text and warnings is not None:
            warnings.append(
                f"two nodes at ({node.anchor.x},{node.anchor.y}) with "
                f"different text: {other.text!r} and {node.text!r}"
            )
        seen[key] = node
        by_anchor.setdefault(node.anchor, node)
        kept.append(node)
    return replace(d, nodes=tuple(kept))
