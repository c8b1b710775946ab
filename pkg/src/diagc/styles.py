"""Arrow style tokens and their decoded head/tail/body description.

A style token is carried verbatim through the IR (token-stream output
needs the raw spelling, alignment spaces included); backends that draw
geometry use the decoded fields.  Tokens beginning with '@' are raw
pass-through material for the token-stream backend only.
"""
from __future__ import annotations

from dataclasses import dataclass

TAIL_NONE = "none"
TAIL_HOOK = "hook"
TAIL_HEAD = "head"          # forward head at the tail end (mono)

BODY_SOLID = "solid"
BODY_DOUBLE = "double"
BODY_DASHED = "dashed"
BODY_DOTTED = "dotted"

HEAD_NONE = "none"
HEAD_NORMAL = "normal"
HEAD_DOUBLE = "double"


@dataclass(frozen=True)
class ArrowStyle:
    raw: str
    tail: str = TAIL_NONE
    body: str = BODY_SOLID
    head: str = HEAD_NORMAL
    reversed: bool = False   # visual head sits at the start point
    is_raw: bool = False     # '@...' pass-through
    known: bool = True

    @property
    def needs_fallback(self) -> bool:
        return self.is_raw or not self.known


# (tail, body, head, reversed); keys are tokens with alignment spaces
# already stripped.
_TABLE = {
    ">": (TAIL_NONE, BODY_SOLID, HEAD_NORMAL, False),
    "->": (TAIL_NONE, BODY_SOLID, HEAD_NORMAL, False),
    ">->": (TAIL_HEAD, BODY_SOLID, HEAD_NORMAL, False),
    "->>": (TAIL_NONE, BODY_SOLID, HEAD_DOUBLE, False),
    "<-": (TAIL_NONE, BODY_SOLID, HEAD_NORMAL, True),
    "<-<": (TAIL_HEAD, BODY_SOLID, HEAD_NORMAL, True),
    "<<-": (TAIL_NONE, BODY_SOLID, HEAD_DOUBLE, True),
    "=": (TAIL_NONE, BODY_DOUBLE, HEAD_NONE, False),
    "=>": (TAIL_NONE, BODY_DOUBLE, HEAD_NORMAL, False),
    "-->": (TAIL_NONE, BODY_DASHED, HEAD_NORMAL, False),
    ".>": (TAIL_NONE, BODY_DOTTED, HEAD_NORMAL, False),
    "(->": (TAIL_HOOK, BODY_SOLID, HEAD_NORMAL, False),
}


def decode_style(raw: str) -> ArrowStyle:
    """Decode a style token; unknown tokens fall back to a solid arrow."""
    token = raw.strip()
    if token.startswith("@"):
        return ArrowStyle(raw=raw, is_raw=True, known=False)
    entry = _TABLE.get(token)
    if entry is None:
        return ArrowStyle(raw=raw, known=False)
    tail, body, head, rev = entry
    return ArrowStyle(raw=raw, tail=tail, body=body, head=head, reversed=rev)
