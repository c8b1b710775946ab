"""Character advance-width model feeding the auto-width formulas.

Real font metrics are out of scope; what matters is determinism.  Every
printable ASCII character is half an em wide by default, a control word
counts as one character of default width, braces are free.  A metrics
file can overlay individual characters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterator

from .geometry import Numeric, as_fraction, round_half_away

DEFAULT_CHAR_WIDTH = 50  # centi-em at scale 1.0


def _default_table() -> Dict[str, int]:
    # space measures zero: the box this stands in for is math mode
    table = {chr(c): DEFAULT_CHAR_WIDTH for c in range(32, 127)}
    table[" "] = 0
    return table


class MetricsError(ValueError):
    """Unreadable or malformed metrics file."""


@dataclass
class FontMetrics:
    """Per-character advance widths in centi-em; immutable after load."""

    widths: Dict[str, int] = field(default_factory=_default_table)
    default_width: int = DEFAULT_CHAR_WIDTH

    def char_width(self, ch: str) -> int:
        return self.widths.get(ch, self.default_width)


DEFAULT_METRICS = FontMetrics()


def _tokens(text: str) -> Iterator[str]:
    """Split math text into width-bearing tokens, TeX-style.

    A backslash starts a control word (letters) or control symbol (one
    character); either counts as a single token.
    """
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\\":
            j = i + 1
            while j < n and text[j].isalpha():
                j += 1
            if j == i + 1 and j < n:
                j += 1  # control symbol
            yield text[i:j]
            i = j
        else:
            yield c
            i += 1


def text_width(text: str, scale: Numeric, m: FontMetrics = DEFAULT_METRICS) -> int:
    """Width of math text in centi-em at the given scale.

    Sum of per-character widths, scaled once and rounded to the nearest
    integer (ties away from zero).  Braces contribute nothing; control
    sequences count as one default-width character.
    """
    total = 0
    for tok in _tokens(text):
        if tok in ("{", "}"):
            continue
        if tok.startswith("\\"):
            total += m.default_width
        else:
            total += m.char_width(tok)
    return round_half_away(total * as_fraction(scale))


def load_metrics(path: str) -> FontMetrics:
    """Read tab-separated ``char<TAB>centi-em`` lines over the defaults."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise MetricsError(f"cannot read metrics file {path}: {exc}") from exc
    table = _default_table()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or len(parts[0]) != 1:
            raise MetricsError(
                f"{path}:{lineno}: expected one character, a tab, and a width"
            )
        ch, raw = parts
        try:
            width = int(raw)
        except ValueError:
            raise MetricsError(f"{path}:{lineno}: width {raw!r} is not an integer")
        if width < 0:
            raise MetricsError(f"{path}:{lineno}: width must be non-negative")
        table[ch] = width
    return FontMetrics(widths=table)
