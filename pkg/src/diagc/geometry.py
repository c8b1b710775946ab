"""Integer geometry in centi-em units with TeX counter semantics.

All diagram coordinates are signed integers measured in centi-em
(0.01 em), the native unit of the command language.  Arithmetic here is
exact; conversion to physical lengths happens only at render time,
through ScaleConfig, so diagrams expand identically at every scale.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

Numeric = Union[int, float, str, Fraction]

DEFAULT_LEN = 500      # default edge length / displacement, centi-em
DEFAULT_MARGIN = 150   # margin added to measured inline-arrow labels


class Point(NamedTuple):
    """Integer position, y increasing upward."""

    x: int
    y: int

    def shifted(self, dx: int, dy: int) -> "Point":
        return Point(self.x + dx, self.y + dy)


def ratchet(a: int, b: int) -> int:
    """Return max(a, b): raise a to b when it falls short."""
    return b if a < b else a


def tex_div(a: int, b: int) -> int:
    """Integer quotient truncated toward zero (TeX \\divide semantics).

    Python's // floors, which differs for negative operands.
    """
    if b == 0:
        raise ZeroDivisionError("division by zero in coordinate arithmetic")
    q = abs(a) // abs(b)
    return -q if (a < 0) != (b < 0) else q


def as_fraction(value: Numeric) -> Fraction:
    """Exact Fraction from common numeric spellings.

    Floats go through their decimal representation so 0.7 means 7/10,
    not the nearest binary double.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(str(value).strip())


def round_half_away(x: Fraction) -> int:
    """Round to nearest integer, ties away from zero."""
    x = as_fraction(x)
    n = (2 * abs(x.numerator) + x.denominator) // (2 * x.denominator)
    return -n if x.numerator < 0 else n


def pt_to_centiem(pt: Numeric, em_size: Fraction) -> int:
    """Convert printer's points to centi-em (1 em = em_size pt)."""
    return round_half_away(as_fraction(pt) * 100 / em_size)


@dataclass(frozen=True)
class ScaleConfig:
    """Render-time unit configuration.

    scale multiplies every physical length; em_size is points per em;
    label text is set at label_scale of the node size; object_margin
    (centi-em) pads node boxes before arrows are clipped against them.
    """

    scale: Fraction = Fraction(1)
    em_size: Fraction = Fraction(10)
    ex_ratio: Fraction = Fraction(43, 100)
    label_scale: Fraction = Fraction(7, 10)
    object_margin: int = 30

    def __post_init__(self) -> None:
        object.__setattr__(self, "scale", as_fraction(self.scale))
        object.__setattr__(self, "em_size", as_fraction(self.em_size))
        object.__setattr__(self, "ex_ratio", as_fraction(self.ex_ratio))
        object.__setattr__(self, "label_scale", as_fraction(self.label_scale))
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.em_size <= 0:
            raise ValueError("em size must be positive")
        if not 0 < self.label_scale <= 1:
            raise ValueError("label scale must be in (0, 1]")


def to_em(length: int, cfg: ScaleConfig) -> Fraction:
    """Physical length in em: length x 0.01 em x cfg.scale."""
    return Fraction(length) * cfg.scale / 100


def format_decimal(x: Fraction) -> str:
    """Exact, minimal decimal rendering of a Fraction.

    Only denominators of the form 2^a * 5^b occur in render output; any
    other denominator falls back to six rounded places.
    """
    x = as_fraction(x)
    num, den = x.numerator, x.denominator
    shift = 0
    d = den
    for p in (2, 5):
        while d % p == 0:
            d //= p
            shift += 1
    if d != 1:
        return f"{float(x):.6f}".rstrip("0").rstrip(".")
    scaled = num * 10**shift // den if shift else num
    # scaled / 10^shift is exact; trim trailing zeros from the fraction part
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(shift + 1, "0")
    if shift:
        whole, frac = digits[:-shift], digits[-shift:]
        frac = frac.rstrip("0")
        return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"
    return f"{sign}{digits}"
