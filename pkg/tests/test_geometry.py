"""Counter arithmetic: ratchet, truncating division, unit conversion."""
import random
from fractions import Fraction

import pytest

from diagc import ScaleConfig, ratchet, tex_div, to_em
from diagc.geometry import as_fraction, format_decimal, pt_to_centiem, round_half_away


def test_ratchet_examples():
    assert ratchet(350, 500) == 500
    assert ratchet(500, 500) == 500
    assert ratchet(715, 500) == 715


def test_ratchet_is_max_brute():
    for a in range(-10, 11):
        for b in range(-10, 11):
            assert ratchet(a, b) == ratchet(b, a) == max(a, b)


def test_tex_div_examples():
    assert tex_div(500 * 4, 6) == 333
    assert tex_div(7, 2) == 3
    assert tex_div(-7, 2) == -3


def test_tex_div_matches_truncation_oracle():
    rng = random.Random(20240501)
    for _ in range(2000):
        a = rng.randint(-10**6, 10**6)
        b = rng.randint(-10**6, 10**6)
        if b == 0:
            continue
        exact = Fraction(a, b)
        truncated = exact.numerator // exact.denominator
        if exact < 0 and exact.denominator != 1:
            truncated += 1
        assert tex_div(a, b) == truncated, (a, b)


def test_tex_div_zero_divisor():
    with pytest.raises(ZeroDivisionError):
        tex_div(1, 0)


def test_to_em_examples():
    assert to_em(500, ScaleConfig()) == 5
    assert to_em(0, ScaleConfig(scale=Fraction(3, 7))) == 0
    assert to_em(1000, ScaleConfig(scale=Fraction(1, 10))) == 1


def test_round_half_away():
    assert round_half_away(Fraction(1, 2)) == 1
    assert round_half_away(Fraction(-1, 2)) == -1
    assert round_half_away(Fraction(129, 4)) == 32  # 32.25
    assert round_half_away(Fraction(3)) == 3


def test_pt_to_centiem():
    ten = Fraction(10)
    assert pt_to_centiem(Fraction(5, 2), ten) == 25
    assert pt_to_centiem(Fraction(-9, 2), ten) == -45
    assert pt_to_centiem(1, Fraction(10)) == 10


def test_as_fraction_decimal_float():
    assert as_fraction(0.7) == Fraction(7, 10)
    assert as_fraction("2") == 2
    assert as_fraction(Fraction(1, 3)) == Fraction(1, 3)


def test_format_decimal_exact():
    assert format_decimal(Fraction(708, 10)) == "70.8"
    assert format_decimal(Fraction(5)) == "5"
    assert format_decimal(Fraction(-1, 8)) == "-0.125"
    assert format_decimal(Fraction(0)) == "0"


def test_scale_config_validation():
    with pytest.raises(ValueError):
        ScaleConfig(scale=0)
    with pytest.raises(ValueError):
        ScaleConfig(label_scale=Fraction(3, 2))
    with pytest.raises(ValueError):
        ScaleConfig(em_size=-1)
