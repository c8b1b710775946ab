"""Backends: SVG structure, token-stream templates, TikZ, IR round-trip."""
import re
from fractions import Fraction

import pytest

from diagc import (
    LayoutError,
    ScaleConfig,
    compile_source,
    decode_style,
    emit_ir,
    merge_duplicate_nodes,
    parse_ir,
    render_figure,
    render_svg,
    render_tikz,
)


def _one(source, **kw):
    figures = compile_source(source, **kw)
    assert len(figures) == 1
    return figures[0]


GEOMETRIC_ATTRS = {
    "x", "y", "x1", "y1", "x2", "y2", "width", "height", "font-size",
    "refX", "refY", "markerWidth", "markerHeight", "stroke-width",
    "viewBox", "stroke-dasharray", "d",
}

_ATTR_RE = re.compile(r'([\w-]+)="([^"]*)"')
_NUM_RE = re.compile(r"-?\d+(?:\.\d+)?")


def geom_numbers(svg):
    """(skeleton, numbers): geometric attribute values masked and listed."""
    numbers = []

    def mask(match):
        name, value = match.group(1), match.group(2)
        if name not in GEOMETRIC_ATTRS:
            return match.group(0)
        numbers.extend(Fraction(v) for v in _NUM_RE.findall(value))
        return f'{name}="{_NUM_RE.sub("#", value)}"'

    return _ATTR_RE.sub(mask, svg), numbers


def test_svg_square_structure():
    svg = render_figure(_one("\\square[A`B`C`D;f`g`h`k]"), "svg")
    assert svg.count('class="node"') == 4
    assert svg.count('marker-end="url') == 4
    assert svg.count('class="label"') == 4
    assert svg.startswith('<?xml version="1.0"')


def test_svg_two_parallel_lines_50_centiem_apart():
    svg = render_figure(_one("\\two"), "svg")
    ys = [Fraction(m) for m in re.findall(r'y1="([-0-9.]+)"', svg)]
    assert len(ys) == 2
    # 50 centi-em at 10pt em, scale 1: 5 px
    assert abs(ys[0] - ys[1]) == Fraction(5)


def test_svg_empty_diagram_errors():
    with pytest.raises(LayoutError, match="empty"):
        render_figure(_one("\\scalefactor{2}"), "svg")


def test_svg_deterministic():
    fig = _one("\\cube[A`B`C`D;f`g`h`k][a`b`c`d;p`q`r`s][w`x`y`z]")
    assert render_figure(fig, "svg") == render_figure(fig, "svg")


def test_svg_raw_style_falls_back_with_warning():
    fig = _one("\\morphism(0,0)|a|/{@{>}@/^1em/}/<500,0>[A`B;f]")
    notes = []
    render_svg(fig.ir, warnings=notes)
    assert notes and "solid" in notes[0]


def test_svg_marker_variants():
    fig = _one(
        "\\square|alrb|/>->`->>`<-`-->/[A`B`C`D;f`g`h`k]\n"
        "\\morphism(0,600)|a|/<-</<500,0>[X`Y;u]\n"
        "\\morphism(0,1200)|a|/<<-/<500,0>[P`Q;v]"
    )
    svg = render_figure(fig, "svg")
    for marker in ("dg-head", "dg-head2", "dg-mono", "dg-rmono", "dg-rhead",
                   "dg-rhead2"):
        assert f'id="{marker}"' in svg, marker
    assert "stroke-dasharray" in svg


def test_svg_double_shaft_and_knockout():
    fig = _one("\\morphism(0,0)|m|/=>/<600,0>[A`B;mid]")
    svg = render_figure(fig, "svg")
    # knocked-out double shaft: two spans x two lines, plus the marker line
    assert svg.count("<line") == 5
    assert svg.count('stroke="none"') == 1


def test_xypic_default_morphism_template():
    out = render_figure(_one("\\morphism[A`B;f]"), "xypic")
    assert out == (
        "\\POS(0,0)*+!!<0ex,.75ex>{A}\\ar@{>}^-{f}"
        " (500,0)*+!!<0ex,.75ex>{B}\n"
    )


def test_xypic_m_placement_empty_label_has_no_modifier():
    out = render_figure(_one("\\morphism(0,0)|m|/>/<500,0>[A`B;]"), "xypic")
    assert out == (
        "\\POS(0,0)*+!!<0ex,.75ex>{A}\\ar@{>}"
        " (500,0)*+!!<0ex,.75ex>{B}\n"
    )


def test_xypic_m_placement_knockout_modifier():
    out = render_figure(_one("\\morphism(0,0)|m|/>/<500,0>[A`B;f]"), "xypic")
    assert "\\ar@{>}|-*+<1pt,4pt>{\\labelstyle f}" in out


def test_xypic_raw_style_passthrough():
    out = render_figure(
        _one("\\morphism(0,0)|a|/{@/^1em/}/<500,0>[A`B;f]"), "xypic"
    )
    assert "\\ar@/^1em/^-{f}" in out


def test_xypic_vector_uses_style_verbatim():
    out = render_figure(_one("\\vector(0,0)/>/<500,0>"), "xypic")
    assert out == "\\POS(0,0)\\ar> (500,0)\n"


def test_xypic_place_lines():
    out = render_figure(_one("\\place(250,250)[X]\n\\place[r](0,0)[Y]"), "xypic")
    assert out == (
        "\\POS(250,250)*+!!<0ex,.75ex>{X}\n"
        "\\POS(0,0)*+!!<0ex,.75ex>!r{Y}\n"
    )


def test_xypic_inline_templates():
    assert render_figure(_one("\\to"), "xypic") == "\\xy\\ar@{>}^{}_{}(200,0) \\endxy\n"
    assert render_figure(_one("\\two"), "xypic") == (
        "\\xy\\ar@{>}@<2.5pt>^{}(200,0)\\ar@{>}@<-2.5pt>_{}(200,0)\\endxy\n"
    )
    assert render_figure(_one("\\three^a|b_c"), "xypic") == (
        "\\xy \\ar@{>}|{b}(300,0) \\ar@{>}@<4.5pt>^{a}(300,0)"
        " \\ar@{>}@<-4.5pt>_{c}(300,0)\\endxy\n"
    )
    assert render_figure(_one("\\twoar(1,1)"), "xypic") == (
        "{\\scalefactor{0.1}\\xy \\ar@{=>}(708,708) \\endxy}\n"
    )


def test_xypic_scale_prefix():
    out = render_figure(_one("\\scalefactor{0.5}\n\\to"), "xypic")
    assert out.splitlines()[0] == "\\scalefactor{1/2}"


def test_xypic_grid_stub_has_empty_free_end():
    out = render_figure(
        _one("\\iiixii{1}<400>[A`B`C`D`E`F;f`g`h`i`j`k`l]"), "xypic"
    )
    assert "\\POS(0,500)*+!!<0ex,.75ex>{}\\ar@{>} (400,500)*+!!<0ex,.75ex>{A}" in out


def test_tikz_square_structure():
    tikz = render_figure(_one("\\square[A`B`C`D;f`g`h`k]"), "tikz")
    assert tikz.count("\\node") == 4
    assert tikz.count("\\draw") == 4
    assert tikz.count("node[") == 4  # labels ride the draws
    assert tikz.startswith("\\begin{tikzpicture}")
    assert tikz.rstrip().endswith("\\end{tikzpicture}")


def test_tikz_style_map():
    fig = _one("\\morphism(0,0)|a|/-->/<500,0>[A`B;f]")
    assert "dashed" in render_figure(fig, "tikz")
    fig = _one("\\morphism(0,0)|a|/=>/<500,0>[A`B;f]")
    assert "double" in render_figure(fig, "tikz")
    notes = []
    fig = _one("\\morphism(0,0)|a|/{@{>}}/<500,0>[A`B;f]")
    render_tikz(fig.ir, warnings=notes)
    assert notes


def test_style_decoding_table():
    assert decode_style(">").head == "normal"
    assert decode_style(" >->").tail == "head"
    assert not decode_style(" >->").reversed
    assert decode_style("<-<").reversed
    assert decode_style("<<-").head == "double"
    assert decode_style("=").body == "double"
    assert decode_style("=").head == "none"
    assert decode_style(".>").body == "dotted"
    assert decode_style("(->").tail == "hook"
    assert decode_style("@/^1em/").is_raw
    assert decode_style("?!?").known is False


def test_ir_round_trip_fixpoint():
    fig = _one(
        "\\square[A`B`C`D;f`g`h`k]\n\\place[l](9,9)[Z]\n\\to^{u}_{v}\n\\twoar(2,1)"
    )
    text = emit_ir(fig.ir)
    again = parse_ir(text)
    assert again == fig.ir
    assert emit_ir(again) == text


def test_ir_emit_stable_across_recompiles():
    src = "\\pullback[A`B`C`D;f`g`h`k][E;p`q`r]\n\\two^{a}_{b}"
    first = emit_ir(_one(src).ir)
    second = emit_ir(_one(src).ir)
    assert first == second


def test_ir_merged_vs_unmerged_differ_only_in_nodes():
    fig = _one("\\square[A`B`C`D;f`g`h`k]")
    assert fig.ir.arrows == fig.raw_ir.arrows
    assert len(fig.ir.nodes) < len(fig.raw_ir.nodes)
    remerged = merge_duplicate_nodes(fig.raw_ir)
    assert remerged == fig.ir


def test_cross_backend_consistency_counts():
    fig = _one("\\pullback[A`B`C`D;f`g`h`k][E;p`q`r]")
    svg = render_figure(fig, "svg")
    tikz = render_figure(fig, "tikz")
    ir_text = render_figure(fig, "ir")
    assert svg.count('class="node"') == 5
    assert tikz.count("\\node") == 5
    assert ir_text.count("\nnode ") == 5
    assert tikz.count("\\draw") == 7
    assert ir_text.count("\narrow ") == 7


def test_svg_scaling_is_exact():
    base_cfg = ScaleConfig()
    double_cfg = ScaleConfig(scale=2)
    src = "\\pullback[A`B`C`D;f`g`h`k][E;p`q`r]"
    svg1 = render_figure(_one(src, cfg=base_cfg), "svg")
    svg2 = render_figure(_one(src, cfg=double_cfg), "svg")
    skeleton1, nums1 = geom_numbers(svg1)
    skeleton2, nums2 = geom_numbers(svg2)
    assert skeleton1 == skeleton2
    assert len(nums1) == len(nums2)
    assert all(b == 2 * a for a, b in zip(nums1, nums2))
