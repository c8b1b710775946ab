"""Grammar: optional sections, payload splitting, round-trips, arity."""
import pytest

from diagc import ParseError, Point, format_command, parse_command, parse_payload, parse_source


def test_square_defaults():
    cmd = parse_command("\\square[A`B`C`D;f`g`h`k]")
    assert cmd.kind == "square"
    assert cmd.origin == Point(0, 0)
    assert cmd.placements == "alrb"
    assert cmd.styles == (">", ">", ">", ">")
    assert cmd.extent == (500, 500)
    assert cmd.nodes == ("A", "B", "C", "D")
    assert cmd.labels == ("f", "g", "h", "k")


def test_morphism_raw_style_stays_atomic():
    cmd = parse_command("\\morphism(0,0)|a|/{@{>}@/^1em/}/<500,0>[A`B;f]")
    assert cmd.styles == ("@{>}@/^1em/",)
    assert cmd.extent == (500, 0)


def test_bare_inline_to():
    cmd = parse_command("\\to")
    assert cmd.kind == "to"
    assert cmd.styles == (">",)
    assert cmd.length == 0
    assert cmd.labels == ("", "")


def test_inline_scripts():
    cmd = parse_command("\\to^{f}_{g}")
    assert cmd.labels == ("f", "g")
    cmd = parse_command("\\two/->`->/")
    assert cmd.styles == ("->", "->")
    cmd = parse_command("\\three<600>^a|b_c")
    assert cmd.length == 600
    assert cmd.labels == ("a", "b", "c")


def test_inline_spaced_style_token():
    cmd = parse_command("\\to/ >->/")
    assert cmd.styles == (" >->",)


def test_payload_splitting():
    assert parse_payload("[A`B;f]") == (["A", "B"], ["f"])
    assert parse_payload("[A`B;{f`g}]") == (["A", "B"], ["f`g"])
    assert parse_payload("[``;]") == (["", "", ""], [""])


def test_payload_brace_stripping_one_level():
    nodes, labels = parse_payload("[{{A}}`B;{f;g}]")
    assert nodes == ["{A}", "B"]
    assert labels == ["f;g"]


def test_payload_control_symbols_are_atomic():
    nodes, labels = parse_payload(r"[{\{a\}}`B;{f\`g}]")
    assert nodes == [r"\{a\}", "B"]
    assert labels == [r"f\`g"]


def test_payload_unbalanced_braces():
    with pytest.raises(ParseError):
        parse_payload("[{A`B;f]")


def test_place_variants():
    cmd = parse_command("\\place(250,250)[X]")
    assert (cmd.origin, cmd.align, cmd.nodes) == (Point(250, 250), "", ("X",))
    cmd = parse_command("\\place[r](0,0)[Y]")
    assert cmd.align == "r"
    with pytest.raises(ParseError, match="alignment"):
        parse_command("\\place[z](0,0)[Y]")


def test_vector_sections_required():
    cmd = parse_command("\\vector(100,100)/<-/<0,400>")
    assert cmd.origin == Point(100, 100)
    assert cmd.styles == ("<-",)
    assert cmd.extent == (0, 400)
    with pytest.raises(ParseError):
        parse_command("\\vector(0,0)<500,0>")


def test_grid_mask_and_stub_sections():
    src = "\\iiixii" + "[A`B`C`D`E`F;f`g`h`i`j`k`l]"
    cmd = parse_command(src)
    assert (cmd.mask, cmd.stub) == (0, (0,))
    cmd = parse_command("\\iiixii{5}<400>[A`B`C`D`E`F;f`g`h`i`j`k`l]")
    assert (cmd.mask, cmd.stub) == (5, (400,))
    cmd = parse_command("\\iiixii7[A`B`C`D`E`F;f`g`h`i`j`k`l]")
    assert (cmd.mask, cmd.stub) == (7, (0,))
    nine = "[A`B`C`D`E`F`G`H`I;f`g`h`i`j`k`l`m`n`o`p`q]"
    cmd = parse_command("\\iiixiii{2048}" + nine)
    assert (cmd.mask, cmd.stub) == (2048, (400, 400))
    cmd = parse_command("\\iiixiii" + nine)
    assert (cmd.mask, cmd.stub) == (0, (0, 0))
    with pytest.raises(ParseError, match="mask"):
        parse_command("\\iiixiii{4096}" + nine)


def test_cube_and_pullback_sections():
    cmd = parse_command("\\cube[A`B`C`D;f`g`h`k][a`b`c`d;p`q`r`s][w`x`y`z]")
    assert cmd.extent == (1500, 1500)
    assert cmd.inner.origin == Point(500, 500)
    assert cmd.inner.extent == (500, 500)
    assert cmd.conn_placements == "mmmm"
    assert cmd.conn_labels == ("w", "x", "y", "z")
    cmd = parse_command("\\pullback[A`B`C`D;f`g`h`k][E;p`q`r]")
    assert cmd.trident.placements == "amb"
    assert cmd.trident.styles == (">", ">", ">")
    assert cmd.trident.offset == (500, 500)
    assert cmd.trident.node == "E"


def test_whitespace_between_sections_is_free():
    tight = parse_command("\\square(0,0)|alrb|/>`>`>`>/<500,500>[A`B`C`D;f`g`h`k]")
    airy = parse_command(
        "\\square (0,0)\n  |alrb|  % placements\n />`>`>`>/ <500,500>\n [A`B`C`D;f`g`h`k]"
    )
    assert tight == airy


def test_comment_suppresses_newline_inside_payload():
    cmd = parse_command("\\morphism[A%x\nB`C;f]")
    assert cmd.nodes == ("AB", "C")
    cmd = parse_command("\\morphism[A %x\nB`C;f]")
    assert cmd.nodes == ("A B", "C")


def test_arity_mutations_raise():
    good = "\\square[A`B`C`D;f`g`h`k]"
    assert parse_command(good)
    with pytest.raises(ParseError, match="node field"):
        parse_command("\\square[A`B`C;f`g`h`k]")
    with pytest.raises(ParseError, match="node field"):
        parse_command("\\square[A`B`C`D`E;f`g`h`k]")
    with pytest.raises(ParseError, match="label field"):
        parse_command("\\square[A`B`C`D;f`g`h`k`x]")
    with pytest.raises(ParseError, match="label field"):
        parse_command("\\morphism[A`B;f`g]")


def test_errors_carry_position():
    with pytest.raises(ParseError) as info:
        parse_source("\\square[A`B`C`D;f`g`h`k]\n\\bogus", "ex.dg")
    diag = info.value.diagnostic
    assert (diag.filename, diag.line, diag.col) == ("ex.dg", 2, 1)
    with pytest.raises(ParseError, match="end of input"):
        parse_command("\\square[A`B")


def test_figure_blocks():
    figs = parse_source("\\bfig \\to \\efig \\bfig \\two \\efig")
    assert [f.explicit for f in figs] == [True, True]
    figs = parse_source("\\to \\bfig \\two \\efig")
    assert [f.explicit for f in figs] == [True, False]
    assert figs[1].commands[0].kind == "to"
    with pytest.raises(ParseError, match="efig"):
        parse_source("\\bfig \\to")
    with pytest.raises(ParseError, match="without"):
        parse_source("\\efig")
    with pytest.raises(ParseError, match="nested"):
        parse_source("\\bfig \\bfig")


ROUND_TRIP_SOURCES = [
    "\\morphism[A`B;f]",
    "\\morphism(30,-40)|m|/ >->/<0,-700>[{A`B}`C;{f;g}]",
    "\\morphism(0,0)||/{@{>}@/^1em/}/<500,0>[A`B;f]",
    "\\vector(0,0)/>/<500,0>",
    "\\place[l](10,20)[X]",
    "\\square(1,2)|mrab|/->`>->`<-`-->/<700,300>[A`B`C`D;f`g`h`k]",
    "\\Square[A`B`C`D;f`morphism`h`k]",
    "\\ptriangle[A`B`C;f`g`h]",
    "\\Dtriangle(5,5)|bar|/=`=>`.>/<600,400>[A`B`C;f`g`h]",
    "\\Ctrianglepair[A`B`C`D;f`g`h`i`j]",
    "\\hSquares[A`B`C`D`E`F;f`g`h`i`j`k`l]",
    "\\vSquares(0,0)|alrmlrb|/>`>`>`>`>`>`>/<300,700>[A`B`C`D`E`F;f`g`h`i`j`k`l]",
    "\\cube[A`B`C`D;f`g`h`k](400,400)|alrb|/>`>`>`>/<600,600>[a`b`c`d;p`q`r`s]|mmam|/>`<-`>`>/[w`x`y`z]",
    "\\pullback(0,0)|alrb|/>`>`>`>/<600,400>[A`B`C`D;f`g`h`k]|amb|/>`>`>/<200,300>[E;p`q`r]",
    "\\iiixiii{2730}<350,450>[A`B`C`D`E`F`G`H`I;f`g`h`i`j`k`l`m`n`o`p`q]",
    "\\iiixii{15}<400>[A`B`C`D`E`F;f`g`h`i`j`k`l]",
    "\\to/ >->/<0>^{fg}_{}",
    "\\two/->`->/<250>^{a}_{b}",
    "\\three/>`>`>/<0>^{a}|{b}_{c}",
    "\\twoar(-3,2)",
    "\\scalefactor{1/2}",
]


@pytest.mark.parametrize("source", ROUND_TRIP_SOURCES)
def test_pretty_print_reparse_fixpoint(source):
    cmd = parse_command(source)
    printed = format_command(cmd)
    again = parse_command(printed)
    assert again == cmd
    assert format_command(again) == printed


def test_more_whitespace_between_sections():
    pairs = [
        ("\\iiixii {5} <400> [A`B`C`D`E`F;f`g`h`i`j`k`l]",
         "\\iiixii{5}<400>[A`B`C`D`E`F;f`g`h`i`j`k`l]"),
        ("\\to /<-/ <250> ^{a} _{b}", "\\to/<-/<250>^{a}_{b}"),
        ("\\pullback [A`B`C`D;f`g`h`k] |amb| /{>}`{>}`{>}/ <500,500> [E;p`q`r]",
         "\\pullback[A`B`C`D;f`g`h`k]|amb|/{>}`{>}`{>}/<500,500>[E;p`q`r]"),
        ("\\cube [A`B`C`D;f`g`h`k]\n[a`b`c`d;p`q`r`s]\n[w`x`y`z]",
         "\\cube[A`B`C`D;f`g`h`k][a`b`c`d;p`q`r`s][w`x`y`z]"),
    ]
    for airy, tight in pairs:
        assert parse_command(airy) == parse_command(tight)
