"""Command-line behavior: outputs, exit codes, golden checks."""
import os

from diagc.cli import main

GOOD = "\\bfig\n\\square[A`B`C`D;f`g`h`k]\n\\efig\n"
ARITY_BAD = "\\square[A`B`C;f`g`h`k]\n"
WARNING_SOURCE = "\\morphism(0,0)|x|/>/<500,0>[A`B;f]\n"


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_happy_path_writes_svg(tmp_path, capsys):
    src = _write(tmp_path, "ex.dg", GOOD)
    out = tmp_path / "out"
    assert main([str(src), "--format", "svg", "-o", str(out) + os.sep]) == 0
    produced = out / "ex.svg"
    assert produced.is_file()
    assert produced.read_text(encoding="utf-8").startswith("<?xml")
    assert capsys.readouterr().err == ""


def test_default_output_next_to_input(tmp_path):
    src = _write(tmp_path, "ex.dg", GOOD)
    assert main([str(src), "--format", "tikz"]) == 0
    assert (tmp_path / "ex.tex").is_file()


def test_single_file_output(tmp_path):
    src = _write(tmp_path, "ex.dg", GOOD)
    dest = tmp_path / "picture.svg"
    assert main([str(src), "-o", str(dest)]) == 0
    assert dest.is_file()


def test_arity_error_exits_2_and_writes_nothing(tmp_path, capsys):
    src = _write(tmp_path, "bad.dg", ARITY_BAD)
    out = tmp_path / "out"
    assert main([str(src), "-o", str(out) + os.sep]) == 2
    err = capsys.readouterr().err
    assert "bad.dg:1:" in err and "node field" in err
    assert not (out / "bad.svg").exists()


def test_strict_promotes_warnings(tmp_path, capsys):
    src = _write(tmp_path, "warn.dg", WARNING_SOURCE)
    out = tmp_path / "out"
    assert main([str(src), "-o", str(out) + os.sep]) == 0
    assert "warning" in capsys.readouterr().err
    assert main([str(src), "--strict", "-o", str(out) + os.sep]) == 1


def test_multiple_figures_get_suffixes(tmp_path):
    src = _write(tmp_path, "multi.dg", GOOD + GOOD)
    out = tmp_path / "out"
    assert main([str(src), "--format", "xypic", "-o", str(out) + os.sep]) == 0
    assert (out / "multi-1.xy").is_file()
    assert (out / "multi-2.xy").is_file()


def test_single_file_output_rejected_for_many(tmp_path, capsys):
    src = _write(tmp_path, "multi.dg", GOOD + GOOD)
    dest = tmp_path / "one.svg"
    assert main([str(src), "-o", str(dest)]) == 2
    assert "directory" in capsys.readouterr().err


def test_check_mode(tmp_path, capsys):
    src = _write(tmp_path, "ex.dg", GOOD)
    golden_dir = tmp_path / "golden"
    out = tmp_path / "out"
    assert main([str(src), "--format", "xypic", "-o", str(out) + os.sep]) == 0
    golden_dir.mkdir()
    (golden_dir / "ex.xy").write_text(
        (out / "ex.xy").read_text(encoding="utf-8"), encoding="utf-8"
    )
    assert main([str(src), "--format", "xypic", "--check", str(golden_dir)]) == 0
    (golden_dir / "ex.xy").write_text("nonsense\n", encoding="utf-8")
    assert main([str(src), "--format", "xypic", "--check", str(golden_dir)]) == 1
    assert "mismatch" in capsys.readouterr().err


def test_check_mode_missing_golden(tmp_path, capsys):
    src = _write(tmp_path, "ex.dg", GOOD)
    golden_dir = tmp_path / "golden"
    golden_dir.mkdir()
    assert main([str(src), "--format", "xypic", "--check", str(golden_dir)]) == 1
    assert "missing golden" in capsys.readouterr().err


def test_missing_input_is_an_error(tmp_path, capsys):
    assert main([str(tmp_path / "absent.dg")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_metrics_flag_and_env(tmp_path, monkeypatch):
    src = _write(tmp_path, "ex.dg", "\\Square[A`B`C`D;f`g`h`k]\n")
    wide = _write(tmp_path, "wide.tsv", "f\t2000\n")
    out1 = tmp_path / "o1"
    out2 = tmp_path / "o2"
    assert main([str(src), "--format", "ir", "-o", str(out1) + os.sep]) == 0
    assert main([
        str(src), "--format", "ir", "--metrics", str(wide), "-o", str(out2) + os.sep,
    ]) == 0
    narrow = (out1 / "ex.ir").read_text(encoding="utf-8")
    widened = (out2 / "ex.ir").read_text(encoding="utf-8")
    assert narrow != widened and "x=1800" in widened
    out3 = tmp_path / "o3"
    monkeypatch.setenv("DIAGC_METRICS", str(wide))
    assert main([str(src), "--format", "ir", "-o", str(out3) + os.sep]) == 0
    assert (out3 / "ex.ir").read_text(encoding="utf-8") == widened


def test_bad_metrics_file(tmp_path, capsys):
    src = _write(tmp_path, "ex.dg", GOOD)
    bad = _write(tmp_path, "bad.tsv", "f\tx\n")
    assert main([str(src), "--metrics", str(bad)]) == 2
    assert "bad.tsv" in capsys.readouterr().err


def test_scale_flag_scales_svg(tmp_path):
    src = _write(tmp_path, "ex.dg", GOOD)
    out = tmp_path / "out"
    assert main([str(src), "--scale", "1", "-o", str(out) + os.sep]) == 0
    one = (out / "ex.svg").read_text(encoding="utf-8")
    assert main([str(src), "--scale", "2", "-o", str(out) + os.sep]) == 0
    two = (out / "ex.svg").read_text(encoding="utf-8")
    from test_render import geom_numbers

    sk1, n1 = geom_numbers(one)
    sk2, n2 = geom_numbers(two)
    assert sk1 == sk2
    assert all(b == 2 * a for a, b in zip(n1, n2))


def test_bad_scale_flag(tmp_path, capsys):
    src = _write(tmp_path, "ex.dg", GOOD)
    assert main([str(src), "--scale", "0"]) == 2
    assert "scale" in capsys.readouterr().err


def test_error_in_one_input_does_not_block_others(tmp_path, capsys):
    good = _write(tmp_path, "good.dg", GOOD)
    bad = _write(tmp_path, "bad.dg", ARITY_BAD)
    out = tmp_path / "out"
    assert main([str(bad), str(good), "-o", str(out) + os.sep]) == 2
    assert (out / "good.svg").is_file()
    assert not (out / "bad.svg").exists()


def test_no_partial_file_left_behind(tmp_path):
    src = _write(tmp_path, "ex.dg", GOOD)
    out = tmp_path / "out"
    assert main([str(src), "-o", str(out) + os.sep]) == 0
    leftovers = [p for p in out.iterdir() if p.suffix != ".svg"]
    assert leftovers == []
