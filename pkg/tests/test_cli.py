import math

import numpy as np
import pytest

from pedalkit.cli import main

ELLIPSE_FILE = (
    'name = "squashed"\n'
    "x = cos(t)\n"
    "y = sin(t)/sqrt(3)\n"
    "t_min = 0\n"
    "t_max = 2*pi\n"
    "samples = 1024\n"
)

GIANT_FILE = (
    "x = 100000000*cos(t)\n"
    "y = 100000000*sin(t)/sqrt(3)\n"
    "t_min = 0\n"
    "t_max = 2*pi\n"
    "samples = 256\n"
)


def test_transform_csv_stdout(capsys):
    rc = main(["transform", "--curve", "ellipse", "--kind", "pedal",
               "--samples", "64"])
    assert rc == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "t,x,y,flag"
    assert len(out) == 65
    t, x, y, flag = out[1].split(",")
    assert (float(t), float(x), float(y), flag) == (0.0, 1.0, 0.0, "ok")


def test_transform_out_and_svg(tmp_path):
    csv = tmp_path / "pedal.csv"
    svg = tmp_path / "pedal.svg"
    rc = main(["transform", "--curve", "ellipse", "--kind", "slant",
               "--angle", str(math.pi / 4), "--samples", "128",
               "--out", str(csv), "--svg", str(svg)])
    assert rc == 0
    assert csv.read_text().startswith("t,x,y,flag\n")
    body = svg.read_text()
    assert body.startswith('<?xml version="1.0"')
    assert body.count("<g data-label") == 2


def test_transform_missing_angle_is_input_error(capsys):
    rc = main(["transform", "--curve", "ellipse", "--kind", "pedaloid"])
    assert rc == 3
    assert "pedalkit: error:" in capsys.readouterr().err


def test_transform_usage_errors_exit_2():
    with pytest.raises(SystemExit) as ei:
        main(["transform", "--curve", "ellipse"])
    assert ei.value.code == 2
    with pytest.raises(SystemExit) as ei:
        main(["frobnicate"])
    assert ei.value.code == 2


def test_detect_golden_primitive_cusps(capsys):
    rc = main(["detect", "--curve", "ellipse", "--what", "primitive-cusps"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    first = lines[0].split("\t")
    assert first[0] == "primitive-cusp"
    assert first[1] == "0.420534335274"
    assert float(first[2]) <= 1e-10
    assert first[3] == "ordinary-cusp"
    ts = [float(ln.split("\t")[1]) for ln in lines]
    t0 = math.atan(1 / math.sqrt(5))
    np.testing.assert_allclose(
        ts, [t0, math.pi - t0, math.pi + t0, 2 * math.pi - t0], atol=1e-9)


def test_detect_vertices_constant_curvature_empty(capsys):
    rc = main(["detect", "--curve", "circle", "--what", "vertices"])
    assert rc == 0
    assert capsys.readouterr().out == ""


def test_detect_writes_file(tmp_path, capsys):
    out = tmp_path / "vertices.tsv"
    rc = main(["detect", "--curve", "ellipse", "--what", "vertices",
               "--out", str(out)])
    assert rc == 0
    rows = out.read_text().splitlines()
    assert len(rows) == 4
    assert all(r.startswith("vertex\t") for r in rows)


def test_verify_pass_and_out(tmp_path, capsys):
    out = tmp_path / "report.txt"
    rc = main(["verify", "--curve", "circle", "--suite", "inversion",
               "--out", str(out)])
    assert rc == 0
    text = capsys.readouterr().out
    assert text.splitlines()[-1] == "=> PASS"
    assert out.read_text() == text


def test_verify_failure_exits_1(tmp_path, capsys):
    # at 1e8 scale the absolute-tolerance rows must fail; that is the
    # honest answer, not a tolerance bug
    f = tmp_path / "giant.curve"
    f.write_text(GIANT_FILE)
    rc = main(["verify", "--curve", str(f), "--suite", "duality"])
    assert rc == 1
    text = capsys.readouterr().out
    assert text.splitlines()[-1] == "=> FAIL"
    assert "pedal commutes with scaling" in text


def test_verify_curve_file_roundtrip(tmp_path, capsys):
    f = tmp_path / "squashed.curve"
    f.write_text(ELLIPSE_FILE)
    rc = main(["verify", "--curve", str(f), "--suite", "oracle"])
    assert rc == 0
    assert "=> PASS" in capsys.readouterr().out


def test_verify_hypothesis_violation_exits_3(capsys):
    rc = main(["verify", "--curve", "front", "--suite", "singularity"])
    assert rc == 3
    assert "pedalkit: error:" in capsys.readouterr().err


def test_unknown_curve_exits_3(capsys):
    rc = main(["transform", "--curve", "lemniscate", "--kind", "pedal"])
    assert rc == 3
    err = capsys.readouterr().err
    assert "neither a file nor a built-in" in err


def test_origin_curve_exits_3(tmp_path, capsys):
    f = tmp_path / "through.curve"
    f.write_text("x = 1 + cos(t)\ny = sin(t)\nt_min = 0\nt_max = 2*pi\n"
                 "samples = 64\n")
    rc = main(["transform", "--curve", str(f), "--kind", "primitive"])
    assert rc == 3
    assert "origin" in capsys.readouterr().err


def test_plot_overlays_and_family(tmp_path):
    svg = tmp_path / "plot.svg"
    rc = main(["plot", "--curve", "ellipse", "--overlay", "source",
               "--overlay", "pedal", "--overlay", "slant:0.9",
               "--family-lines", "16", "--svg", str(svg)])
    assert rc == 0
    body = svg.read_text()
    assert body.count("<g data-label") == 4
    assert 'data-label="family-lines"' in body
    assert body.count("<line ") >= 8


def test_plot_figure_stdout(capsys):
    rc = main(["plot", "--figure", "3"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith('<?xml version="1.0"')
    assert "slant primitivoid" in out


def test_plot_figure_excludes_other_options(capsys):
    rc = main(["plot", "--figure", "2", "--curve", "ellipse"])
    assert rc == 3
    rc = main(["plot", "--figure", "42"])
    assert rc == 3
    rc = main(["plot"])
    assert rc == 3


def test_plot_bad_overlay(capsys):
    rc = main(["plot", "--curve", "ellipse", "--overlay", "evolute"])
    assert rc == 3
    rc = main(["plot", "--curve", "ellipse", "--overlay", "slant:abc"])
    assert rc == 3
