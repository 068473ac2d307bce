import json
import subprocess
import sys

import numpy as np
import pytest

from homenhance import GrayImage, read_pgm, write_pgm
from homenhance.cli import main
from conftest import ramp_image, skewed_image


@pytest.fixture
def files(tmp_path):
    paths = {
        "ramp": tmp_path / "ramp.pgm",
        "ramp2": tmp_path / "ramp_p2.pgm",
        "skewed": tmp_path / "skewed.pgm",
        "constant": tmp_path / "constant.pgm",
        "pair": tmp_path / "pair.pgm",
    }
    paths["ramp"].write_bytes(write_pgm(ramp_image(), "P5"))
    paths["ramp2"].write_bytes(write_pgm(ramp_image(), "P2"))
    paths["skewed"].write_bytes(write_pgm(skewed_image(), "P5"))
    paths["constant"].write_bytes(write_pgm(GrayImage(3, 3, 255, np.full(9, 9)), "P5"))
    paths["pair"].write_bytes(write_pgm(GrayImage(2, 1, 255, [0, 255]), "P2"))
    return paths


def test_enhance_ramp(files, tmp_path, capsys):
    out = tmp_path / "out.pgm"
    report = tmp_path / "report.json"
    assert main(["enhance", str(files["ramp"]), str(out), "--report", str(report)]) == 0
    img = read_pgm(out.read_bytes())
    assert out.read_bytes().startswith(b"P5")
    assert np.max(np.abs(img.samples.astype(int) - np.arange(256))) <= 2
    data = json.loads(report.read_text())
    assert data["gamma"] == pytest.approx(1.0, abs=0.02)
    assert data["converged"] is True
    stdout = capsys.readouterr().out
    assert f"gamma={data['gamma']:.17g}" in stdout
    assert "c1=" in stdout and "alpha2=" in stdout


def test_enhance_keeps_input_format(files, tmp_path):
    out = tmp_path / "out.pgm"
    assert main(["enhance", str(files["ramp2"]), str(out)]) == 0
    assert out.read_bytes().startswith(b"P2")
    assert main(["enhance", str(files["ramp2"]), str(out), "--format", "p5"]) == 0
    assert out.read_bytes().startswith(b"P5")


def test_enhance_constant_exit_3(files, tmp_path, capsys):
    assert main(["enhance", str(files["constant"]), str(tmp_path / "o.pgm")]) == 3
    captured = capsys.readouterr()
    assert "ConstantImage" in captured.err and captured.out == ""
    assert len(captured.err.strip().splitlines()) == 1


def test_missing_file_exit_2(tmp_path, capsys):
    assert main(["enhance", str(tmp_path / "nope.pgm"), str(tmp_path / "o.pgm")]) == 2
    assert capsys.readouterr().out == ""


def test_bad_format_exit_2(tmp_path):
    bad = tmp_path / "bad.pgm"
    bad.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
    assert main(["analyze", str(bad)]) == 2


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["enhance"], ["analyze", "x.pgm", "--epsilon", "-1"],
     ["analyze", "x.pgm", "--targets", "0,0.5,0.4,1"], ["analyze", "x.pgm", "--targets", "1,2"]],
)
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1
    assert capsys.readouterr().out == ""


def test_analyze(files, capsys):
    assert main(["analyze", str(files["ramp"])]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["converged"] is True and "histogram_before" not in data
    assert main(["analyze", str(files["ramp"]), "--full"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["histogram_before"]) == 256


def test_analyze_targets_echoed(files, capsys):
    assert main(["analyze", str(files["skewed"]), "--targets", "0,0.25,0.5,1"]) == 0
    out = capsys.readouterr().out
    assert '"g1": 0,' in out and '"gc1": 0.25,' in out and '"gc2": 0.5,' in out and '"g2": 1,' in out


def test_analyze_constant_exit_3(files):
    assert main(["analyze", str(files["constant"])]) == 3


def test_curve_csv_and_svg(files, tmp_path):
    out = tmp_path / "curve.csv"
    assert main(["curve", str(files["ramp"]), str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,g" and lines[1] == "0,0" and lines[-1] == "1,1"
    svg = tmp_path / "curve.svg"
    assert main(["curve", str(files["ramp"]), str(svg)]) == 0
    assert svg.read_text().count("<circle") == 4


def test_histogram_original_and_enhanced(files, tmp_path):
    out = tmp_path / "h.csv"
    assert main(["histogram", str(files["pair"]), str(out)]) == 0
    lines = out.read_text().splitlines()
    assert "0,1" in lines and "255,1" in lines
    assert main(["histogram", str(files["skewed"]), str(out), "--which", "enhanced"]) == 0
    counts = [int(l.split(",")[1]) for l in out.read_text().splitlines()[1:]]
    assert sum(counts) == 256
    svg = tmp_path / "h.svg"
    assert main(["histogram", str(files["skewed"]), str(svg), "--format", "svg"]) == 0
    assert svg.read_text().startswith("<?xml")


def test_enhance_twice_byte_identical(files, tmp_path):
    a, b = tmp_path / "a.pgm", tmp_path / "b.pgm"
    ra, rb = tmp_path / "a.json", tmp_path / "b.json"
    main(["enhance", str(files["skewed"]), str(a), "--report", str(ra)])
    main(["enhance", str(files["skewed"]), str(b), "--report", str(rb)])
    assert a.read_bytes() == b.read_bytes() and ra.read_bytes() == rb.read_bytes()


def test_module_entry_point(files, tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "homenhance", "enhance", str(files["constant"]), str(tmp_path / "o.pgm")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 3 and "ConstantImage" in proc.stderr and proc.stdout == ""
