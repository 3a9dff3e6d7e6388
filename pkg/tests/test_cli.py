import csv
import io
import json
import shutil
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from tmcurves.cli import UsageError, main, parse_instruction, parse_translation
from tmcurves.cyclotomic import RootOfUnity as U, root
from tmcurves.turtle import GroupElement

MH = ["--tau0", "1@1", "--tau1", "0@1/6"]
STRAIGHT = ["--tau0", "1@1/6", "--tau1", "1@-1/6"]
PENTAGON = ["--tau0", "1@2/5", "--tau1", "0@1/5"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_instruction_grammar():
    assert parse_instruction("1@1/6") == GroupElement(1, U(6, 1))
    assert parse_instruction("0@1") == GroupElement(0, U(1, 0))
    assert parse_instruction("-1/2@1/2") == GroupElement(Fraction(-1, 2), U(2, 1))
    assert parse_translation("1 + 2*z(3,1) - z(4,-1)") == 1 + 2 * root(3) - root(4, -1)
    assert parse_translation("3/4*z(6,5)") == root(6, 5) * Fraction(3, 4)
    for bad in ("1", "1@x", "@1", "1@1@1", "z(0,1)@1", "2 3@1", "1@1/0"):
        with pytest.raises(UsageError):
            parse_instruction(bad)


def test_seq_listings(capsys):
    code, out, _ = run(capsys, "seq", "--tm", "2", "--len", "28", "--format", "csv")
    assert code == 0
    assert out == "0,1,1,0,1,0,0,1,1,0,0,1,0,1,1,0,1,0,0,1,0,1,1,0,0,1,1,0\n"
    code, out, _ = run(capsys, "seq", "--dekking", "2", "3", "--len", "12")
    row = next(csv.reader(io.StringIO(out)))
    assert row == ["(0,0)", "(1,1)", "(1,2)", "(0,0)", "(1,1)", "(0,2)",
                   "(0,0)", "(1,1)", "(1,2)", "(0,0)", "(0,1)", "(1,2)"]
    code, out, _ = run(capsys, "seq", "--periodic", "3", "--len", "5", "--format", "json")
    assert json.loads(out) == [0, 1, 2, 0, 1]


def test_seq_errors(capsys):
    code, _, err = run(capsys, "seq", "--tm", "1")
    assert code == 2 and "p" in err
    code, _, _ = run(capsys, "seq", "--tm", "2", "--periodic", "3")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["seq", "--tm", "2", "--nonsense"])
    assert exc.value.code == 2


def test_render_svg(capsys, tmp_path):
    out = tmp_path / "koch.svg"
    code, _, _ = run(capsys, "render", "--dekking", "2", "3", "1", "--steps", "64", "--out", str(out))
    assert code == 0
    root_el = ET.parse(out).getroot()
    ns = "{http://www.w3.org/2000/svg}"
    poly = root_el.find(f"{ns}polyline")
    pts = [tuple(map(float, p.split(","))) for p in poly.get("points").split()]
    assert len(pts) == 65
    assert pts[0] == (0, 0) and pts[4] == (300, 0)
    assert pts[2][1] > 0  # the first bump points down in the plane, so its SVG y is positive
    circles = root_el.findall(f"{ns}circle")
    assert [c.get("fill") for c in circles] == ["red", "green"]
    assert (float(circles[1].get("cx")), float(circles[1].get("cy"))) == (2700, 0)  # D(64) = 27


def test_render_is_deterministic(capsys):
    args = ["render", "--tm", "2", *MH, "--steps", "16"]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and a.startswith("<?xml")


def test_render_errors(capsys):
    assert run(capsys, "render", "--tm", "2", *MH, "--steps", "0")[0] == 2
    assert run(capsys, "render", "--tm", "2", "--tau0", "1@q", "--tau1", "0@1", "--steps", "4")[0] == 2
    assert run(capsys, "render", "--tm", "3", *MH, "--steps", "4")[0] == 2
    assert run(capsys, "render", "--dekking", "2", "6", "2", "--steps", "4")[0] == 2


def test_verify_ma_holdener(capsys):
    code, out, _ = run(capsys, "verify", *MH)
    assert code == 0
    assert "D_{2,3,1}" in out and "koch: yes" in out and "FAIL" not in out


def test_verify_json_pentagon_turn(capsys):
    code, out, _ = run(capsys, "verify", *PENTAGON, "--format", "json", "--depth", "200")
    data = json.loads(out)
    assert code == 0 and data["verified"] and data["target"] == "D_{2,5,3}"
    assert data["depth"] == 200 and all(w["passed"] for w in data["witnesses"])


def test_verify_rejection(capsys):
    code, out, err = run(capsys, "verify", *STRAIGHT)
    assert code == 2 and out == "" and "q-is-1" in err


def test_verify_counterexample_exit(capsys, monkeypatch):
    import tmcurves.cli as cli
    from tmcurves.similarity import WitnessReport

    real = cli.certify_main_result

    def broken(*a, **k):
        cert = real(*a, **k)
        bad = WitnessReport(cert.reports[0].witness, cert.n_max, 7)
        return type(cert)(**{**cert.__dict__, "reports": (bad,) + cert.reports[1:]})

    monkeypatch.setattr(cli, "certify_main_result", broken)
    code, out, _ = run(capsys, "verify", *MH, "--depth", "50")
    assert code == 1 and "FAIL at n=7" in out


def test_converge_csv(capsys):
    code, out, _ = run(capsys, "converge", "--dekking", "2", "3", "1", "--n", "6")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 6
    for r in rows:
        assert r["within_bound"] == "true"
        assert float(r["bound"]) == pytest.approx(4 / 3 ** int(r["n"]), rel=1e-8)


def test_converge_against_koch_json(capsys, tmp_path):
    out = tmp_path / "rows.json"
    code, _, _ = run(capsys, "converge", "--dekking", "2", "3", "1", "--n", "6", "--against-koch",
                     "--format", "json", "--out", str(out))
    data = json.loads(out.read_text())
    assert code == 0 and len(data["rows"]) == 6
    assert all(r["koch_agrees"] and r["koch_distance"] <= r["koch_error"] for r in data["rows"])


def test_converge_rejections(capsys):
    code, _, err = run(capsys, "converge", "--dekking", "2", "12", "1")
    assert code == 2 and "gcd" in err
    code, _, err = run(capsys, "converge", "--dekking", "2", "15", "1", "--n", "1")
    assert code == 2 and "not regular" in err and "|r|" in err
    code, _, err = run(capsys, "--segment-cap", "100", "converge", "--dekking", "2", "3", "1")
    assert code == 2 and "cap" in err


def test_converge_is_deterministic(capsys):
    args = ["converge", "--dekking", "3", "2", "1", "--n", "4", "--format", "json"]
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


@pytest.mark.skipif(shutil.which("tmcurves") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["tmcurves", "seq", "--tm", "3", "--len", "6"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "0,1,2,1,2,0\n"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tmcurves.cli", "seq", "--tm", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 2


def test_segment_cap_override_is_scoped(capsys, monkeypatch):
    monkeypatch.delenv("TMCURVES_SEGMENT_CAP", raising=False)
    run(capsys, "--segment-cap", "5", "seq", "--tm", "2", "--len", "3")
    import os
    assert "TMCURVES_SEGMENT_CAP" not in os.environ
