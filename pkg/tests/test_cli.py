"""The binoc command line: subcommands, documents and exit codes."""

import json
import subprocess
import sys

import pytest

from binoc import ideal_equal
from binoc.cli import run_command

from conftest import R

TWOSOC = "ring x y\nchar 0\nideal\nx^2*y - x*y^2, x^3, y^3\n"
DIAG = "ring x y\nchar 0\nideal\nx^2 - x*y, x*y - y^2, x^3\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {"twosoc": TWOSOC, "diag": DIAG, "unit": "ring x y; char 0; ideal x*y - x, x^2",
                       "bad": "ring x y; char 0; ideal x^", "three": "ring x y z; char 0; ideal x, y, z"}.items():
        p = tmp_path / f"{name}.ideal"
        p.write_text(text)
        out[name] = str(p)
    out["dir"] = tmp_path
    return out


def test_decompose_then_verify(files, capsys):
    doc = files["dir"] / "out.json"
    assert run_command(["decompose", files["twosoc"], "--mode", "irreducible", "--prune", "-o", str(doc)]) == 0
    data = json.loads(doc.read_text())
    assert data["certificate"]["verdict"] is True
    assert data["certificate"]["intersection"]["criterion"] == "gb-intersection"
    gens = [c["generators"] for c in data["components"]]
    assert len(gens) == 2
    assert any(ideal_equal(R(", ".join(g)), R("x^2 + y^2 - x*y, x^3, y^3")) for g in gens)
    assert run_command(["verify", str(doc), "--criterion", "both"]) == 0


@pytest.mark.parametrize("mode", ["coprincipal", "soccular", "binoccular", "irreducible"])
def test_every_mode_round_trips(files, mode):
    doc = files["dir"] / f"{mode}.json"
    assert run_command(["decompose", files["diag"], "--mode", mode, "-o", str(doc), "--jobs", "2"]) == 0
    if mode != "soccular":
        assert run_command(["verify", str(doc)]) == 0


def test_output_order_is_deterministic(files):
    a, b = files["dir"] / "a.json", files["dir"] / "b.json"
    run_command(["decompose", files["twosoc"], "--jobs", "1", "-o", str(a)])
    run_command(["decompose", files["twosoc"], "--jobs", "4", "-o", str(b)])
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    assert da["components"] == db["components"]


def test_tampered_document_fails(files):
    doc = files["dir"] / "t.json"
    run_command(["decompose", files["twosoc"], "--mode", "irreducible", "--prune", "-o", str(doc)])
    data = json.loads(doc.read_text())
    data["components"] = data["components"][:1]
    doc.write_text(json.dumps(data))
    assert run_command(["verify", str(doc)]) == 2


def test_closure_binoccular(files, capsys):
    assert run_command(["closure", files["diag"], "--kind", "binoccular"]) == 0
    out = capsys.readouterr().out
    gens = [line.strip().rstrip(",") for line in out.splitlines() if line.strip()]
    text = ", ".join(g for g in gens if not g.startswith(("#", "ring", "char", "ideal")))
    assert ideal_equal(R(text), R("x - y, y^3"))


def test_exit_codes(files, capsys):
    assert run_command(["decompose", files["unit"]]) == 3
    assert "UnsupportedUnitRank" in capsys.readouterr().err
    assert run_command(["decompose", files["bad"]]) == 4
    assert "column" in capsys.readouterr().err
    assert run_command(["render", files["three"]]) == 3
    assert run_command(["decompose", str(files["dir"] / "missing.ideal")]) == 4
    assert run_command(["frobnicate"]) == 4


def test_witnesses_socle_congruence(files, capsys):
    assert run_command(["witnesses", files["diag"], "--kind", "key"]) == 0
    out = capsys.readouterr().out
    assert "x" in out and "y" in out
    assert run_command(["socle", files["twosoc"]]) == 0
    out = capsys.readouterr().out
    assert "x^2 - x*y + y^2" in out
    assert run_command(["congruence", files["twosoc"]]) == 0
    assert "coprincipal" in capsys.readouterr().out


def test_render_is_byte_identical(files, capsys):
    assert run_command(["render", files["twosoc"], "--format", "svg"]) == 0
    a = capsys.readouterr().out
    assert run_command(["render", files["twosoc"], "--format", "svg"]) == 0
    assert capsys.readouterr().out == a
    assert a.startswith("<?xml")


def test_console_script(files):
    proc = subprocess.run(
        [sys.executable, "-m", "binoc.cli", "render", files["twosoc"]], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "#" in proc.stdout
