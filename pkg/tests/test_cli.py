from __future__ import annotations

import os
import subprocess
import sys

import pytest

from tilecross.cli import EXIT_INPUT, EXIT_NO, EXIT_OK, EXIT_TIME, main
from tilecross.tcx import parse_tcx, parse_witness, write_tcx
from tilecross.tiles import Tile, cross_tile, join

from conftest import FIXTURES, complete

X = str(FIXTURES / "x.tcx")
TMIN = str(FIXTURES / "tmin.tcx")
AG1 = str(FIXTURES / "ag1.tcx")
K5 = str(FIXTURES / "k5.tcx")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cr(capsys):
    code, out, _ = run(capsys, "cr", K5, "--max-k", "2")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "cr = 1"
    assert "witness" in out
    code, out, _ = run(capsys, "cr", K5, "--max-k", "0")
    assert code == EXIT_NO and out.strip() == "cr > 0"


def test_cr_witness_out(capsys, tmp_path):
    w = tmp_path / "w.txt"
    code, _, _ = run(capsys, "cr", K5, "--max-k", "1", "--witness-out", str(w))
    assert code == EXIT_OK
    assert len(parse_witness(w.read_text()).pairs) == 1


def test_tcr_and_inversions(capsys):
    assert run(capsys, "tcr", X, "--max-k", "1")[:2] == (EXIT_OK, "tcr = 1\nwitness\nx 0 1\n")
    code, out, _ = run(capsys, "tcr", X, "--max-k", "1", "--invert-right")
    assert code == EXIT_OK and out.startswith("tcr = 0")
    code, out, _ = run(capsys, "tcr", X, "--max-k", "1", "--invert-left")
    assert code == EXIT_OK and out.startswith("tcr = 0")
    assert run(capsys, "tcr", X, "--max-k", "0")[0] == EXIT_NO


def test_tcr_flags_exclusive():
    with pytest.raises(SystemExit) as info:
        main(["tcr", X, "--max-k", "1", "--invert-right", "--invert-left"])
    assert info.value.code == EXIT_INPUT


def test_acr(capsys):
    code, out, _ = run(capsys, "acr", AG1, "--max-k", "2")
    assert code == EXIT_OK and out.startswith("acr = 1")
    assert run(capsys, "acr", AG1, "--max-k", "0")[0] == EXIT_NO


def test_wrong_document_kind(capsys):
    code, _, err = run(capsys, "acr", X, "--max-k", "1")
    assert code == EXIT_INPUT and "anchored graph document" in err
    assert run(capsys, "tcr", K5, "--max-k", "1")[0] == EXIT_INPUT


def test_join(capsys, tmp_path):
    out = tmp_path / "j.tcx"
    assert run(capsys, "join", X, X, "-o", str(out))[0] == EXIT_OK
    assert parse_tcx(out.read_text()) == join(cross_tile(), cross_tile())
    code, text, _ = run(capsys, "join", X, X)
    assert code == EXIT_OK and text == out.read_text()


def test_join_mismatch(capsys, tmp_path):
    narrow = tmp_path / "n.tcx"
    narrow.write_text("graph\ne a b\nlwall a\nrwall b\n")
    code, _, err = run(capsys, "join", X, str(narrow))
    assert code == EXIT_INPUT and "wall length mismatch" in err


def test_expand(capsys):
    code, out, _ = run(capsys, "expand", TMIN)
    t = parse_tcx(out)
    assert code == EXIT_OK and isinstance(t, Tile)
    assert len(t.graph.edges) == 10 and all(e.weight == 1 for e in t.graph.edges)


def test_validate_diagsep(capsys, tmp_path):
    code, out, _ = run(capsys, "validate-diagsep", TMIN)
    assert code == EXIT_OK and out.startswith("ok: t=2 w1=1 w2=1")
    light = tmp_path / "light.tcx"
    light.write_text((FIXTURES / "tmin.tcx").read_text().replace("w=2", "w=1"))
    code, out, _ = run(capsys, "validate-diagsep", str(light))
    assert code == EXIT_NO and out.startswith("violation: weight t >= w1*w2 + 1")
    assert run(capsys, "validate-diagsep", K5)[0] == EXIT_INPUT


def test_build_anchored_to_tile(capsys, tmp_path):
    out = tmp_path / "t0.tcx"
    assert run(capsys, "build", "anchored-to-tile", AG1, "-o", str(out))[0] == EXIT_OK
    text = out.read_text()
    assert text.startswith("# t=5 w1=2 w2=2\n")
    assert isinstance(parse_tcx(text), Tile)
    assert run(capsys, "build", "anchored-to-tile", AG1, AG1)[0] == EXIT_INPUT


def test_build_cross_compose(capsys, tmp_path):
    out = tmp_path / "g.tcx"
    assert run(capsys, "build", "cross-compose", "--k", "1", TMIN, TMIN, "-o", str(out))[0] == EXIT_OK
    assert out.read_text().startswith("# k=1 e1=")
    assert run(capsys, "build", "cross-compose", TMIN)[0] == EXIT_INPUT
    assert run(capsys, "build", "cross-compose", "--k", "1", X)[0] == EXIT_INPUT
    assert run(capsys, "build", "cross-compose", "--k", "-1", TMIN)[0] == EXIT_INPUT


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "anchored", "--seed", "1", "--size", "2")
    assert code == EXIT_OK and "anchors" in out
    again = run(capsys, "gen", "anchored", "--seed", "1", "--size", "2")[1]
    assert again == out
    code, out, _ = run(capsys, "gen", "diagsep", "--seed", "7", "--size", "1")
    assert code == EXIT_OK and "lwall" in out
    assert run(capsys, "gen", "anchored", "--seed", "1", "--size", "0")[0] == EXIT_INPUT


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "ex22", "--seed", "1", "--count", "4")
    assert code == EXIT_OK
    assert len(out.splitlines()) == 4 and '"verdict": "pass"' in out
    assert run(capsys, "verify", "ex22", "--count", "-1")[0] == EXIT_INPUT


def test_export(capsys, tmp_path):
    w = tmp_path / "w.txt"
    run(capsys, "tcr", X, "--max-k", "1", "--witness-out", str(w))
    code, out, _ = run(capsys, "export", X, "--witness", str(w), "--format", "dot")
    assert code == EXIT_OK and out.count("shape=square") == 1
    assert run(capsys, "export", X, "--witness", str(tmp_path / "missing"))[0] == EXIT_INPUT
    bad = tmp_path / "bad.txt"
    bad.write_text("witness\nx 0 5\n")
    assert run(capsys, "export", X, "--witness", str(bad))[0] == EXIT_INPUT


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "cr", str(tmp_path / "nope.tcx"), "--max-k", "1")
    assert code == EXIT_INPUT and "nope.tcx" in err
    bad = tmp_path / "bad.tcx"
    bad.write_text("graph\ne a b\nlwall a a\nrwall b\n")
    code, _, err = run(capsys, "tcr", str(bad), "--max-k", "1")
    assert code == EXIT_INPUT and "line 3" in err and "repeated wall vertex" in err
    assert run(capsys, "cr", K5, "--max-k", "-2")[0] == EXIT_INPUT


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_INPUT


def _cli(args, env_extra=None, stdin=None):
    env = dict(os.environ, **(env_extra or {}))
    return subprocess.run(
        [sys.executable, "-m", "tilecross.cli", *args], capture_output=True, text=True, env=env, input=stdin
    )


def test_time_limit_exit_code(tmp_path):
    k7 = tmp_path / "k7.tcx"
    k7.write_text(write_tcx(complete(7)))
    proc = _cli(["cr", str(k7), "--max-k", "20"], {"TILECROSS_TIME_LIMIT_SECS": "0.2"})
    assert proc.returncode == EXIT_TIME
    assert "time limit" in proc.stderr


def test_bad_env_is_input_error():
    proc = _cli(["cr", K5, "--max-k", "1"], {"TILECROSS_THREADS": "many"})
    assert proc.returncode == EXIT_INPUT


def test_stdin_input():
    proc = _cli(["cr", "-", "--max-k", "1"], stdin=(FIXTURES / "k5.tcx").read_text())
    assert proc.returncode == EXIT_OK and proc.stdout.startswith("cr = 1")
