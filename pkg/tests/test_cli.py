import io
import json
import subprocess
import sys

import pytest

from projtab.cli import main

from conftest import CHIRAL_6, PATH_8, TREFOIL


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(l) for l in out.splitlines()], err


def test_canon_is_deterministic(capsys):
    a = run(capsys, "canon", "+1 +2 +3 -1 -2 -3")
    b = run(capsys, "canon", "+1 +2 +3 -1 -2 -3")
    assert a == b
    assert a[0] == 0
    assert a[1][0]["key"] == "canon:+1 +2 +3 -1 -2 -3"


def test_mirror(capsys):
    code, rows, _ = run(capsys, "mirror", TREFOIL, CHIRAL_6)
    assert code == 0
    assert rows[0] == {"input": TREFOIL, "mirror": "-1 +2 -3 +1 -2 +3", "amphichiral": True}
    assert rows[1]["amphichiral"] is False


def test_realizable(capsys):
    code, rows, _ = run(capsys, "realizable", TREFOIL, "+1 +2 +3 -1 -2 -3")
    assert code == 0
    assert rows[0] == {"input": TREFOIL, "realizable": True, "faces": 5, "genus": 0}
    assert rows[1]["realizable"] is False and rows[1]["faces"] == 3


def test_prime(capsys):
    code, rows, _ = run(capsys, "prime", TREFOIL, "+1 -1 +2 -2")
    assert rows[0]["prime"] is True and rows[0]["witness"] is None
    assert rows[1]["prime"] is False and rows[1]["witness"]["arc"] == [0, 2]


def test_stdin_stream_with_parse_error(capsys, monkeypatch):
    code, rows, err = run(capsys, "canon", stdin=f"# comment\n{TREFOIL}\n+1 +1\n\n{CHIRAL_6}\n", monkeypatch=monkeypatch)
    assert code == 1
    assert len(rows) == 2
    assert "line 3" in err


def test_flype_sites(capsys):
    code, rows, _ = run(capsys, "flype-sites", "--restricted", CHIRAL_6)
    assert code == 0
    assert rows and all(r["shape"] in ("T2", "U3") for r in rows)
    assert {"crossing", "tangle", "arcs", "boundary", "result"} <= set(rows[0])


def test_flype_sites_not_realizable(capsys):
    code, rows, err = run(capsys, "flype-sites", "+1 +2 +3 -1 -2 -3")
    assert code == 1 and not rows and "sphere" in err


def test_flype_orbit_distance_two(capsys, tmp_path):
    dot = tmp_path / "o.dot"
    code, rows, _ = run(capsys, "flype-orbit", "--dot", str(dot), PATH_8)
    assert code == 0
    assert [r["distance"] for r in rows] == [0, 1, 2]
    assert [r["alias"] for r in rows] == ["8_12", "8_22", "8_23"]
    assert dot.read_text().startswith("graph")


def test_flype_orbit_without_mirror_identification(capsys):
    code, rows, _ = run(capsys, "flype-orbit", "--no-mirror-id", CHIRAL_6)
    assert [r["distance"] for r in rows] == [0, 1]


def test_enumerate(capsys):
    code, rows, _ = run(capsys, "enumerate", "-n", "7")
    assert code == 0
    assert [r["prime"] for r in rows] == [1, 0, 1, 1, 2, 3, 10]
    code, rows, _ = run(capsys, "enumerate", "-n", "6", "--no-mirror-id", "--no-prune")
    assert rows[-1]["prime"] == 4


def test_enumerate_jobs_env(capsys, monkeypatch):
    monkeypatch.setenv("PROJTAB_JOBS", "2")
    a = run(capsys, "enumerate", "-n", "6")
    b = run(capsys, "enumerate", "-n", "6", "--jobs", "1")
    assert a == b


def test_build_and_verify(capsys, tmp_path):
    path = tmp_path / "cat.jsonl"
    code, rows, _ = run(capsys, "build-catalog", "-n", "8", "-o", str(path))
    assert code == 0 and rows == [{"path": str(path), "entries": 45}]
    code, rows, _ = run(capsys, "verify", str(path))
    assert code == 0
    assert [r["check"] for r in rows] == ["counts", "orbits", "flype_deltas", "arnold", "generators"]
    assert all(r["passed"] for r in rows)


def test_verify_failure_exit_code(capsys, tmp_path):
    path = tmp_path / "cat.jsonl"
    run(capsys, "build-catalog", "-n", "7", "-o", str(path))
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-1]) + "\n")
    code, rows, _ = run(capsys, "verify", "--skip-generators", str(path))
    assert code == 1
    assert not [r for r in rows if r["check"] == "counts"][0]["passed"]


def test_verify_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", str(tmp_path / "none.jsonl"))
    assert code == 1 and "cannot read" in err


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["enumerate"], ["enumerate", "-n", "x"], ["enumerate", "-n", "3", "--jobs", "0"],
     ["build-catalog", "-n", "9", "-o", "x"]],
)
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "projtab", "canon", TREFOIL], capture_output=True, text=True
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["key"].startswith("canon:")
    bad = subprocess.run([sys.executable, "-m", "projtab", "frobnicate"], capture_output=True)
    assert bad.returncode == 2
