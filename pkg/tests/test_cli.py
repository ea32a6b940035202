import json
import subprocess
import sys

import pytest

from conftest import fixture_path, load_fixture
from iccode.cli import main
from iccode.io import dump_instance, load_instance, parse_instance, parse_override
from iccode.errors import InputError


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_certify_optimal_fixture(capsys):
    code, out = run(capsys, "certify", fixture_path("fig1"))
    report = json.loads(out)
    assert code == 0
    assert report["certificate"]["verdict"] == "optimal"
    assert report["certificate"]["code_length"] == 12
    assert len(report["code"]["rows"]) == 12


def test_exit_codes(capsys):
    assert run(capsys, "analyze", fixture_path("fig3"))[0] == 3
    assert run(capsys, "encode", fixture_path("fig4"))[0] == 2
    assert run(capsys, "certify", fixture_path("fig13"))[0] == 2
    assert run(capsys, "encode", fixture_path("fig7"))[0] == 0
    assert run(capsys, "certify", "--identity", fixture_path("fig7"))[0] == 5


def test_error_reports(capsys):
    _, out = run(capsys, "analyze", fixture_path("fig3"))
    report = json.loads(out)
    assert report["status"] == "invalid"
    assert report["error"]["kind"] == "i-path-multiple"
    _, out = run(capsys, "encode", fixture_path("fig4"))
    assert json.loads(out)["error"]["kind"] == "ccc-violation"


def test_malformed_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out = run(capsys, "analyze", bad)
    assert code == 3
    assert json.loads(out)["status"] == "input-error"
    missing = tmp_path / "missing.json"
    assert run(capsys, "encode", missing)[0] == 3
    bad.write_text(json.dumps({"n": 2, "vertices": [1, 2], "arcs": [[1, 3]], "inner": [1]}))
    assert run(capsys, "analyze", bad)[0] == 3


def test_override_partition(capsys):
    code, out = run(capsys, "encode", "--override-partition", "1,2,5,7/3,4,6,8", fixture_path("fig9"))
    assert code == 0
    report = json.loads(out)
    assert len(report["code"]["rows"]) == 22
    assert report["code"]["rows"][0]["support"] == [1, 2, 5, 7]
    code, _ = run(capsys, "encode", "--override-partition", "1,2/3", fixture_path("fig9"))
    assert code == 2
    code, _ = run(capsys, "encode", "--override-partition", "1,2", fixture_path("fig9"))
    assert code == 3


def test_parse_override():
    assert parse_override("1,2/3") == ((1, 2), (3,))
    with pytest.raises(InputError):
        parse_override("a/b")


def test_text_format(capsys):
    code, out = run(capsys, "encode", "--format", "text", fixture_path("fig2"))
    assert code == 0
    assert "row 0" in out and "inner-sum-1" in out
    assert not out.lstrip().startswith("{")


def test_multiple_files_and_jobs(capsys):
    files = [fixture_path(n) for n in ("fig1", "fig2", "fig4")]
    code, out = run(capsys, "encode", *files)
    serial = json.loads(out)
    assert code == 2 and len(serial) == 3
    code, out = run(capsys, "encode", "--jobs", "2", *files)
    assert code == 2 and json.loads(out) == serial


def test_output_is_deterministic():
    cmd = [sys.executable, "-m", "iccode.cli", "certify", str(fixture_path("fig6")), str(fixture_path("fig9"))]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_instance_round_trip(tmp_path):
    f = load_fixture("fig25")
    path = tmp_path / "again.json"
    path.write_text(dump_instance(f))
    again = load_instance(path)
    assert again.to_dict() | {"name": None} == f.to_dict() | {"name": None}
    assert parse_instance(json.loads(path.read_text())).digraph() == f.digraph()


def test_mais_modes(capsys):
    code, out = run(capsys, "certify", "--mais", "witness", fixture_path("fig9"))
    report = json.loads(out)
    assert code == 0 and report["mais_method"] == "witness"
    assert report["certificate"]["witness"]["size"] == 22
    code, out = run(capsys, "certify", "--max-vertices-exact", "5", fixture_path("fig7"))
    assert code == 0 and json.loads(out)["mais_method"] == "witness"
