import json
import subprocess
import sys

import pytest

from jumploci.characters import ScanReport
from jumploci.cli import main
from jumploci.corpus import CORPUS, corpus
from jumploci.deletion import VerificationReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims_on_hopf(capsys):
    code, out, _ = run(capsys, "dims", "--corpus", "hopf", "--char", "0,1/3")
    assert code == 0
    assert out.splitlines() == ["q_1,q_2,h0,h1,h2", "0,1/3,0,0,0"]


def test_dims_json(capsys):
    code, out, _ = run(capsys, "dims", "--corpus", "tangent-pair", "--char", "1/4,1/4", "--char", "0,0", "--format", "json")
    assert code == 0
    assert json.loads(out) == [
        {"q": ["1/4", "1/4"], "h0": 0, "h1": 1, "h2": 1},
        {"q": ["0", "0"], "h0": 1, "h1": 2, "h2": 1},
    ]


def test_linking_on_three_lines(capsys):
    code, out, _ = run(capsys, "linking", "--corpus", "three-lines", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["braid"] == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert data["branches"] == data["braid"] and data["agree"] is True


def test_linking_table(capsys):
    code, out, _ = run(capsys, "linking", "--corpus", "cusp-line")
    assert code == 0
    assert "0 3" in out and "# agree: true" in out


def test_linking_disagreement_exits_one(capsys):
    obj = {"braid": {"strands": 2, "word": [1, 1]}, "linking": [[0, 2], [2, 0]]}
    code, out, _ = run(capsys, "linking", "--inline", json.dumps(obj))
    assert code == 1
    assert "# agree: false" in out


def test_verify_tangent_pair_passes(capsys):
    code, out, err = run(capsys, "verify-deletion", "--corpus", "tangent-pair", "--order", "4", "--jobs", "1")
    assert code == 0
    assert "pass" in err
    assert out.splitlines()[0].startswith("q_1,q_2,route")


def test_verify_failure_exit_status_has_mismatch_rows(capsys):
    obj = {"braid": {"strands": 2, "word": [1, 1]}, "linking": [[0, 2], [2, 0]]}
    code, out, err = run(capsys, "verify-deletion", "--inline", json.dumps(obj), "--order", "2",
                         "--format", "json", "--jobs", "1")
    assert code == 1
    report = VerificationReport.from_json(json.loads(out))
    assert not report.passed and report.mismatches
    assert "FAIL" in err


def test_scan_json_round_trips(capsys, tmp_path):
    target = tmp_path / "scan.json"
    code, out, _ = run(capsys, "scan", "--corpus", "cusp", "--order", "6", "--format", "json",
                       "--output", str(target), "--mult", "1", "--degree", "1", "--degree", "2", "--jobs", "1")
    assert code == 0 and out == ""
    text = target.read_text()
    report = ScanReport.from_json(json.loads(text))
    assert [str(t) for t in report.locus(1, 1)] == ["(0)", "(1/6)", "(5/6)"]
    assert [str(t) for t in report.locus(2, 1)] == ["(1/6)", "(5/6)"]
    assert json.dumps(report.to_json(), indent=2) + "\n" == text


def test_input_file(capsys, tmp_path):
    path = tmp_path / "job.json"
    path.write_text(json.dumps({"name": "trefoil", "braid": {"strands": 2, "word": [1, 1, 1]}}))
    code, out, _ = run(capsys, "dims", "--input", str(path), "--char", "1/6", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["h1"] == 1


def test_presentation_input(capsys):
    pres = {"generators": 2, "labels": [1, 2], "relators": [[1, 2, -1, -2]]}
    code, out, _ = run(capsys, "dims", "--inline", json.dumps({"presentation": pres}), "--char", "0,1/2")
    assert code == 0
    assert out.splitlines()[1] == "0,1/2,0,0,0"


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["dims", "--corpus", "hopf", "--inline", "{}", "--char", "0,0"], "exactly one"),
        (["dims", "--corpus", "nope", "--char", "0"], "nope"),
        (["dims", "--inline", '{"braid": {"strands": 2,\n "word": [1, }', "--char", "0"], "inline:2:"),
        (["dims", "--inline", '{"braid": {"strands": 2, "word": [3]}}', "--char", "0"], "field 'braid'"),
        (["dims", "--inline", '{"colour": 1}', "--char", "0"], "colour"),
        (["dims", "--corpus", "hopf", "--char", "0,1/0"], "--char"),
        (["dims", "--corpus", "hopf", "--char", "0"], "coordinates"),
        (["scan", "--corpus", "hopf", "--order", "0"], "--order"),
        (["scan", "--corpus", "hopf", "--degree", "3"], "--degree"),
        (["verify-deletion", "--corpus", "cusp"], "two components"),
        (["verify-deletion", "--corpus", "hopf", "--delete", "5"], "--delete 5"),
        (["dims", "--input", "/nonexistent/job.json", "--char", "0"], "job.json"),
        (["linking", "--inline", '{"branches": [{"param": {"x": [[1, 2]], "y": [[1, 4]], "trunc": 9}}]}'],
         "entry 0"),
    ],
)
def test_invalid_input_exits_two(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert fragment in err


def test_budget_refusal_exits_three(capsys):
    code, _, err = run(capsys, "scan", "--corpus", "four-lines", "--order", "12", "--jobs", "1")
    assert code == 3
    assert "20736" in err


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("JUMPLOCI_BUDGET", "10")
    code, _, err = run(capsys, "scan", "--corpus", "hopf", "--order", "4", "--jobs", "1")
    assert code == 3 and "16" in err
    code, _, _ = run(capsys, "scan", "--corpus", "hopf", "--order", "4", "--budget", "16", "--jobs", "1")
    assert code == 0
    monkeypatch.setenv("JUMPLOCI_BUDGET", "lots")
    code, _, err = run(capsys, "scan", "--corpus", "hopf", "--order", "2", "--jobs", "1")
    assert code == 2 and "JUMPLOCI_BUDGET" in err


def test_corpus_listing(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and out.split() == list(CORPUS)
    code, out, _ = run(capsys, "corpus", "cusp-line")
    data = json.loads(out)
    assert data["linking"] == [[0, 3], [3, 0]]
    assert data["braid"] == corpus("cusp-line").braid.to_json()
    code, _, err = run(capsys, "corpus", "nope")
    assert code == 2


def test_module_entry_point():
    done = subprocess.run(
        [sys.executable, "-m", "jumploci", "dims", "--corpus", "hopf", "--char", "0,1/3"],
        capture_output=True, text=True, check=False,
    )
    assert done.returncode == 0
    assert done.stdout.splitlines()[-1] == "0,1/3,0,0,0"
