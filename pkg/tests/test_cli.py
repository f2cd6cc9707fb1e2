import json
import os

import pytest
from click.testing import CliRunner

from Hilbert_schemes.Cli.Artifacts import canonical_json, to_jsonable
from Hilbert_schemes.Cli.ProblemFiles import adhoc_problem, read_problem
from Hilbert_schemes.Exceptions import ProblemValidationError
from Hilbert_schemes.Settings import corpus_path
from corpusRunner.runner import lookup, run_corpus
from main import cli, run


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    # app.log lands in the working directory
    monkeypatch.chdir(tmp_path)
    return tmp_path


def write_problem(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def corpus_file(name):
    return os.path.join(corpus_path, name)


def test_gotzmann_command():
    result = CliRunner().invoke(cli, ["gotzmann", "--poly", "2", "--n", "3"])
    assert result.exit_code == 0
    artifact = json.loads(result.output)
    assert artifact["command"] == "gotzmann"
    assert artifact["result"]["gotzmann_number"] == 2
    assert artifact["result"]["lex_regularity"] == 2


def test_enumerate_command_text_format():
    result = CliRunner().invoke(cli, ["enumerate", corpus_file("projective_line.json"), "--format", "text"])
    assert result.exit_code == 0
    assert "colength" in result.output


def test_artifact_file_is_reproducible(in_tmp):
    first, second = in_tmp / "a.json", in_tmp / "b.json"
    for out in (first, second):
        assert run(["enumerate", corpus_file("negative_weight_enumerate.json"), "--out", str(out)]) == 0
    assert first.read_bytes() == second.read_bytes()
    artifact = json.loads(first.read_text(encoding="utf-8"))
    assert artifact["result"]["count"] == 8
    assert len(artifact["problem_sha256"]) == 64


def test_validation_exit_code(capsys):
    assert run(["enumerate", corpus_file("malformed_grading.json")]) == 2
    error = json.loads(capsys.readouterr().err)["error"]
    assert error["code"] == "DIMENSION_MISMATCH"


def test_missing_file_is_a_usage_error():
    assert run(["enumerate", "does-not-exist.json"]) == 2


def test_not_json(in_tmp):
    path = in_tmp / "broken.json"
    path.write_text("{", encoding="utf-8")
    assert run(["enumerate", str(path)]) == 2


def test_unknown_field_is_rejected(in_tmp):
    path = write_problem(in_tmp / "extra.json", {"task": {"command": "enumerate", "colour": "red"}})
    with pytest.raises(ProblemValidationError):
        read_problem(path)


def test_cap_exit_code(in_tmp, capsys):
    path = write_problem(in_tmp / "line.json", {
        "grading": {"columns": [[1], [1]], "free_rank": 1},
        "hilbert": {"tail": "constant", "constant": 1},
        "task": {"command": "supportive"},
    })
    assert run(["supportive", path, "--cap-iter", "1"]) == 3
    assert json.loads(capsys.readouterr().err)["error"]["code"] == "ITERATION_CAP"


def test_local_gb_model_override():
    code = run(["local-gb-check", "--input", corpus_file("local_gb_true.json"), "--model", "zp:4"])
    assert code == 2


def test_to_jsonable():
    assert to_jsonable(2 ** 60) == str(2 ** 60)
    assert to_jsonable(12) == 12
    assert to_jsonable(float("inf")) == "inf"
    assert to_jsonable({(1, 2): {3, 1}}) == {"(1, 2)": [1, 3]}


def test_canonical_json_is_order_independent():
    assert canonical_json({"b": 1, "a": [1, 2]}) == canonical_json({"a": [1, 2], "b": 1})


def test_adhoc_problems_hash_their_content():
    a = adhoc_problem({"command": "gotzmann", "polynomial": "2", "n": 3})
    b = adhoc_problem({"command": "gotzmann", "polynomial": "2", "n": 3})
    c = adhoc_problem({"command": "gotzmann", "polynomial": "3", "n": 3})
    assert a.digest == b.digest != c.digest


def test_lookup():
    result = {"points": [{"dimension": 4}], "count": 2}
    assert lookup(result, "points.0.dimension") == 4
    assert lookup(result, "points.len") == 1
    assert lookup(result, "count") == 2


def test_shipped_corpus_passes():
    frame = run_corpus()
    failing = frame[~frame["passed"]]
    assert failing.empty, failing.to_string()
    assert len(frame) == len([f for f in os.listdir(corpus_path) if f.endswith(".json")])
