import io
import json
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import pytest
from jsonschema import Draft7Validator
from referencing import Registry, Resource

from knfrag import model_to_json, KripkeFrame, KripkeModel
from knfrag.cli import main

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "src" / "knfrag" / "schemas"

_REGISTRY = Registry().with_resources(
    (schema_file.name, Resource.from_contents(json.loads(schema_file.read_text())))
    for schema_file in SCHEMA_DIR.glob("*.json")
)


def load_schema(name):
    with open(SCHEMA_DIR / name, "r", encoding="utf-8") as handle:
        return json.load(handle)


def validate(name, payload):
    Draft7Validator(load_schema(name), registry=_REGISTRY).validate(payload)


def run(argv, stdin=None):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = main(argv)
        except SystemExit as e:
            code = e.code
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def model_file(tmp_path):
    frame = KripkeFrame(["w0", "w1", "w2"], {"a": [("w0", "w1"), ("w0", "w2")]})
    model = KripkeModel(frame, {"w1": ["p"]}, {"p"})
    path = tmp_path / "model.json"
    path.write_text(json.dumps(model_to_json(model, "w0")))
    return str(path)


def test_parse_verb():
    code, out, _ = run(["parse", "p|q"])
    assert code == 0 and out.strip() == "p | q"


def test_parse_verb_json():
    code, out, _ = run(["--json", "parse", "<a>p -> q"])
    assert code == 0
    payload = json.loads(out)
    validate("parse.schema.json", payload)
    assert payload["modalities"] == ["a"]


def test_classify_verb():
    code, out, _ = run(["--json", "classify", "p & q -> r"])
    assert code == 0
    payload = json.loads(out)
    validate("classify.schema.json", payload)
    assert payload == {
        "horn": True,
        "krom": False,
        "core": False,
        "box_only": True,
        "diamond_only": True,
        "clauses": 1,
    }


def test_classify_rejects_non_clausal():
    code, _, err = run(["classify", "~(p | q)"])
    assert code == 65 and "clausal" in err


def test_check_verb(model_file):
    code, out, _ = run(["check", model_file, "<a>p"])
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(["check", model_file, "[a]p"])
    assert code == 1 and out.strip() == "false"
    code, out, _ = run(["--json", "check", model_file, "<a>p", "--world", "w1"])
    payload = json.loads(out)
    validate("check.schema.json", payload)
    assert payload == {"result": False, "world": "w1"} and code == 1


def test_check_missing_file():
    assert run(["check", "/nonexistent/model.json", "p"])[0] == 66


def test_sat_verb_statuses():
    assert run(["sat", "p & ~p"])[0] == 1
    code, out, _ = run(["--json", "sat", "<a>p"])
    assert code == 0
    payload = json.loads(out)
    validate("sat.schema.json", payload)
    assert payload["status"] == "SAT"
    validate("model.schema.json", payload["witness"])
    code, out, _ = run(["--json", "sat", "--engine", "brute", "--max-worlds", "1", "<a>p"])
    assert code == 2
    assert json.loads(out)["status"] == "UNKNOWN_AT_BOUND"


def test_sat_reads_stdin(monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("p | ~p"))
    code, out, _ = run(["sat"])
    assert code == 0


def test_translate_verb(tmp_path):
    sidecar = tmp_path / "fresh.json"
    code, out, _ = run(["translate", "--to", "box", "<a>p", "--sidecar", str(sidecar)])
    assert code == 0
    assert out.strip() == "~[a]_f0 & [a](_f0 | p)"
    payload = json.loads(sidecar.read_text())
    validate("translate.schema.json", payload)
    assert payload["fresh_letters"] == ["_f0"]
    code, out, _ = run(["--json", "translate", "--to", "diamond", "[a]p -> q"])
    payload = json.loads(out)
    validate("translate.schema.json", payload)
    assert payload["formula"] == "(<a>_f0 | q) & [a](~_f0 | ~p)"


def test_equiv_verb():
    code, out, _ = run(["--json", "equiv", "p | q", "~(~p & ~q)"])
    assert code == 0
    payload = json.loads(out)
    validate("equiv.schema.json", payload)
    code, out, _ = run(["--json", "equiv", "p | q", "p"])
    assert code == 1
    payload = json.loads(out)
    validate("equiv.schema.json", payload)
    assert payload["status"] == "COUNTEREXAMPLE"
    code, out, _ = run([
        "--json", "equiv", "--mode", "strong", "--max-worlds", "2",
        "<a>p", "~[a]_f0 & [a](_f0 | p)",
    ])
    assert code == 0


def test_search_verb():
    code, out, _ = run([
        "--json", "search", "--fragment", "krom", "--size", "4", "p | q",
    ])
    assert code == 0
    payload = json.loads(out)
    validate("search.schema.json", payload)
    assert payload["found"] == "p | q"
    code, out, _ = run([
        "--json", "search", "--fragment", "horn", "--size", "4", "p | q",
    ])
    assert code == 1
    assert json.loads(out)["found"] is None


def test_verify_paper_verb():
    code, out, _ = run(["verify-paper", "--id", "product-closure"])
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    for line in lines:
        validate("verify_step.schema.json", line)
    assert lines[-1] == {"theorem": "product-closure", "overall": True}


def test_verify_paper_all():
    code, out, _ = run(["verify-paper"])
    assert code == 0
    lines = [json.loads(line) for line in out.strip().splitlines()]
    overall = [line for line in lines if "overall" in line]
    assert len(overall) == 10
    assert all(line["overall"] for line in overall)


def test_hierarchy_verb_json():
    code, out, _ = run(["--json", "hierarchy"])
    assert code == 0
    payload = json.loads(out)
    validate("hierarchy.schema.json", payload)
    assert payload["dot"].startswith("digraph")


def test_usage_error_exit_code():
    assert run(["no-such-verb"])[0] == 64
    assert run([])[0] == 64
    assert run(["translate", "p"])[0] == 64  # missing --to


def test_parse_error_exit_code():
    assert run(["parse", "p |"])[0] == 65


def test_cap_exit_code():
    code, _, err = run(["--cap", "5", "sat", "--engine", "brute", "<a>p & <a>q"])
    assert code == 69
