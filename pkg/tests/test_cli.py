import json
import subprocess
import sys

import pytest

from almostnil.cli import main
from almostnil.factory import gen_triangular
from almostnil.formats import emit_instance


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def strict4_file(tmp_path):
    inst = gen_triangular(4, True, 5, graded=True)
    inst.ideal = inst.grading.identity_component
    path = tmp_path / "strict4.json"
    path.write_text(emit_instance(inst))
    return path


def test_bounds(capsys):
    code, doc = run(capsys, "bounds", "--n", 2, "--d", 1)
    b = doc["bounds"]
    assert code == 0 and (b["Q"], b["nQ"], b["h"]) == (4, 8, 13)
    code, _ = run(capsys, "bounds", "--n", 0, "--d", 1)
    assert code == 2


def test_theorem2_and_report_reverification(capsys, tmp_path, strict4_file):
    out = tmp_path / "report.json"
    tower = tmp_path / "tower.json"
    code, doc = run(capsys, "theorem2", strict4_file, "-o", out, "--dump-tower", tower, "--samples", 100)
    assert code == 0 and doc["status"] == "PASS" and doc["achieved_index"] == 4
    assert json.loads(out.read_text()) == doc
    assert len(json.loads(tower.read_text())["levels"]) == doc["bounds"]["N"] + 1
    # feed the recorded ideal back and recompute its index
    inst = json.loads(strict4_file.read_text())
    inst["ideal"] = {"vectors": doc["ideal"]["vectors"]}
    inst.pop("grading")
    again = tmp_path / "again.json"
    again.write_text(json.dumps(inst))
    code, val = run(capsys, "validate", again)
    assert code == 0
    code, idx = run(capsys, "nilindex", again, "--subspace", "ideal")
    assert idx["index"] == doc["achieved_index"]


def test_theorem2_without_grading_is_command_error(capsys, tmp_path):
    path = tmp_path / "plain.json"
    path.write_text(emit_instance(gen_triangular(3, True, 5)))
    code, doc = run(capsys, "theorem2", path)
    assert code == 2 and doc["status"] == "INVALID_INPUT" and doc["error"]["path"] == "$.grading"


def test_validate_tampered_group(capsys, tmp_path, strict4_file):
    doc = json.loads(strict4_file.read_text())
    doc["group"]["table"][1][1] = 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out = run(capsys, "validate", bad)
    assert code == 1 and out["status"] == "FAIL" and out["failures"][0]["witness"] is not None


def test_validate_non_associative(capsys, tmp_path):
    path = tmp_path / "na.json"
    path.write_text(json.dumps({"field": {"p": 5}, "algebra": {"dim": 2, "products": [[0, 0, 1, 1], [1, 0, 0, 1]]}}))
    code, out = run(capsys, "validate", path)
    assert code == 1 and out["failures"][0]["name"] == "associativity"


def test_schema_error_exit_code(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"field": {"p": 5}}')
    code, out = run(capsys, "nilindex", path)
    assert code == 2 and out["error"]["type"] == "schema"


def test_nilindex_reports_not_nilpotent(capsys, tmp_path):
    path = tmp_path / "ut.json"
    path.write_text(emit_instance(gen_triangular(2, False, 5)))
    code, out = run(capsys, "nilindex", path)
    assert code == 0 and out["index"] == "NOT_NILPOTENT"


def test_gen_oracle_and_action_commands(capsys, tmp_path):
    g = tmp_path / "g.json"
    assert main(["gen", "random-graded", "--seed", "4", "--d-max", "2", "--max-dim", "12", "-o", str(g)]) == 0
    code, out = run(capsys, "tower-oracle", g, "--max-w", 2)
    assert code == 0 and out["status"] == "PASS"
    a = tmp_path / "a.json"
    assert main(["gen", "cayley-action", "--group", "S3", "--seed", "1", "--max-dim", "20", "-o", str(a)]) == 0
    capsys.readouterr()
    code, out = run(capsys, "theorem1", a, "--samples", 50)
    assert code == 0 and out["status"] == "PASS"
    code, out = run(capsys, "bi-check", a)
    assert code in (0, 2)
    code, out = run(capsys, "tower-oracle", g, "--max-w", 7)
    assert code == 2


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "almostnil.cli", "bounds", "--n", "2", "--d", "2"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["bounds"]["Q"] == 41
