import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

CLI = os.environ.get("LABELGEOM_CLI")
SCHEMA = os.environ.get("LABELGEOM_SCHEMA")
ROOT = Path(__file__).resolve().parents[2]

pytestmark = pytest.mark.skipif(not CLI, reason="LABELGEOM_CLI not set")


def run(*args):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, timeout=60)


@pytest.fixture(scope="module")
def validator():
    schema = json.loads(Path(SCHEMA or ROOT / "schema" / "report.schema.json").read_text())
    return jsonschema.Draft202012Validator(schema)


@pytest.fixture(scope="module")
def fig8_pd(tmp_path_factory):
    import labelgeom as lg

    path = tmp_path_factory.mktemp("pd") / "fig8.pd"
    path.write_text(lg.census_diagram("fig8").to_pd())
    return path


def test_list():
    r = run("census", "--list")
    assert r.returncode == 0
    names = r.stdout.split()
    assert "fig8" in names and "turks_head" in names


@pytest.mark.parametrize("name", ["fig8", "borromean", "encircled:clasp", "Ln:4"])
def test_census_validates(name, validator):
    r = run("census", name, "--restarts", 16, "--dump-vertices")
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    validator.validate(doc)
    assert doc["census"]["passed"]


def test_fig8_value_and_determinism(fig8_pd):
    a = run("solve", fig8_pd, "--restarts", 16)
    b = run("solve", fig8_pd, "--restarts", 16)
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert "0.866025403784439" in a.stdout


def test_turks_head_all_solutions(validator):
    r = run("census", "turks_head", "--all-solutions", "--restarts", 24)
    assert r.returncode == 0, r.stderr
    doc = json.loads(r.stdout)
    validator.validate(doc)
    sols = doc["solutions"]
    assert len(sols) == 4
    assert sum(s["tags"]["real"] for s in sols) == 2
    assert all("edge_labels" in s for s in sols)


def test_input_errors(tmp_path):
    assert run("census", "nope").returncode == 1
    assert run("solve", tmp_path / "missing.pd").returncode == 1
    bad = tmp_path / "bad.pd"
    bad.write_text("X 1 2 3\n")
    r = run("solve", bad)
    assert r.returncode == 1
    assert r.stderr.startswith("labelgeom:")


def test_no_candidate_exit(fig8_pd):
    assert run("solve", fig8_pd, "--restarts", 2, "--tol", "1e-300").returncode == 2


def test_verify(fig8_pd, tmp_path):
    report = tmp_path / "report.json"
    assert run("solve", fig8_pd, "--restarts", 16, "--json", report).returncode == 0
    ok = run("verify", fig8_pd, report)
    assert ok.returncode == 0, ok.stderr
    assert "tags match" in ok.stdout

    empty = tmp_path / "empty.json"
    empty.write_text("{}")
    r = run("verify", fig8_pd, empty)
    assert r.returncode == 1
    assert "SchemaError" in r.stderr

    doc = json.loads(report.read_text())
    doc["solutions"][doc["geometric"]]["edge_labels"][1][0] += 1e-3
    bent = tmp_path / "bent.json"
    bent.write_text(json.dumps(doc))
    r = run("verify", fig8_pd, bent)
    assert r.returncode == 2
    assert "ToleranceExceeded" in r.stderr
