"""Command-line driver: exit codes, report payloads, determinism, and the
optional report directory."""

import json

import pytest

from orbistar.cli import main

pytestmark = pytest.mark.usefixtures("no_report_dir")


@pytest.fixture
def no_report_dir(monkeypatch):
    monkeypatch.delenv("ORBISTAR_REPORT_DIR", raising=False)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_trace_table_z2(capsys):
    code, out = run(["trace-table", "--group", "z2",
                     "--degree-cap", "2", "--hbar-order", "1"], capsys)
    assert code == 0
    data = json.loads(out)
    checks = {c["name"]: c for c in data["checks"]}
    table = checks["trace-table"]["witness"]["classes"]
    twisted = [e for e in table if not e.get("identity")]
    assert len(twisted) == 1
    assert twisted[0]["fixed_dim"] == 0
    assert twisted[0]["trace_of_one"] == "(1/2)"
    assert checks["trace-dimension"]["witness"]["dimension"] == 1


def test_verify_traces_skips_for_trivial_group(capsys):
    code, out = run(["verify-traces", "--group", "trivial",
                     "--samples", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["checks"][0]["status"] == "skip"


def test_verify_traces_z2(capsys):
    code, out = run(["verify-traces", "--group", "z2", "--samples", "4",
                     "--degree-cap", "3"], capsys)
    assert code == 0
    assert json.loads(out)["summary"]["fail"] == 0


def test_star_check_and_determinism(capsys):
    argv = ["star-check", "--samples", "5", "--seed", "9",
            "--degree-cap", "2", "--hbar-order", "3"]
    code, first = run(argv, capsys)
    assert code == 0
    code, second = run(argv, capsys)
    assert code == 0
    assert first == second


def test_koszul_subcommand(capsys):
    code, out = run(["koszul-cohomology", "--group", "reflection",
                     "--k-max", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert any(c["name"].startswith("koszul-class") for c in data["checks"])


def test_hochschild_subcommand(capsys):
    code, out = run(["hochschild", "--algebra", "group:2", "--k-max", "2"],
                    capsys)
    assert code == 0
    witness = json.loads(out)["checks"][0]["witness"]
    assert witness["hh"] == [2, 0, 0]


def test_groupoid_subcommand(capsys):
    code, out = run(["groupoid-hh", "--action", "s3-3"], capsys)
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["sector-decomposition"]["witness"]["sectors"] == 2
    assert checks["reduction-chain-map"]["status"] == "pass"
    assert checks["inertia-theta"]["status"] == "pass"


def test_poisson_subcommand(capsys):
    code, out = run(["poisson-check", "--k", "2", "--dim", "2",
                     "--samples", "8"], capsys)
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["brylinski-compat"]["witness"]["expected"] == "2"


def test_operation_identity_subcommand(capsys):
    code, out = run(["operation-identity", "--algebra", "truncpoly:3",
                     "--trials", "18"], capsys)
    assert code == 0
    assert json.loads(out)["summary"]["pass"] == 1


def test_text_format(capsys):
    code, out = run(["hochschild", "--algebra", "matrix:2", "--k-max", "1",
                     "--text"], capsys)
    assert code == 0
    assert out.startswith("scenario:")
    assert "summary:" in out


def test_invalid_inputs_exit_2(capsys):
    assert run(["trace-table", "--group", "bogus"], capsys)[0] == 2
    assert run(["hochschild", "--algebra", "nope:1"], capsys)[0] == 2
    assert run(["groupoid-hh", "--action", "nope"], capsys)[0] == 2
    assert run(["no-such-command"], capsys)[0] == 2


def test_config_file_and_overrides(tmp_path, capsys):
    path = tmp_path / "scenario.toml"
    path.write_text('name = "conf"\norder = 4\ndimension = 2\nseed = 1\n'
                    'samples = 3\n[group]\n'
                    'generators = [[[-1, 0], [0, -1]]]\n')
    code, out = run(["star-check", "--config", str(path), "--samples", "4"],
                    capsys)
    assert code == 0
    data = json.loads(out)
    assert data["scenario"]["name"] == "conf"
    assert data["scenario"]["samples"] == 4  # the flag wins


def test_algebra_file(tmp_path, capsys):
    # the dual numbers Q[x]/(x^2) spelled out as structure constants
    path = tmp_path / "dual.json"
    path.write_text(json.dumps({
        "labels": ["one", "x"],
        "products": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]],
        "unit": [[0, 1]],
    }))
    code, out = run(["hochschild", "--algebra-file", str(path),
                     "--k-max", "2"], capsys)
    assert code == 0
    witness = json.loads(out)["checks"][0]["witness"]
    assert witness["hh"] == [2, 1, 1]


def test_algebra_file_rejects_nonassociative(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "labels": ["one", "x"],
        "products": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1],
                     [1, 1, 0, 1]],
        "unit": [[0, 1], [1, 1]],  # 1 + x is not a unit for this table
    }))
    assert run(["hochschild", "--algebra-file", str(path)], capsys)[0] == 2


def test_groupoid_file(tmp_path, capsys):
    # Z/2 as a one-object groupoid, written out by hand
    path = tmp_path / "z2.json"
    path.write_text(json.dumps({
        "objects": 1,
        "source": [0, 0], "target": [0, 0], "unit": [0], "inverse": [0, 1],
        "compose": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0]],
    }))
    code, out = run(["groupoid-hh", "--groupoid-file", str(path)], capsys)
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["sector-decomposition"]["witness"]["sectors"] == 2


def test_groupoid_file_rejects_broken_axioms(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({
        "objects": 1,
        "source": [0, 0], "target": [0, 0], "unit": [0], "inverse": [0, 1],
        "compose": [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 1]],
    }))
    assert run(["groupoid-hh", "--groupoid-file", str(path)], capsys)[0] == 2


def test_report_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("ORBISTAR_REPORT_DIR", str(tmp_path))
    code, out = run(["hochschild", "--algebra", "group:2", "--k-max", "1"],
                    capsys)
    assert code == 0
    written = (tmp_path / "hochschild.json").read_bytes()
    assert written.decode() == out
