import json
from pathlib import Path

import pytest

from app_managers.core.errors import InputError
from app_managers.core.initializers import initialize, load_defaults
from app_managers.workflow_manager.main import trigger_workflows
from main_cli_runner import build_parser

ROOT = Path(__file__).resolve().parents[1]
NODAL = "field p=7\nF: x4^2*(x0*x1 + x2*x3) + x0^4 + 2*x1^4 + 3*x2^4 - x3^4\n"


def run(argv):
    return trigger_workflows(build_parser().parse_args(argv))


def test_audit_lattice_to_stdout(capsys):
    assert run(["audit", "lattice", "--quiet"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "audit"
    assert report["field"] == "ZZ"
    assert report["schema_version"] == 1
    assert report["result"]["expansion"] == {"c0": -124, "c1": 12, "c2": -2}


def test_audit_bese_to_file(tmp_path, capsys):
    out = tmp_path / "reports" / "bese.json"
    assert run(["audit", "bese", "--quiet", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    report = json.loads(out.read_text())
    assert len(report["result"]["instances"]) == 3


def test_audit_reports_are_byte_identical(capsys):
    run(["audit", "lattice", "--quiet"])
    first = capsys.readouterr().out
    run(["audit", "lattice", "--quiet"])
    assert capsys.readouterr().out == first


def test_configuration_errors_exit_with_one(tmp_path, capsys):
    instance = tmp_path / "x.txt"
    instance.write_text(NODAL)
    assert run(["audit", "lattice", "--quiet", "--window", "-1"]) == 1
    assert run(["verdict", "--quiet", "--input", str(instance), "--field", "p=15"]) == 1
    assert run(["audit", "lattice", "--quiet", "--config", str(tmp_path / "missing.yaml")]) == 1
    assert "Configuration error" in capsys.readouterr().err


def test_malformed_input_exits_with_one(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("F: x0^4 +\n")
    assert run(["analyze", "--quiet", "--input", str(bad)]) == 1
    assert "Block F" in capsys.readouterr().err
    assert run(["verdict", "--quiet", "--input", str(tmp_path / "absent.txt")]) == 1


def test_rational_input_without_points_exceeds_the_budget(capsys):
    sample = ROOT / "configurations" / "sample_quartic.txt"
    assert run(["verdict", "--quiet", "--input", str(sample)]) == 2
    assert "cannot be enumerated" in capsys.readouterr().err


def test_verdict_with_supplied_nodes(tmp_path, capsys):
    instance = tmp_path / "x.txt"
    instance.write_text(NODAL)
    points = tmp_path / "nodes.txt"
    points.write_text("0, 0, 0, 0, 1\n")
    assert run(["verdict", "--quiet", "--input", str(instance), "--points", str(points)]) == 0
    result = json.loads(capsys.readouterr().out)["result"]
    assert result["s"] == 1
    assert result["theorem_path"] == "QFactorial"
    assert result["citation"] == "Thm1.1-s≤8"
    assert result["defect"] == 0


def test_smooth_supplied_point_is_rejected(tmp_path):
    instance = tmp_path / "x.txt"
    instance.write_text(NODAL)
    points = tmp_path / "nodes.txt"
    points.write_text("1, 0, 0, 0, 0\n")
    assert run(["verdict", "--quiet", "--input", str(instance), "--points", str(points)]) == 1


def test_config_file_defaults_and_overrides(tmp_path, monkeypatch):
    config = tmp_path / "config.yaml"
    config.write_text("configs:\n  toolkit:\n    lattice_window: 50\n    output_dir: env::TOOLKIT_OUT\n")
    monkeypatch.setenv("TOOLKIT_OUT", str(tmp_path / "generated"))
    defaults = load_defaults(str(config))
    assert defaults.lattice_window == 50
    assert defaults.output_dir == str(tmp_path / "generated")
    args = build_parser().parse_args(["audit", "lattice", "--config", str(config), "--window", "7"])
    assert initialize(args).window == 7
    generate = build_parser().parse_args(["generate", "--config", str(config), "--p", "13"])
    run_config = initialize(generate)
    assert run_config.output_dir == str(tmp_path / "generated")
    assert run_config.working_field.descriptor == "GF(13)"
    monkeypatch.delenv("TOOLKIT_OUT")
    with pytest.raises(InputError):
        load_defaults(str(config))


def test_shipped_configuration_loads():
    defaults = load_defaults(str(ROOT / "configurations" / "config.yaml"))
    assert defaults.generator_p == 11
    assert defaults.field_spec is None
    assert defaults.extension_budget == 1_000_000_000


def test_generate_needs_a_prime():
    with pytest.raises(InputError):
        initialize(build_parser().parse_args(["generate", "--p", "9"]))


@pytest.mark.slow
def test_generate_writes_deterministic_files(tmp_path, capsys):
    for name in ("first", "second"):
        assert run(["generate", "--quiet", "--seed", "1", "--p", "11", "--out", str(tmp_path / name)]) == 0
    capsys.readouterr()
    first = tmp_path / "first" / "example_seed1_p11.json"
    second = tmp_path / "second" / "example_seed1_p11.json"
    assert first.read_text() == second.read_text()
    report = json.loads(first.read_text())
    assert report["result"]["instance_file"] == "example_seed1_p11.txt"
    assert [m["name"] for m in report["result"]["models"]] == ["Y", "Y'"]
    assert all(m["lines_through_node"]["label"] == "complete" for m in report["result"]["models"])
    text = (tmp_path / "first" / "example_seed1_p11.txt").read_text()
    assert text.startswith("field GF(11)\n# generated with seed 1 over GF(11)\n")
    assert run(["verdict", "--quiet", "--input", str(tmp_path / "first" / "example_seed1_p11.txt")]) == 0
    verdict = json.loads(capsys.readouterr().out)["result"]
    assert verdict["theorem_path"] == "ExceptionCase"
    assert verdict["defect"] == 1
