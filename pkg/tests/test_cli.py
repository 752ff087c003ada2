import json

import pytest
import yaml
from click.testing import CliRunner

from mlworkbench import catalog as cat
from mlworkbench.cli import main

PROJECT_YAML = """\
schemaVersion: 1
id: cli-demo
description: credit scoring
domainRequirements:
  - {type: explainability, value: true, care: Must}
  - {type: accuracy, value: 0.9, care: Should}
dataProperties:
  - {type: labeling, value: Labeled, provenance: expert}
"""


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def project_file(tmp_path):
    path = tmp_path / "project.yaml"
    path.write_text(PROJECT_YAML)
    return str(path)


def test_catalog_validate_ok(runner):
    result = runner.invoke(main, ["catalog", "validate", cat.seed_catalog_path()])
    assert result.exit_code == 0
    assert "catalog valid" in result.output


def test_catalog_validate_bad(runner, tmp_path):
    bad = tmp_path / "bad.yaml"
    doc = yaml.safe_load(open(cat.seed_catalog_path()))
    doc["families"][0]["values"]["noise-tolerance"] = ["Enormous"]
    bad.write_text(yaml.safe_dump(doc))
    result = runner.invoke(main, ["catalog", "validate", str(bad)])
    assert result.exit_code == 1
    assert "outside range" in result.output


def test_missing_file_exit_code(runner):
    result = runner.invoke(main, ["rank", "/no/such/file.yaml"])
    assert result.exit_code == 3


def test_usage_error_exit_code(runner, project_file):
    result = runner.invoke(main, ["rank", project_file, "--format", "sideways"])
    assert result.exit_code == 2


def test_rank_table_and_machine(runner, project_file):
    table = runner.invoke(main, ["rank", project_file, "--top", "3"])
    assert table.exit_code == 0
    assert "decision-tree" in table.output

    machine = runner.invoke(main, ["rank", project_file, "--top", "3", "--format", "machine"])
    assert machine.exit_code == 0
    doc = json.loads(machine.output)
    assert len(doc["breakdowns"]) == 3
    assert doc["breakdowns"][0]["solves"] >= doc["breakdowns"][1]["solves"]


def test_machine_output_is_byte_stable(runner, project_file):
    args = ["rank", project_file, "--format", "machine"]
    first = runner.invoke(main, args).output
    second = runner.invoke(main, args).output
    assert first == second


def test_explain(runner, project_file):
    result = runner.invoke(main, ["explain", project_file, "--family", "decision-tree"])
    assert result.exit_code == 0
    assert "solves: 0.992063" in result.output
    assert "explainability" in result.output
    missing = runner.invoke(main, ["explain", project_file, "--family", "quantum-leap"])
    assert missing.exit_code == 1


def test_whatif(runner, project_file):
    result = runner.invoke(
        main,
        ["whatif", project_file, "--set", "care.explainability=Not",
         "--top", "2", "--format", "machine"],
    )
    assert result.exit_code == 0
    doc = json.loads(result.output)
    before = [b["familyId"] for b in doc["before"]["breakdowns"]]
    after = [b["familyId"] for b in doc["after"]["breakdowns"]]
    assert before != after
    bad = runner.invoke(main, ["whatif", project_file, "--set", "nonsense"])
    assert bad.exit_code == 2


def test_whatif_leaves_project_file_untouched(runner, project_file):
    before = open(project_file).read()
    runner.invoke(main, ["whatif", project_file, "--set", "care.explainability=Not"])
    assert open(project_file).read() == before


def test_pipeline_formats(runner, project_file, tmp_path):
    canonical = runner.invoke(
        main, ["pipeline", project_file, "--family", "decision-tree"]
    )
    assert canonical.exit_code == 0
    doc = yaml.safe_load(canonical.output)
    assert doc["familyId"] == "decision-tree"
    assert [s["kind"] for s in doc["steps"]].count("model-training") == 1

    xml = runner.invoke(
        main,
        ["pipeline", project_file, "--family", "decision-tree", "--format", "workflow-xml"],
    )
    assert xml.exit_code == 0
    assert "serviceTask" in xml.output

    data = tmp_path / "data.csv"
    data.write_text("x,y\n" + "\n".join(f"{i},{'ab'[i % 2]}" for i in range(30)))
    compensated = runner.invoke(
        main,
        ["pipeline", project_file, "--family", "k-nearest-neighbors",
         "--profile", str(data)],
    )
    assert compensated.exit_code == 0
    kinds = [s["kind"] for s in yaml.safe_load(compensated.output)["steps"]]
    assert "encoding" in kinds  # kNN takes no categorical attributes natively


def test_env_var_catalog(runner, project_file, tmp_path, monkeypatch):
    custom = tmp_path / "catalog.yaml"
    doc = yaml.safe_load(open(cat.seed_catalog_path()))
    doc["families"] = doc["families"][:1]
    custom.write_text(yaml.safe_dump(doc))
    monkeypatch.setenv("MLWORKBENCH_CATALOG", str(custom))
    result = runner.invoke(main, ["rank", project_file, "--format", "machine"])
    assert result.exit_code == 0
    assert len(json.loads(result.output)["breakdowns"]) == 1
