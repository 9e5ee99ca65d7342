import json
import math

import pytest
from prefect.testing.utilities import prefect_test_harness

from pipelines.certificate_pipeline import run_certificate_pipeline
from pipelines.corpus_pipeline import run_corpus_pipeline
from pipelines.sign_scan_pipeline import run_sign_scan_pipeline
from src.utils.shared_config import ENV_PREFIX


@pytest.fixture(scope="module", autouse=True)
def prefect_backend():
    with prefect_test_harness():
        yield


@pytest.fixture
def report_dir(tmp_path, monkeypatch):
    target = tmp_path / "reports"
    monkeypatch.setenv(ENV_PREFIX + "REPORT_DIR", str(target))
    monkeypatch.setenv(ENV_PREFIX + "LOG_FILE", str(tmp_path / "pipeline.log"))
    monkeypatch.setenv(ENV_PREFIX + "P_RESTARTS", "8")
    return target


def _parameter(records, theorem, key):
    return [record["parameters"][key] for record in records if record["theorem"] == theorem]


def test_certificate_pipeline(report_dir):
    report = run_certificate_pipeline(spec="signed-triangle")
    assert report["result"]["certificate_failures"] == 0
    saved = json.loads((report_dir / "bounds_signed-triangle.json").read_text())
    assert saved["command"] == "bounds"
    assert {record["theorem"] for record in saved["result"]["reports"]} >= {"harnack", "diameter", "volume"}


def test_certificate_pipeline_from_file(report_dir, tmp_path):
    path = tmp_path / "pentagon.sg"
    path.write_text("1 2 +1\n2 3 +1\n3 4 +1\n4 5 +1\n1 5 -1\n")
    report = run_certificate_pipeline(spec=None, input_path=str(path), report_name="pentagon")
    assert report["graph"]["n"] == 5
    assert (report_dir / "bounds_pentagon.json").exists()


def test_sign_scan_pipeline(report_dir):
    report = run_sign_scan_pipeline(spec="complete:3")
    bounds = sorted(item["diameter_bound"] for item in report["result"]["classes"])
    assert bounds == pytest.approx([1 / 14, 1 / 6])
    assert (report_dir / "sign_scan_complete_3.json").exists()


def test_corpus_pipeline(report_dir):
    summary = run_corpus_pipeline(specs=("signed-triangle", "cycle:5:unbalanced"), n_values=(math.inf,))
    assert summary["certificate_failures"] == 0
    assert all(item["agree"] for item in summary["curvature_routes"])
    assert all(item["agree"] for item in summary["p2_oracle"])
    assert summary["hypercube_exclusion"]["dimension"] == 7
    assert summary["hypercube_exclusion"]["excluded_at_dimension"]
    assert not summary["hypercube_exclusion"]["excluded_below"]
    assert (report_dir / "corpus_summary.json").exists()
    records = json.loads((report_dir / "bounds_cycle_5_unbalanced.json").read_text())["result"]["reports"]
    assert _parameter(records, "p_volume_only", "p") == [1.5, 2.0, 3.0]
    assert sorted(set(_parameter(records, "eigenvalue_estimate", "epsilon"))) == [0.5, 1.0, 2.0, 4.0]
