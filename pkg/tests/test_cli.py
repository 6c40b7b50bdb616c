import json
import subprocess
import sys
from pathlib import Path

import pytest

from cyclic_cbd.cli import (
    EXIT_OK,
    EXIT_PARSE,
    EXIT_PROPERTY,
    EXIT_VALIDATION,
    main,
)

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def _close(a, b, tol):
    if isinstance(a, dict):
        return a.keys() == b.keys() and all(_close(a[k], b[k], tol) for k in a)
    if isinstance(a, float) and isinstance(b, (int, float)):
        return abs(a - b) <= tol
    return a == b


class TestAnalyze:
    def test_pr_box_golden(self, capsys):
        code, out, _ = run(capsys, "analyze", DATA / "pr_box.json")
        assert code == EXIT_OK
        report = json.loads(out)
        prov = report.pop("provenance")
        assert len(prov["input_sha256"]) == 64 and prov["tolerance"] == 1e-9
        expected = json.loads((GOLDEN / "pr_box_report.json").read_text())
        assert _close(report, expected, 1e-7)
        assert report["closed_form"]["cnt2"] == 2.0
        assert all(v < 1e-7 for k, v in report["agreement"].items() if k != "criterion")

    def test_probability_units_exact(self, capsys):
        code, out, _ = run(capsys, "analyze", DATA / "pr_box.json", "--units", "p", "--lp", "exact")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["closed_form"]["cnt2"] == 0.5
        assert report["lp"]["cnt2"] == pytest.approx(0.5, abs=1e-12)

    def test_uniform_rank5(self, capsys):
        code, out, _ = run(capsys, "analyze", DATA / "uniform5.json")
        cf = json.loads(out)["closed_form"]
        assert code == EXIT_OK
        assert not cf["contextual"]
        assert cf["ncnt2"] == 1 and cf["ncnt_branch"] == "box"

    def test_general(self, capsys):
        code, out, _ = run(capsys, "analyze", DATA / "tripartite.json")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["contextual"]
        assert len(report["cyclic_subsystems"]) == 7
        assert not any(s["contextual"] for s in report["cyclic_subsystems"])

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "sub" / "r.json"
        code, out, _ = run(capsys, "analyze", DATA / "pr_box.json", "--out", target)
        assert code == EXIT_OK and out == ""
        assert json.loads(target.read_text())["rank"] == 4

    def test_malformed(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"kind": "cyclic", "colour": 3}')
        code, _, err = run(capsys, "analyze", bad)
        assert code == EXIT_PARSE and "parse error" in err

    def test_not_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("rank = 4")
        assert run(capsys, "analyze", bad)[0] == EXIT_PARSE

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "analyze", tmp_path / "nope.json")[0] == EXIT_PARSE

    def test_invalid(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(
            {"kind": "cyclic", "marginals": [[0.5, 0.5]] * 2, "bunch_products": [0.6, 0.25]}
        ))
        code, _, err = run(capsys, "analyze", bad)
        assert code == EXIT_VALIDATION and "invalid input" in err


class TestSweep:
    def test_matches_golden(self, capsys):
        code, out, err = run(capsys, "sweep", "--rank", 4)
        assert code == EXIT_OK
        assert out == (GOLDEN / "sweep_rank4_consistent.csv").read_text()
        summary = json.loads(err)
        assert summary["crosses_zero"] and summary["continuous"]

    def test_bad_rank(self, capsys):
        assert run(capsys, "sweep", "--rank", 9)[0] == EXIT_VALIDATION


class TestLemmas:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "lemmas", "--samples", 3, "--points", 2000)
        payload = json.loads(out)
        assert code == EXIT_OK and payload["all_passed"]
        assert payload["provenance"]["seed"] == 0
        assert len(payload["suites"]) == 12

    def test_empty(self, capsys):
        code, out, _ = run(capsys, "lemmas", "--samples", 0)
        assert code == EXIT_OK and json.loads(out)["suites"] == []

    def test_injected_failure(self, capsys):
        code, out, _ = run(capsys, "lemmas", "--samples", 2, "--points", 1000,
                           "--inject-failure", "variants")
        assert code == EXIT_PROPERTY
        assert not json.loads(out)["all_passed"]


class TestCounterexamples:
    def test_too_few(self, capsys):
        code, _, err = run(capsys, "counterexamples", "--samples", 10)
        assert code == EXIT_VALIDATION and "at least 50" in err


class TestIngest:
    def test_csv(self, capsys):
        code, out, _ = run(capsys, "ingest", DATA / "trials.csv", "--label", "lab")
        spec = json.loads(out)
        assert code == EXIT_OK
        assert spec["label"] == "lab" and spec["rank"] == 3
        assert spec["marginals"][0] == pytest.approx([0.5, 0.7])

    def test_bad_csv(self, capsys, tmp_path):
        bad = tmp_path / "t.csv"
        bad.write_text("a,b\n1,2\n")
        assert run(capsys, "ingest", bad)[0] == EXIT_PARSE

    def test_empty_context(self, capsys, tmp_path):
        bad = tmp_path / "t.csv"
        bad.write_text("context_id,c00,c01,c10,c11\n0,1,1,1,1\n1,0,0,0,0\n")
        assert run(capsys, "ingest", bad)[0] == EXIT_VALIDATION


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "cyclic_cbd", "analyze", str(DATA / "uniform5.json")],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["closed_form"]["ncnt2"] == 1
