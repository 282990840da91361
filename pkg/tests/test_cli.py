"""Tests for the command-line interface"""

import json

import pytest

from wflag.cli.verify import load_golden
from wflag.main import main
from wflag.utils.rationals import format_rational


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    out = json.loads(capsys.readouterr().out)
    return code, out


def test_catalog_text(capsys):
    """Test the human-readable registry"""
    assert main(["catalog"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 10
    assert lines[4].startswith("lgr36")


def test_catalog_json(capsys):
    """Test the JSON registry"""
    code, report = run_json(capsys, "catalog")
    assert code == 0
    assert report["command"] == "catalog"
    assert len(report["outputs"]) == 9
    assert report["outputs"][1]["highest_weight"] == ["1/2"] * 5
    assert {r["id"]: r["coordinates"] for r in report["outputs"]}["e6"] == "omega"


def test_unknown_flag_exits_1(capsys):
    """Test usage errors"""
    with pytest.raises(SystemExit) as exc:
        main(["catalog", "--bogus"])
    assert exc.value.code == 1
    assert "usage" in capsys.readouterr().err


def test_hilbert_weighted_lgr36(capsys):
    """Test the wLGr(3,6) series report"""
    code, report = run_json(capsys, "hilbert", "--variety", "lgr36", "--mu", "1,0,0", "--u", "2", "--expand", "3")
    assert code == 0
    out = report["outputs"]
    golden = [[e, format_rational(c)] for e, c in load_golden().coefficients()]
    assert out["numerator"] == golden
    assert out["canonical_degree"] == -8
    assert out["gorenstein_symmetric"] is True
    assert out["expansion"][:2] == [1, 5]


def test_hilbert_text(capsys):
    """Test the human-readable series report"""
    assert main(["hilbert", "--variety", "lgr36", "--mu", "0,0,0", "--u", "1"]) == 0
    out = capsys.readouterr().out
    assert "1-21t^2+64t^3-70t^4+70t^6-64t^7+21t^8-t^10" in out
    assert "K = O(-4)" in out


def test_hilbert_zero_weights_exit_1(capsys):
    """Test that zero ambient weights are rejected"""
    assert main(["hilbert", "--variety", "lgr36", "--mu", "0,0,0", "--u", "0"]) == 1
    err = capsys.readouterr().err
    assert err.startswith("Error:")
    assert "lambda_i" in err


def test_hilbert_is_deterministic(capsys):
    """Test identical reports apart from timing"""
    argv = ["hilbert", "--variety", "fl13", "--mu", "1,1,0,0", "--u", "0"]
    _, first = run_json(capsys, *argv)
    _, second = run_json(capsys, *argv)
    first.pop("elapsed_seconds")
    second.pop("elapsed_seconds")
    assert first == second


def test_construct_calabi_yau(capsys):
    """Test the wLGr(3,6) Calabi-Yau construction report"""
    code, report = run_json(
        capsys, "construct", "--variety", "lgr36", "--mu", "1,0,0", "--u", "2",
        "--ops", "section:3,section:3,section:2",
    )
    assert code == 0
    out = report["outputs"]
    assert out["canonical_degree"] == 0
    assert out["dim"] == 3
    assert out["invariants"]["degree"] == "64/9"
    assert out["threefold_class"] == "CY3"


def test_construct_fano(capsys):
    """Test a linear-section Fano report"""
    code, report = run_json(
        capsys, "construct", "--variety", "lgr36", "--mu", "0,0,0", "--u", "1",
        "--ops", "section:1,section:1,section:1",
    )
    assert code == 0
    assert report["outputs"]["invariants"]["genus"] == 9
    assert report["outputs"]["invariants"]["degree"] == "16/1"
    assert report["outputs"]["threefold_class"] == "Fano3"


def test_construct_ample_canonical_is_not_fano(capsys):
    """Test that a threefold with K = O(5) is labeled general"""
    code, report = run_json(
        capsys, "construct", "--variety", "lgr36", "--mu", "0,0,0", "--u", "1",
        "--ops", "section:3:general,section:3:general,section:3:general",
    )
    assert code == 0
    out = report["outputs"]
    assert out["canonical_degree"] == 5
    assert out["threefold_class"] == "general"
    assert out["invariants"]["genus"] is None
    assert out["invariants"]["degree"] == "432/1"


def test_construct_reports_failing_op(capsys):
    """Test the op index in construction errors"""
    code = main(["construct", "--variety", "lgr36", "--mu", "0,0,0", "--u", "1", "--ops", "section:1,cone:1,section:5"])
    assert code == 1
    assert "Operation 3" in capsys.readouterr().err


def test_search_report(capsys):
    """Test the CY3 search report and its determinism across job counts"""
    argv = ["search", "--variety", "lgr36", "--mu-bound", "1", "--u-bound", "2", "--max-sections", "3", "--max-cones", "0"]
    code, one = run_json(capsys, *argv, "--jobs", "1")
    assert code == 0
    _, two = run_json(capsys, *argv, "--jobs", "2")
    assert one["outputs"] == two["outputs"]
    assert any(c["mu"] == [1, 0, 0] and c["u"] == 2 for c in one["outputs"])
    assert all(c["notes"] == ["candidate, unverified singularities"] for c in one["outputs"])


def test_fl13_search_report_ignores_jobs(capsys):
    """Test the fl13 cone and section search report for one and two workers"""
    argv = ["search", "--variety", "fl13", "--mu-bound", "1", "--u-bound", "1", "--max-sections", "4", "--max-cones", "1"]
    code, one = run_json(capsys, *argv, "--jobs", "1")
    assert code == 0
    _, two = run_json(capsys, *argv, "--jobs", "2")
    assert one["outputs"] == two["outputs"]
    assert ["cone:1", "section:3", "section:2", "section:2"] in [c["ops"] for c in one["outputs"]]


def test_verify_reference_suite(capsys):
    """Test the reference-threefold suite"""
    code, report = run_json(capsys, "verify", "--suite", "paper")
    assert code == 0
    suite = report["outputs"][0]
    assert suite["passed"] is True
    assert all(c["passed"] for c in suite["checks"] if c["hard"])


def test_verify_compact_suite(capsys):
    """Test the closed-form grid suite"""
    code, report = run_json(capsys, "verify", "--suite", "compact")
    assert code == 0
    checks = {c["name"]: c for c in report["outputs"][0]["checks"]}
    assert checks["lgr36 compact form on the grid"]["passed"]
    assert not checks["lgr36 literal compact form"]["hard"]


@pytest.mark.slow
def test_verify_appendix_suite(capsys):
    """Test the Groebner suite"""
    code, report = run_json(capsys, "verify", "--suite", "appendix")
    assert code == 0
    assert report["outputs"][0]["passed"] is True


@pytest.mark.slow
def test_groebner_command(capsys):
    """Test the Groebner report for the weighted LGr(3,6) equations"""
    code, report = run_json(capsys, "groebner", "--ideal", "lgr36", "--weights", "cy_lgr36")
    assert code == 0
    out = report["outputs"]
    assert out["num_generators"] == 21
    assert out["matches_closed_form"] is True


def test_groebner_rejects_x10_weight_three(capsys):
    """Test the inhomogeneous weight table"""
    assert main(["groebner", "--ideal", "fl13", "--weights", "cy_fl13_b_x10"]) == 1
    assert "B5" in capsys.readouterr().err


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
