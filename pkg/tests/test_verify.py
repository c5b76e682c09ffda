"""The named verification suites themselves."""

import pytest

from freeprob import verify


@pytest.mark.parametrize("suite", verify.SUITES)
def test_each_suite_passes(suite):
    report = verify.run_suite(suite)
    failed = [c for c in report["checks"] if not c["passed"]]
    assert not failed, failed


def test_all_runs_everything():
    report = verify.run_suite("all")
    assert report["total"] == len(verify._REGISTRY)
    assert {c["suite"] for c in report["checks"]} == set(verify.SUITES)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        verify.run_suite("nope")


def test_crashing_check_reports_failure(monkeypatch):
    import freeprob.psd

    def boom(*args, **kwargs):
        raise RuntimeError("injected")

    monkeypatch.setattr(freeprob.psd, "count_quadrangulations", boom)
    report = verify.run_suite("combinatorial")
    bad = [c for c in report["checks"] if c["name"] == "psd-quadrangulation-counts"]
    assert bad and not bad[0]["passed"]
    assert "injected" in bad[0]["detail"]
