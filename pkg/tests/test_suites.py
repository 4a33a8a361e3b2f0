from __future__ import annotations

import pytest

from gerstkit.suites import SUITES, RunConfig, run_suite, run_verify


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(trials=0)
    with pytest.raises(ValueError):
        RunConfig(grade_bound=0)
    with pytest.raises(ValueError):
        RunConfig(suites=("bogus",)).selected()
    assert RunConfig().selected() == list(SUITES)


def test_each_suite_passes_action_algebroid(sl2_action):
    cfg = RunConfig(trials=10, seed=3)
    for name in SUITES:
        rep = run_suite(name, sl2_action, cfg)
        assert rep.passed, rep.to_text()


def test_report_prefixes(std2):
    rep = run_verify(RunConfig(suites=("gerstenhaber", "canonical"), trials=5), std2)
    assert {c.name.split("/")[0] for c in rep.checks} == {"gerstenhaber", "canonical"}
    assert rep.seed == 0 and "elapsed_s" not in rep.to_dict()
    assert "elapsed_s" in rep.to_dict(timing=True)
