from __future__ import annotations

import json
from fractions import Fraction

import pytest

from monopath.errors import ConfigError
from monopath.report import verify_report
from monopath.scenarios import (CATALOGUE, ScenarioConfig, config_from_values, list_scenarios,
                                parse_config, parse_config_text, run_scenario)
from monopath.vectors import E, AlphaSpec

NAMES = [info.name for info in list_scenarios()]


@pytest.fixture(scope="module")
def reports():
    return {name: run_scenario(ScenarioConfig(name)) for name in NAMES}


def test_catalogue_has_fourteen_scenarios():
    assert len(NAMES) == 14 == len(set(NAMES))
    assert all(info.anchor for info in CATALOGUE.values())


@pytest.mark.parametrize("name", NAMES)
def test_scenario_passes_and_verifies(reports, name):
    rep = reports[name]
    assert rep.ok, [c.name for c in rep.checks if not c.passed] + rep.errors
    data = json.loads(rep.to_json())
    assert verify_report(data) == []
    assert data["config"] == {"scenario": name, "alpha": "e", "N": 5, "seed": 0,
                              "tol": "1/10000", "format": "json"}


@pytest.mark.parametrize("name", NAMES)
def test_catalogue_entry_roundtrips(name):
    cfg = parse_config(CATALOGUE[name].to_text())
    assert cfg == ScenarioConfig(name)


def test_full_config_roundtrip(tmp_path):
    cfg = ScenarioConfig("ni-gap", AlphaSpec((2, Fraction(-1, 3)), 1), 7, 11, Fraction(1, 100),
                         "markdown", str(tmp_path / "r.md"))
    assert parse_config(cfg.to_text()) == cfg


def test_config_parser_comments_and_errors():
    assert parse_config_text("# c\n\nscenario = ni-gap  # trailing\n") == {"scenario": "ni-gap"}
    bad = ["scenario ni-gap", "color = red", "scenario = a\nscenario = b"]
    for text in bad:
        with pytest.raises(ConfigError):
            parse_config_text(text)


@pytest.mark.parametrize("values", [
    {},
    {"scenario": "nope"},
    {"scenario": "ni-gap", "trunc": "1"},
    {"scenario": "ni-gap", "trunc": "x"},
    {"scenario": "ni-gap", "tol": "0"},
    {"scenario": "ni-gap", "tol": "1/0"},
    {"scenario": "ni-gap", "seed": "1.5"},
    {"scenario": "ni-gap", "format": "yaml"},
    {"scenario": "ni-gap", "alpha": "1,2"},
    {"scenario": "ni-gap", "alpha": "1;0"},
])
def test_config_errors(values):
    with pytest.raises(ConfigError):
        config_from_values(values)


def test_precondition_becomes_structured_error():
    rep = run_scenario(ScenarioConfig("bc-simons-a4", alpha=AlphaSpec((2,), 1)))
    assert not rep.ok and rep.errors[0]["type"] == "PreconditionError"
    assert json.loads(rep.to_json())["errors"] == rep.errors


def test_alpha_vanishing_on_truncation_is_reported():
    rep = run_scenario(ScenarioConfig("ni-gap", alpha=AlphaSpec((0, 0, 0), 1), N=2))
    assert rep.errors and "raise N" in rep.errors[0]["message"]


@pytest.mark.parametrize("name", ["skewness", "transport", "james-norm", "fitzpatrick-indicator"])
def test_determinism(name):
    a = run_scenario(ScenarioConfig(name, seed=3)).to_json()
    b = run_scenario(ScenarioConfig(name, seed=3)).to_json()
    assert a == b


@pytest.mark.parametrize("alpha", [AlphaSpec((2,), 1), AlphaSpec((1,), -1), AlphaSpec((0, 3), 1)])
@pytest.mark.parametrize("name", ["ni-gap", "br-failure", "adjoint-nonmonotone", "sum-ni",
                                  "bc-simons-a2", "fitzpatrick-indicator"])
def test_scenarios_on_other_alphas(name, alpha):
    rep = run_scenario(ScenarioConfig(name, alpha=alpha, N=4))
    assert rep.ok, rep.errors
    assert verify_report(rep.to_dict()) == []


def test_out_file_written(tmp_path):
    out = tmp_path / "rep.json"
    rep = run_scenario(ScenarioConfig("ni-gap", out=str(out)))
    assert out.read_text(encoding="utf-8") == rep.to_json()
    assert "out" not in rep.config
