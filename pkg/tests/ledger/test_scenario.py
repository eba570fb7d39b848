from pathlib import Path

import pytest

from ledger.scenario import load_scenario, parse_scenario, run_scenario, scenario_paths
from models.models import ScenarioKind

SCENARIO_DIR = Path(__file__).resolve().parents[2] / "scenarios"

WILES = """
# comment line
[scenario]
name = small
kind = wiles
expected = 1   # trailing comment

[global]
h0_global = 1
h0_global_dual = 0

[place]
label = p
dim_L = 4
h0 = 2

[place]
label = inf
dim_L = 0
h0 = 2

[flags]
zeta_not_cyclotomic = yes
"""

EULER = """
[scenario]
name = euler
kind = euler_p
expected = 5

[params]
h0 = 2
h2 = 0
dim = 3
"""

MALFORMED = [
    "name = orphan",
    "[scenario]\nname = x\nkind = wiles\nexpected = 1",
    "[scenario]\nname = x\nkind = selmer\nexpected = 1",
    "[scenario]\nname = x\nkind = euler_p\nexpected = one",
    "[scenario]\nname = x\nkind = euler_p\n[scenario]\nname = y",
    "[scenario]\nname = x\nname = y",
    "[scenario]\nname = x\nkind = euler_p\nexpected = 1\n[extras]",
    "[scenario]\nname = x\nkind = euler_p\nexpected = 1\n[place]\nlabel = p\ndim_L = 1\nh0 = 0",
    "[scenario]\nname = x\nkind = euler_p\nexpected = 1\njust words",
    "[global]\nh0_global = 0",
    WILES.replace("zeta_not_cyclotomic = yes", "zeta_not_cyclotomic = maybe"),
]


def test_golden_files_exist():
    names = [path.stem for path in scenario_paths(SCENARIO_DIR)]
    assert "selmer_difference" in names
    assert "trivial_prime_p5_v11" in names
    assert names == sorted(names)


@pytest.mark.parametrize("path", scenario_paths(SCENARIO_DIR), ids=lambda path: path.stem)
def test_golden_scenarios_pass(path):
    response = run_scenario(load_scenario(path))
    assert response.passed, f"got {response.value}, expected {response.expected}"


def test_parse_wiles():
    file = parse_scenario(WILES)
    assert ScenarioKind.wiles == file.kind
    assert "small" == file.claim
    assert [1] == file.expected
    assert ["p", "inf"] == [place.label for place in file.scenario.places]
    assert {"zeta_not_cyclotomic": True} == file.scenario.flags

    response = run_scenario(file)
    assert response.passed
    assert [2, -2] == [c.contribution for c in response.contributions]


def test_run_euler():
    response = run_scenario(parse_scenario(EULER))
    assert [5] == response.value
    assert response.passed


def test_corrupted_expectation_fails():
    response = run_scenario(parse_scenario(EULER.replace("expected = 5", "expected = 6")))
    assert not response.passed
    assert [5] == response.value


def test_missing_parameter():
    with pytest.raises(ValueError):
        run_scenario(parse_scenario(EULER.replace("dim = 3", "")))


@pytest.mark.parametrize("text", MALFORMED)
def test_malformed_scenarios(text):
    with pytest.raises(ValueError):
        parse_scenario(text)


def test_tangent_scenario_reports_dimensions():
    response = run_scenario(load_scenario(SCENARIO_DIR / "tangent_indecomposable.scn"))
    assert [2, 3, 1, 4] == response.value
    assert 0 == response.tangent.h0_ad0


def test_tangent_scenario_from_h0():
    text = """
[scenario]
name = tangent_h0
kind = tangent_p
expected = 3, 4, 2, 5

[params]
h0_ad0 = 1
"""
    response = run_scenario(parse_scenario(text))
    assert response.passed
    assert "split" == response.tangent.case.value
