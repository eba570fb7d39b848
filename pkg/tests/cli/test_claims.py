from pathlib import Path

from cli.claims import (
    SCENARIO_DIR,
    conjugation_identities,
    hull_step,
    ledger_scenarios,
    oracle_equivalence,
    stabilization_fails_k1,
    suite,
)


def test_ledger_scenarios_pass():
    results = ledger_scenarios(SCENARIO_DIR)
    assert len(list(SCENARIO_DIR.glob("*.scn"))) == len(results)
    assert all(r.passed for r in results)


def test_corrupted_scenario_is_reported(tmp_path):
    text = (SCENARIO_DIR / "balanced_ad0.scn").read_text(encoding="utf-8")
    (tmp_path / "balanced_ad0.scn").write_text(text.replace("expected = 0", "expected = 3"), encoding="utf-8")
    (tmp_path / "broken.scn").write_text("[scenario]\nname = broken\nkind = nothing\n", encoding="utf-8")
    results = ledger_scenarios(tmp_path)
    assert ["ledger balanced_ad0", "ledger broken"] == [r.claim for r in results]
    assert not any(r.passed for r in results)
    assert results[1].detail.startswith("error:")


def test_empty_scenario_directory(tmp_path: Path):
    (result,) = ledger_scenarios(tmp_path)
    assert not result.passed


def test_single_claims():
    assert conjugation_identities().passed
    assert stabilization_fails_k1().passed
    assert hull_step().passed
    assert oracle_equivalence(count=6).passed


def test_suite_order():
    assert 8 == len(suite())
