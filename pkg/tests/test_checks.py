from __future__ import annotations

from typing import Any

import pytest

from rieszap.util.checks import SCENARIOS, EstimateChecker, ScenarioReport, fit_truncation
from rieszap.util.config import Settings
from rieszap.util.errors import InvalidInputError
from rieszap.util.riesz_bounds import block
from rieszap.util.trig_poly import dilate, dirichlet

from tests.arc_factories import fejer_tail, quadrature_energy, quadrature_lowest_eig


def run(scenario: str, **overrides: Any) -> ScenarioReport:
    return EstimateChecker(Settings().with_overrides(**overrides)).run(scenario)


def names(report: ScenarioReport) -> list:
    return [c.name for c in report.checks]


def assert_passed(report: ScenarioReport) -> None:
    assert report.checks
    assert report.passed, [c.to_json_dict() for c in report.failures()]


def test_fit_truncation() -> None:
    assert fit_truncation(10, 55) == (10, False)
    assert fit_truncation(11, 55) == (10, True)


def test_unknown_scenario() -> None:
    with pytest.raises(InvalidInputError):
        EstimateChecker(Settings()).run("lemma2")


def test_lemma8_identity() -> None:
    report = run("lemma8", lemma8_primes=[3], lemma8_vectors=3, lemma8_ell_max=60)
    assert_passed(report)
    assert report.scenario == "lemma8"
    assert len(report.payload["rows"]) == 2
    assert report.payload["leak"] < 1e-12


def test_report_layout() -> None:
    report = run("lemma8", lemma8_primes=[3], lemma8_vectors=1, lemma8_ell_max=30, seed=4)
    data = report.to_json_dict()
    assert data["schema"] == 1
    assert data["seed"] == 4
    assert data["passed"] is True
    assert data["parameters"]["lemma8_primes"] == [3]
    assert data["parameters"]["c0_resolved"] == pytest.approx(EstimateChecker(Settings()).spec().c0)
    assert set(data["checks"][0]) == {"name", "passed", "value", "bound", "tolerance", "informational", "detail"}


def test_reports_are_deterministic() -> None:
    settings = dict(lemma8_primes=[3], lemma8_vectors=4, lemma8_ell_max=40, seed=7)
    first = run("lemma8", **settings).to_json_dict()
    second = run("lemma8", **settings).to_json_dict()
    del first["wall_time"], second["wall_time"]
    assert first == second


def test_theorem4() -> None:
    report = run("theorem4", theorem4_ells=[4, 6, 9], samples=100)
    assert_passed(report)
    assert len(report.payload["rows"]) == 3
    assert "half circle ell=3 not applicable" in names(report)


def test_lemma9() -> None:
    report = run("lemma9", trunc_L=30)
    assert_passed(report)
    assert len(report.payload["quarter"]) == len(Settings().lemma9_ks)


def test_corollary_pdivides() -> None:
    report = run("corollary-pdivides", primes=[5], lemma5_random=2)
    assert_passed(report)
    assert report.payload["zeta"] < 3.0


def test_lemma5() -> None:
    report = run("lemma5", lemma5_primes=[37], primes=[5], lemma5_random=2)
    assert_passed(report)
    assert {row["poly"] for row in report.payload["rows"]} == {"dirichlet", "random 0", "random 1"}
    assert report.payload["covering_violations"] == []
    for row in report.payload["rows"]:
        assert row["sum"] <= row["covering_bound"] + 1e-12
        assert row["covering_bound"] <= row["bound"] + 1e-12


def test_lemma5_rejects_composite() -> None:
    with pytest.raises(InvalidInputError):
        run("lemma5", lemma5_primes=[35], primes=[5])


def test_lemma6() -> None:
    report = run("lemma6", lemma6_prime_count=2)
    assert_passed(report)
    assert report.payload["primes"] == [3, 5]
    assert report.payload["d"] == 8


def test_lemma7() -> None:
    report = run("lemma7", lemma7_sizes=[50, 100, 200], lemma7_grid=65, lemma7_farey=10, primes=[5, 7])
    by_name = {c.name: c for c in report.checks}
    assert by_name["dyadic shells within 8 2^(k(rho-1)) N^(1-rho) + 1"].passed
    assert by_name["count nondecreasing in N"].passed
    assert by_name["count nonincreasing in rho"].passed
    overlap = [c for c in report.checks if c.name.startswith("p=")]
    assert len(overlap) == 2
    assert all(c.passed for c in overlap)


def test_counting_rows() -> None:
    checker = EstimateChecker(Settings().with_overrides(lemma7_sizes=[10, 20], lemma7_grid=5, lemma7_farey=2))
    rows = checker.counting_rows()
    assert len(rows) == 5 * 2
    assert {row["N"] for row in rows} == {10, 20}
    assert all(isinstance(row["count"], int) for row in rows)


def test_lemma1() -> None:
    report = run("lemma1", lemma1_sizes=[16, 64], lemma1_guard=0.9, trunc_L=100)
    assert_passed(report)
    assert [row["ell"] for row in report.payload["rows"]] == [2, 3]

    checker = EstimateChecker(Settings().with_overrides(trunc_L=100))
    spec = checker.spec()
    S = checker.s_alpha(spec)
    for row in report.payload["rows"]:
        Q = dilate(dirichlet(row["N"]), row["ell"])
        assert row["energy_outside"] == pytest.approx(fejer_tail(row["N"], spec.delta(row["ell"])), abs=1e-10)
        assert row["energy"] == pytest.approx(quadrature_energy(Q, S), abs=1e-9)


def test_lemma4() -> None:
    report = run("lemma4", primes=[5], trunc_L=100, samples=200)
    assert_passed(report)
    (row,) = report.payload["rows"]
    assert row["N_p"] == 25
    assert row["A"] > 0
    assert not report.reduced_scale
    assert report.disclosures["L"] == 125

    checker = EstimateChecker(Settings().with_overrides(primes=[5], trunc_L=100))
    S = checker.s_alpha(checker.spec(L=125))
    assert row["A"] == pytest.approx(quadrature_lowest_eig(block(5, 0.5).values, S, 0.02), abs=1e-9)


def test_lemma4_reduced_scale() -> None:
    report = run("lemma4", primes=[5], trunc_L=10, arc_cap=1000, samples=50)
    assert report.reduced_scale
    assert report.disclosures["L"] == 44


def test_uniting_blocks_reports_exhausted_search() -> None:
    report = run("uniting-blocks", uniting_primes=[5, 7], m_max=1, trunc_L=40)
    assert not report.passed
    assert report.checks[0].name == "translation search"
    assert report.payload["step"] == 2


def test_scenarios_listed() -> None:
    assert len(SCENARIOS) == 10
    assert "uniting-blocks" in SCENARIOS
