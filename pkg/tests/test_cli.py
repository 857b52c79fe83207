from __future__ import annotations

import json
from typing import Dict, List

import numpy as np
import pytest
from click.testing import CliRunner, Result

from rieszap import __version__
from rieszap.cmds.cli import EXIT_FAILED, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, cli
from rieszap.util.checks import SCENARIOS
from rieszap.util.export import read_arc_csv, read_arc_set, read_counting_csv, read_gram_csv, read_gram_json
from rieszap.util.riesz_bounds import extremal_eigs


def invoke(args: List[str]) -> Result:
    runner = CliRunner()
    return runner.invoke(cli, args)


@pytest.mark.parametrize(
    "args",
    [
        ["run-check", "lemma8", "-p", "3"],
        ["run-check", "theorem4"],
        ["run-check", "corollary-pdivides", "-p", "5"],
    ],
)
def test_run_check_passes(args: List[str]) -> None:
    result = invoke(args)
    assert result.exit_code == EXIT_OK, result.output
    assert "checks passed" in result.output


def test_run_check_writes_json_report() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["run-check", "lemma8", "-p", "3", "-s", "2", "-o", "report.json"])
        assert result.exit_code == EXIT_OK, result.output
        with open("report.json") as f:
            report = json.load(f)
        assert report["schema"] == 1
        assert report["scenario"] == "lemma8"
        assert report["seed"] == 2
        assert report["parameters"]["lemma8_primes"] == [3]
        assert report["passed"] is True


def test_run_check_writes_csv_report() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["run-check", "lemma8", "-p", "3", "-f", "csv", "-o", "report.csv"])
        assert result.exit_code == EXIT_OK, result.output
        with open("report.csv") as f:
            assert f.readline().startswith("name,passed,value")


def test_config_file_is_honored() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        with open("settings.yaml", "w") as f:
            f.write("lemma8_primes: [3]\nlemma8_ell_max: 40\nlemma8_vectors: 2\n")
        result = runner.invoke(cli, ["run-check", "lemma8", "-c", "settings.yaml", "-o", "report.json"])
        assert result.exit_code == EXIT_OK, result.output
        with open("report.json") as f:
            report = json.load(f)
        assert report["parameters"]["lemma8_ell_max"] == 40
        assert report["parameters"]["lemma8_vectors"] == 2


SMALL_SETTINGS: Dict[str, str] = {
    "lemma1": "lemma1_sizes: [16, 64]\ntrunc_L: 100\n",
    "lemma4": "primes: [5]\ntrunc_L: 100\nsamples: 100\n",
    "lemma5": "lemma5_primes: [37]\nprimes: [5]\nlemma5_random: 1\n",
    "lemma6": "lemma6_prime_count: 2\n",
    "lemma7": "lemma7_sizes: [50, 100, 200]\nlemma7_grid: 65\nlemma7_farey: 10\nprimes: [5, 7]\n",
    "lemma8": "lemma8_primes: [3]\nlemma8_vectors: 2\nlemma8_ell_max: 40\n",
    "corollary-pdivides": "primes: [5]\nlemma5_random: 1\n",
    "theorem4": "theorem4_ells: [4, 6, 9]\nsamples: 100\n",
    "lemma9": "trunc_L: 30\n",
    "uniting-blocks": "uniting_primes: [5, 7]\nm_max: 1\ntrunc_L: 40\n",
}


@pytest.mark.parametrize("scenario", SCENARIOS)
def test_every_scenario_writes_json_report(scenario: str) -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        with open("settings.yaml", "w") as f:
            f.write(SMALL_SETTINGS[scenario])
        result = runner.invoke(cli, ["run-check", scenario, "-c", "settings.yaml", "-o", "report.json"])
        assert result.exception is None or isinstance(result.exception, SystemExit), result.output
        assert result.exit_code in (EXIT_OK, EXIT_FAILED), result.output
        with open("report.json") as f:
            report = json.load(f)
        assert report["scenario"] == scenario
        assert all(isinstance(check["passed"], bool) for check in report["checks"])
        assert report["passed"] == (result.exit_code == EXIT_OK)


def test_export_lemma7_report() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        with open("settings.yaml", "w") as f:
            f.write(SMALL_SETTINGS["lemma7"])
        result = runner.invoke(cli, ["export", "report", "report.json", "--scenario", "lemma7", "-c", "settings.yaml"])
        assert result.exit_code == EXIT_OK, result.output
        with open("report.json") as f:
            assert json.load(f)["scenario"] == "lemma7"


def test_malformed_config_exit_code() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        with open("settings.yaml", "w") as f:
            f.write("alpha: [0.5\n")
        result = runner.invoke(cli, ["run-check", "lemma8", "-c", "settings.yaml"])
        assert result.exit_code == EXIT_USAGE
        assert "Invalid input" in result.output


def test_invalid_input_exit_code() -> None:
    result = invoke(["run-check", "lemma1", "--beta", "0.9", "-L", "20"])
    assert result.exit_code == EXIT_USAGE
    assert "Invalid input" in result.output


def test_resource_limit_exit_code() -> None:
    result = invoke(["run-check", "lemma1", "--gram-cap", "8", "-L", "20"])
    assert result.exit_code == EXIT_RESOURCE
    assert "Resource limit" in result.output


def test_exhausted_search_exit_code() -> None:
    result = invoke(["run-check", "uniting-blocks", "-p", "5", "-p", "7", "-m", "1", "-L", "40"])
    assert result.exit_code == EXIT_FAILED
    assert "[FAIL] translation search" in result.output


def test_unknown_scenario() -> None:
    result = invoke(["run-check", "lemma2"])
    assert result.exit_code == EXIT_USAGE


def test_export_set() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["export", "set", "set.json", "-L", "30"])
        assert result.exit_code == EXIT_OK, result.output
        assert "Successfully exported set" in result.output
        S = read_arc_set("set.json")
        with open("set.json") as f:
            data = json.load(f)
        assert set(data) == {"arcs", "alpha", "eps", "c0", "L", "tail_bound"}
        assert data["L"] == 30
        assert data["alpha"] == 0.5
        assert len(data["arcs"]) == len(S)

        result = runner.invoke(cli, ["export", "set", "set.csv", "-f", "csv", "-L", "30"])
        assert result.exit_code == EXIT_OK, result.output
        T = read_arc_csv("set.csv")
        np.testing.assert_array_equal(S.starts, T.starts)
        np.testing.assert_array_equal(S.ends, T.ends)


def test_export_gram() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["export", "gram", "gram.csv", "-f", "csv", "-p", "5", "-L", "30"])
        assert result.exit_code == EXIT_OK, result.output
        result = runner.invoke(cli, ["export", "gram", "gram.json", "-p", "5", "-L", "30"])
        assert result.exit_code == EXIT_OK, result.output
        from_csv = read_gram_csv("gram.csv")
        from_json = read_gram_json("gram.json")
        assert from_csv.dim == 25
        assert from_json.frequencies is not None and len(from_json.frequencies) == 25
        assert extremal_eigs(from_csv) == pytest.approx(extremal_eigs(from_json))


def test_export_profile_and_counting() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["export", "profile", "profile.csv", "-f", "csv", "-l", "3", "-L", "20"])
        assert result.exit_code == EXIT_OK, result.output
        with open("profile.csv") as f:
            assert f.readline().strip() == "start,end,value"
        result = runner.invoke(cli, ["export", "counting", "counting.csv"])
        assert result.exit_code == EXIT_OK, result.output
        rows = read_counting_csv("counting.csv")
        assert {row["N"] for row in rows} == {100, 200, 400, 800}


def test_export_report() -> None:
    runner = CliRunner()
    with runner.isolated_filesystem():
        result = runner.invoke(cli, ["export", "report", "report.json", "--scenario", "theorem4"])
        assert result.exit_code == EXIT_OK, result.output
        with open("report.json") as f:
            assert json.load(f)["scenario"] == "theorem4"


def test_version() -> None:
    result = invoke(["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output
