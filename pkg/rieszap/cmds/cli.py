from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Callable, NoReturn, Optional, Tuple

import click

from rieszap import __version__
from rieszap.util.checks import SCENARIOS, EstimateChecker, ScenarioReport
from rieszap.util.circle_set import build_S_alpha
from rieszap.util.config import Settings, load_config
from rieszap.util.errors import InvalidInputError, ResourceLimitError, SearchExhaustedError
from rieszap.util.export import (
    write_arc_csv,
    write_counting_csv,
    write_gram_csv,
    write_json,
    write_profile_csv,
    write_report_csv,
)
from rieszap.util.multiplicity import nu_profile
from rieszap.util.riesz_bounds import block, gram

CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])
LOG_FORMAT = "%(asctime)s %(name)s: %(levelname)s %(message)s"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

EXPORT_KINDS = ("set", "gram", "profile", "report", "counting")


def settings_options(f: Callable[..., Any]) -> Callable[..., Any]:
    options = [
        click.option(
            "-c",
            "--config",
            type=click.Path(exists=True, dir_okay=False),
            default=None,
            help="YAML file with settings; flags given on the command line win",
        ),
        click.option("-a", "--alpha", type=float, default=None, help="Exponent alpha in (0, 1). Default: 0.5"),
        click.option("-e", "--eps", type=float, default=None, help="Removed-measure budget eps in (0, 1/4). Default: 0.2"),
        click.option("-b", "--beta", type=float, default=None, help="Lemma 1 step exponent in [0, alpha). Default: 0.25"),
        click.option("--c0", type=float, default=None, help="Arc constant c0. Default: 0.99 eps / (2 zeta(1/alpha))"),
        click.option(
            "-p",
            "--prime",
            type=int,
            multiple=True,
            help="Prime to check; repeat for several. Replaces every scenario's prime list. Default: 5 7 11 13",
        ),
        click.option("-L", "--trunc-L", "trunc_L", type=int, default=None, help="Truncation level of S_alpha. Default: 200"),
        click.option("-s", "--seed", type=int, default=None, help="Seed of the random-vector oracle. Default: 0"),
        click.option("-g", "--gram-cap", type=int, default=None, help="Largest Gram dimension. Default: 4096"),
        click.option("-m", "--m-max", type=int, default=None, help="Largest block translation tried. Default: 10000"),
        click.option(
            "--search-mode",
            type=click.Choice(["linear", "coarse"]),
            default=None,
            help="Translation search: every M in turn, or strides then bisection. Default: linear",
        ),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def build_settings(
    config: Optional[str],
    prime: Tuple[int, ...] = (),
    **flags: Any,
) -> Settings:
    settings = load_config(config).with_overrides(**flags)
    if prime:
        settings = settings.with_overrides(
            primes=prime,
            lemma5_primes=prime,
            lemma8_primes=prime,
            uniting_primes=prime,
        )
    return settings


def print_report(report: ScenarioReport) -> None:
    for check in report.checks:
        if check.informational:
            status = "INFO"
        else:
            status = "PASS" if check.passed else "FAIL"
        line = "[%s] %s" % (status, check.name)
        if check.value is not None:
            line += ": %.6g" % check.value
        if check.bound is not None:
            line += " (bound %.6g)" % check.bound
        print(line)
    if report.reduced_scale:
        print("Scenario ran at reduced scale; see the report disclosures")
    failures = report.failures()
    if failures:
        print("{} of {} checks failed".format(len(failures), len(report.checks)))
    else:
        print("All {} checks passed in {:.2f}s".format(len(report.checks), report.wall_time))


def _fail(ctx: click.Context, message: str, code: int) -> NoReturn:
    print(message)
    ctx.exit(code)


@click.group(
    help="\n  Riesz bounds of exponential systems over arc sets on the circle \n",
    context_settings=CONTEXT_SETTINGS,
)
@click.version_option(__version__)
@click.option("-v", "--verbose", is_flag=True, default=False, help="Log progress of the library")
@click.pass_context
def cli(ctx: click.Context, verbose: bool) -> None:
    ctx.ensure_object(dict)
    if verbose:
        logging.basicConfig(level=logging.DEBUG, format=LOG_FORMAT)


@cli.command("run-check", short_help="Run one lemma scenario and report its checks")
@click.argument("scenario", nargs=1, required=True, type=click.Choice(SCENARIOS))
@settings_options
@click.option(
    "-f",
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    help="Format of the report file. Default: json",
)
@click.option("-o", "--output", type=click.Path(), default=None, help="Write the report to this file")
@click.pass_context
def run_check_cmd(
    ctx: click.Context,
    scenario: str,
    config: Optional[str] = None,
    prime: Tuple[int, ...] = (),
    fmt: str = "json",
    output: Optional[str] = None,
    **flags: Any,
) -> None:
    """
    \b
    SCENARIO is one of the lemma checks, e.g. lemma8 or uniting-blocks
    """
    try:
        settings = build_settings(config, prime, **flags)
        report = EstimateChecker(settings).run(scenario)
    except ResourceLimitError as e:
        _fail(ctx, "Resource limit: {}".format(e), EXIT_RESOURCE)
    except SearchExhaustedError as e:
        _fail(ctx, "Search exhausted: {}".format(e), EXIT_FAILED)
    except InvalidInputError as e:
        _fail(ctx, "Invalid input: {}".format(e), EXIT_USAGE)

    print_report(report)
    if output is not None:
        try:
            if fmt == "json":
                write_json(output, report.to_json_dict())
            else:
                write_report_csv(output, report)
        except OSError as e:
            _fail(ctx, "Cannot write {}: {}".format(output, e), EXIT_USAGE)
        print("Report written to {}".format(output))
    ctx.exit(EXIT_OK if report.passed else EXIT_FAILED)


@cli.command("export", short_help="Write a set, Gram matrix, profile, report or counting table")
@click.argument("kind", nargs=1, required=True, type=click.Choice(EXPORT_KINDS))
@click.argument("output", nargs=1, required=True, type=click.Path())
@settings_options
@click.option(
    "-f",
    "--format",
    "fmt",
    type=click.Choice(["json", "csv"]),
    default="json",
    help="Output format. Default: json (counting tables are always csv)",
)
@click.option("-l", "--ell", type=int, default=2, help="Modulus of the multiplicity profile. Default: 2")
@click.option(
    "--scenario",
    type=click.Choice(SCENARIOS),
    default="lemma8",
    help="Scenario whose report is exported. Default: lemma8",
)
@click.pass_context
def export_cmd(
    ctx: click.Context,
    kind: str,
    output: str,
    config: Optional[str] = None,
    prime: Tuple[int, ...] = (),
    fmt: str = "json",
    ell: int = 2,
    scenario: str = "lemma8",
    **flags: Any,
) -> None:
    """
    \b
    KIND is what to write: set, gram, profile, report or counting
    OUTPUT is the path of the file to write
    """
    try:
        settings = build_settings(config, prime, **flags)
        checker = EstimateChecker(settings)
        if kind == "report":
            report = checker.run(scenario)
            if fmt == "json":
                write_json(output, report.to_json_dict())
            else:
                write_report_csv(output, report)
        elif kind == "counting":
            write_counting_csv(output, checker.counting_rows())
        else:
            spec = checker.spec()
            S = build_S_alpha(spec, settings.arc_cap)
            if kind == "set":
                if fmt == "json":
                    payload = spec.to_json_dict()
                    payload.update(S.to_json_dict())
                    write_json(output, payload)
                else:
                    write_arc_csv(output, S)
            elif kind == "gram":
                G = gram(block(settings.primes[0], settings.alpha), S, settings.gram_cap)
                if fmt == "json":
                    write_json(output, G.to_json_dict())
                else:
                    write_gram_csv(output, G)
            else:
                profile = nu_profile(S, ell)
                if fmt == "json":
                    write_json(output, profile.to_json_dict())
                else:
                    write_profile_csv(output, profile)
    except ResourceLimitError as e:
        _fail(ctx, "Resource limit: {}".format(e), EXIT_RESOURCE)
    except SearchExhaustedError as e:
        _fail(ctx, "Search exhausted: {}".format(e), EXIT_FAILED)
    except InvalidInputError as e:
        _fail(ctx, "Invalid input: {}".format(e), EXIT_USAGE)
    except OSError as e:
        _fail(ctx, "Cannot write {}: {}".format(output, e), EXIT_USAGE)
    print("Successfully exported {} to {}".format(kind, Path(output)))


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
