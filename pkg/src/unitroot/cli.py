"""
unitroot command line.

    unitroot COMMAND --p P [options]

One entry point for every pipeline. Artifacts (JSON or CSV) go to stdout,
logs and diagnostics to stderr.

Exit codes:
    0  success / PASS
    1  usage or data error, or a failed identity check
    2  probe ran and recorded findings
"""

import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence

import click
from pydantic import ValidationError

from unitroot.config import COMMANDS, RunConfig, load_settings, parse_weights
from unitroot.errors import ErrorSeverity
from unitroot.logger import configure_logging, get_logger
from unitroot.registry import get_registry
from unitroot.trace_store import TraceStore

logger = get_logger("cli")

_FIELD_FLAGS = {
    "lam": "--lambda",
    "max_deg": "--max-deg",
    "analytic_unit_root": "--analytic-unit-root",
}


def _flag(field_name: str) -> str:
    return _FIELD_FLAGS.get(field_name, "--" + field_name.replace("_", "-"))


def _weights_option(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[List[int]]:
    if value is None:
        return None
    try:
        return parse_weights(value)
    except ValueError:
        raise click.BadParameter(f"expected a..b or a comma list, got {value!r}")


def _report_validation(exc: ValidationError) -> None:
    for error in exc.errors():
        location = ", ".join(_flag(str(part)) for part in error["loc"])
        message = error["msg"].removeprefix("Value error, ")
        click.echo(f"Error: {location + ': ' if location else ''}{message}", err=True)


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.argument("command", type=click.Choice(COMMANDS))
@click.option("--p", "p", type=int, required=True, help="Odd prime p.")
@click.option("--k", "k", type=int, help="Weight exponent k.")
@click.option("--k1", type=int, help="First weight of a congruence check.")
@click.option("--k2", type=int, help="Second weight of a congruence check.")
@click.option("--weights", callback=_weights_option, help="Weight range a..b or list a,b,c.")
@click.option("--m", "m", type=int, help="Congruence level m.")
@click.option("--tdeg", type=int, help="N: truncation degree in T.")
@click.option("--prec", type=int, help="M: work modulo p^M.")
@click.option("--max-deg", "max_deg", type=int, help="Largest closed-point degree in the trace table.")
@click.option("--smax", help="Slope bound s_max (A for avg-bound), rational like 3/2.")
@click.option("--lambda", "lam", help="Fiber parameter, dot digits constant term first (e.g. 2.1).")
@click.option("--deg", type=int, default=1, show_default=True, help="Degree of the field holding --lambda.")
@click.option("--on", "on", type=click.Choice(["L", "D"]), default="L", show_default=True,
              help="Object of a congruence check.")
@click.option("--cache", type=click.Path(file_okay=False), help="Trace-table cache directory.")
@click.option("--out", type=click.Choice(["json", "csv"]), help="Artifact format.")
@click.option("--jobs", type=int, help="Workers for the fiber sweep.")
@click.option("--analytic-unit-root", "analytic_unit_root", is_flag=True,
              help="Unit roots from the hypergeometric formula.")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="Settings file.")
def workbench(command: str, config_path: Optional[str], **options: Any) -> int:
    """Unit-root L-functions and Fredholm determinants of the Legendre family."""
    settings = load_settings(config_path)
    configure_logging(
        level=settings.logging.level,
        colors=settings.logging.logging_colors,
        rich_tracebacks=settings.logging.rich_tracebacks,
        show_traceback_locals=settings.logging.show_traceback_locals,
    )

    defaults = settings.defaults
    for name in ("tdeg", "prec", "jobs", "out"):
        if options[name] is None:
            options[name] = getattr(defaults, name)
    if options["max_deg"] is None:
        options["max_deg"] = max(options["tdeg"], 1)
    options["analytic_unit_root"] = (
        bool(options["analytic_unit_root"]) or settings.features.analytic_unit_root
    )

    try:
        config = RunConfig(command=command, **options)
    except ValidationError as exc:
        _report_validation(exc)
        return 1

    for warning in config.envelope_warnings(settings):
        logger.warning(f"⚠️  {warning}")

    cache_dir = Path(config.cache).expanduser() if config.cache else settings.cache_dir
    store = TraceStore(
        cache_dir,
        compute_missing=settings.cache.compute_missing,
        jobs=config.jobs,
        table_degree=config.max_deg,
    )
    capability = get_registry().get_capability(command)

    logger.info(f"🚀 {command} p={config.p}")
    try:
        context = capability.run(config, store)
        rendered = context.render(config.out)
    except Exception as exc:
        classification = capability.classify_error(exc, {"command": command})
        if classification.severity is ErrorSeverity.CRITICAL:
            logger.exception(f"❌ {command} failed")
        click.echo(f"Error: {classification.user_message}", err=True)
        return 1

    click.echo(rendered, nl=False)
    logger.info(f"🏁 {command}: {context.status}")
    return context.exit_code


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    try:
        result = workbench.main(
            args=list(argv) if argv is not None else None,
            prog_name="unitroot",
            standalone_mode=False,
        )
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        return 1
    return int(result or 0)


def main() -> None:
    sys.exit(run())
