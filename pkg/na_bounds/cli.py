#!/usr/bin/env python3
"""
Command-line interface for na_bounds using Typer and Rich.

Commands:
- eval: evaluate one bound at one deviation level
- sweep: evaluate the configured bounds over an x grid and write CSV
- validate: run the Monte Carlo validation matrix and write a CSV report
- compare: rank the configured bounds per x
- status: versions, active configuration and the bound registry

Exit codes are a stable contract: 0 success, 1 validation finding,
2 configuration error, 3 domain or numerical error.
"""

import contextlib
import logging
import sys
import time
from pathlib import Path
from typing import Annotated, Iterator, List, Optional, Tuple

import typer
from rich.console import Console
from rich.table import Table

from na_bounds.core.bounds import BoundResult
from na_bounds.core.config import NABoundsConfig, get_config, set_config
from na_bounds.core.errors import ConfigurationError, NABoundsError, config_validation_error
from na_bounds.core.experiment import ExperimentConfig
from na_bounds.core.registry import (
    BOUND_REGISTRY,
    BoundSelection,
    applicable_bounds,
    evaluate_bound,
    rank_results,
    safe_evaluate,
)
from na_bounds.core.validation import VALIDATION_COLUMNS, BoundTransform, run_validation
from na_bounds.formats import (
    SWEEP_COLUMNS,
    ComparisonTableFormatter,
    CsvFormatter,
    comparison_rows,
    write_atomic,
)
from na_bounds.formats.table import COMPARISON_COLUMNS
from na_bounds.types import ExitCode

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="na-bounds",
    help="Maximal tail bounds for sums of negatively associated random variables",
    rich_markup_mode="rich",
    no_args_is_help=True,
    context_settings={"help_option_names": ["-h", "--help"]},
)

console = Console()

# Hook applied to every bound before the validation domination check; tests
# set it to inject a corrupted bound.
BOUND_TRANSFORM: Optional[BoundTransform] = None

ConfigOption = Annotated[Path, typer.Option("--config", "-c", help=" Experiment file (JSON or YAML)")]
OutOption = Annotated[Optional[Path], typer.Option("--out", "-o", help=" Output file path")]
ThreadsOption = Annotated[
    Optional[int], typer.Option("--threads", help=" Worker threads (never changes results)")
]


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else format(float(value), ".17g")


@contextlib.contextmanager
def _exit_codes() -> Iterator[None]:
    """Map the error hierarchy onto the exit-code contract."""
    try:
        yield
    except ConfigurationError as e:
        logger.error(f"configuration error: {e}")
        console.print(f"[ERROR] {e}", style="bold red", markup=False)
        raise typer.Exit(ExitCode.CONFIG_ERROR.value) from e
    except NABoundsError as e:
        logger.error(f"{e.error_code}: {e.message}")
        console.print(f"[ERROR] {e}", style="bold red", markup=False)
        raise typer.Exit(ExitCode.DOMAIN_ERROR.value) from e


def _load(config_path: Path) -> ExperimentConfig:
    return ExperimentConfig.from_file(config_path)


def _selections(config: ExperimentConfig, bound: Optional[str]) -> List[BoundSelection]:
    """Configured selections, narrowed to ``bound`` (an id or a label) when given."""
    if bound is None:
        if not config.bounds:
            raise config_validation_error("bounds", None, "no bounds configured")
        return list(config.bounds)
    matches = [s for s in config.bounds if bound in (s.id, s.label)]
    if matches:
        return matches
    if bound not in BOUND_REGISTRY:
        raise config_validation_error("bound", bound, f"unknown bound id; known: {', '.join(BOUND_REGISTRY)}")
    return [BoundSelection(bound)]


def _resolve_out(out: Optional[Path], config: ExperimentConfig) -> Optional[Path]:
    if out is not None:
        return out
    if config.run.out is None:
        return None
    if config.source is not None and not config.run.out.is_absolute():
        return config.source.parent / config.run.out
    return config.run.out


def _emit(content: str, out: Optional[Path], what: str) -> None:
    if out is None:
        typer.echo(content, nl=False)
        return
    write_atomic(out, content)
    console.print(f"[SUCCESS] {what} written to {out}", style="bold green", markup=False)


def _result_table(label: str, result: BoundResult) -> Table:
    table = Table(title=f" {label}", show_header=True, header_style="bold magenta")
    table.add_column("Field", style="cyan", no_wrap=True)
    table.add_column("Value", style="green")
    table.add_row("family", result.family.value)
    for key, value in result.chosen_params.items():
        table.add_row(key, _fmt(value) if isinstance(value, float) else str(value))
    for key, value in result.inputs.items():
        table.add_row(f"input {key}", _fmt(value) if isinstance(value, float) else str(value))
    table.add_row("raw_value", _fmt(result.raw_value))
    table.add_row("clipped_value", _fmt(result.clipped_value))
    if result.flags:
        table.add_row("flags", ", ".join(result.flags))
    return table


@app.command("eval")
def cmd_eval(
    config_path: ConfigOption,
    bound: Annotated[str, typer.Option("--bound", "-b", help=" Bound id or label")],
    x: Annotated[float, typer.Option("--x", help=" Total deviation x")],
) -> None:
    """
    Evaluate one bound at one deviation level.

    Prints the family, the chosen free parameters and the raw and clipped values.
    """
    with _exit_codes():
        config = _load(config_path)
        selection = _selections(config, bound)[0]
        result = evaluate_bound(selection.id, x, config.summary(), selection.params)
        console.print(_result_table(selection.label, result))


def sweep_rows(config: ExperimentConfig, selections: List[BoundSelection], grid: Tuple[float, ...]) -> List[list]:
    """One row per (x, bound), x-major, in the configured bound order."""
    summary = config.summary()
    rows = []
    for x in grid:
        for selection in selections:
            result = evaluate_bound(selection.id, x, summary, selection.params)
            rows.append(
                [
                    x,
                    selection.label,
                    result.chosen_params.get("alpha"),
                    result.chosen_params.get("y"),
                    result.raw_value,
                    result.clipped_value,
                ]
            )
    return rows


@app.command("sweep")
def cmd_sweep(
    config_path: ConfigOption,
    out: OutOption = None,
    bound: Annotated[Optional[str], typer.Option("--bound", "-b", help=" Restrict to one bound")] = None,
    x: Annotated[Optional[float], typer.Option("--x", help=" Restrict to one x")] = None,
) -> None:
    """
    Evaluate the configured bounds over the x grid and write a CSV.

    Columns: x, bound, alpha, y, raw_value, clipped_value.
    """
    with _exit_codes():
        config = _load(config_path)
        selections = _selections(config, bound)
        grid = (x,) if x is not None else config.run.x_grid
        rows = sweep_rows(config, selections, grid)
        formatter = CsvFormatter(SWEEP_COLUMNS, digits=get_config().csv_digits)
        _emit(formatter.format(rows), _resolve_out(out, config), f"{len(rows)} sweep rows")


@app.command("validate")
def cmd_validate(
    config_path: ConfigOption,
    out: OutOption = None,
    reps: Annotated[Optional[int], typer.Option("--reps", help=" Monte Carlo replicates")] = None,
    seed: Annotated[Optional[int], typer.Option("--seed", help=" Master seed")] = None,
    threads: ThreadsOption = None,
) -> None:
    """
    Run the Monte Carlo validation matrix.

    Exits 0 when every check passes and 1 when any finding is reported.
    """
    with _exit_codes():
        config = _load(config_path).with_overrides(reps=reps, master_seed=seed, threads=threads)
        set_config(config.runtime_config())
        started = time.perf_counter()
        outcome = run_validation(config, bound_transform=BOUND_TRANSFORM)
        elapsed = time.perf_counter() - started
        logger.info(f"validation finished in {elapsed:.2f}s (reps={config.run.reps}, seed={config.run.master_seed})")

        formatter = CsvFormatter(VALIDATION_COLUMNS, digits=get_config().csv_digits)
        _emit(formatter.format([row.as_list() for row in outcome.rows]), _resolve_out(out, config), "validation report")

    for name, reason in outcome.skipped.items():
        console.print(f"[SKIPPED] {name}: {reason}", style="yellow", markup=False)
    if outcome.findings:
        for finding in outcome.findings:
            console.print(f"[FINDING] {finding}", style="bold red", markup=False)
        raise typer.Exit(ExitCode.FINDING.value)
    console.print(f"[PASSED] {len(outcome.rows)} rows, no findings", style="bold green", markup=False)


@app.command("compare")
def cmd_compare(
    config_path: ConfigOption,
    out: OutOption = None,
    x: Annotated[Optional[float], typer.Option("--x", help=" Restrict to one x")] = None,
) -> None:
    """
    Rank the configured bounds by raw value at each x.

    The tightest bound is marked; equal values are reported as ties.
    """
    with _exit_codes():
        config = _load(config_path)
        if len(config.bounds) < 2:
            raise config_validation_error("bounds", len(config.bounds), "compare needs at least two bounds")
        summary = config.summary()
        selections, skipped = applicable_bounds(summary, config.bounds)
        grid = (x,) if x is not None else config.run.x_grid

        rows = []
        for x_value in grid:
            evaluated = []
            for selection in selections:
                result, reason = safe_evaluate(selection, x_value, summary)
                if result is None:
                    console.print(f"[SKIPPED] {selection.label} at x={x_value:g}: {reason}", style="yellow", markup=False)
                    continue
                evaluated.append((selection.label, result))
            rows.extend(comparison_rows(x_value, rank_results(evaluated)))

        for name, reason in skipped.items():
            console.print(f"[SKIPPED] {name}: {reason}", style="yellow", markup=False)
        console.print(ComparisonTableFormatter().build_table(rows))

        if out is not None:
            csv_rows = [[*row[:6], row[6] or None] for row in rows]
            formatter = CsvFormatter(COMPARISON_COLUMNS, digits=get_config().csv_digits)
            _emit(formatter.format(csv_rows), out, "comparison")


@app.command("status")
def show_status(
    save: Annotated[
        Optional[Path], typer.Option("--save", help=" Write the active configuration to a JSON or YAML file")
    ] = None,
) -> None:
    """
    Show versions, the active configuration and the bound registry.
    """
    import platform

    import numpy
    import scipy

    import na_bounds

    system_table = Table(title=" System Information", show_header=True, header_style="bold cyan")
    system_table.add_column("Component", style="cyan", no_wrap=True)
    system_table.add_column("Version", style="green")
    system_table.add_row("Python", platform.python_version())
    system_table.add_row("na-bounds", na_bounds.__version__)
    system_table.add_row("NumPy", numpy.__version__)
    system_table.add_row("SciPy", scipy.__version__)
    console.print(system_table)

    config_table = Table(title=" Current Configuration", show_header=True, header_style="bold magenta")
    config_table.add_column("Setting", style="cyan", no_wrap=True)
    config_table.add_column("Value", style="green")
    for key, value in get_config().to_dict().items():
        config_table.add_row(key, str(value))
    console.print(config_table)

    registry_table = Table(title=" Bound Registry", show_header=True, header_style="bold magenta")
    registry_table.add_column("Id", style="cyan", no_wrap=True)
    registry_table.add_column("Family")
    registry_table.add_column("Statistic")
    registry_table.add_column("Needs")
    registry_table.add_column("Description")
    for bound_id, spec in BOUND_REGISTRY.items():
        registry_table.add_row(
            bound_id,
            spec.family.value,
            spec.statistic.value if spec.statistic else "-",
            ", ".join(sorted(spec.required_functionals)),
            spec.description,
        )
    console.print(registry_table)

    if save is not None:
        with _exit_codes():
            get_config().save_to_file(save)
        console.print(f"[SUCCESS] configuration written to {save}", style="bold green", markup=False)


def _show_version(value: bool) -> None:
    if value:
        import na_bounds

        console.print(f"na-bounds v{na_bounds.__version__}")
        raise typer.Exit()


@app.callback()
def main(
    version: Annotated[
        bool, typer.Option("--version", help="Show version", callback=_show_version, is_eager=True)
    ] = False,
    verbose: Annotated[bool, typer.Option("--verbose", "-v", help=" Debug logging")] = False,
    quiet: Annotated[bool, typer.Option("--quiet", "-q", help=" Quiet mode")] = False,
    settings: Annotated[
        Optional[Path], typer.Option("--settings", "-s", help=" Run-wide defaults file (JSON or YAML)")
    ] = None,
) -> None:
    """
    na-bounds - maximal tail bounds for negatively associated sums.

    Evaluate, sweep, compare and Monte Carlo validate bound families from an
    experiment file with sections model, distributions, bounds and run.
    """
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    if quiet:
        console.quiet = True
    if settings is not None:
        with _exit_codes():
            set_config(NABoundsConfig.from_file(settings))
        logger.debug(f"loaded settings from {settings}")


def cli_main() -> None:
    """entry point for the CLI application"""
    try:
        logging.basicConfig(
            level=logging.INFO,
            format="%(asctime)s - %(levelname)s - %(message)s",
        )
        app()
    except KeyboardInterrupt:
        console.print("\n[CANCELLED] Operation cancelled by user", style="bold red", markup=False)
        sys.exit(1)


if __name__ == "__main__":
    cli_main()
