"""Main qfeedback processing pipeline and command line interface"""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple
import logging
import sys

from . import __version__
from .config import DEFAULT_WORKERS, TOLERANCES, Tolerances
from .protocol import ConvergenceReport, EstimateStrategy, compare_strategies, residual_convergence
from .scenarios import (
    DEFAULT_THETA,
    PRESET_DESCRIPTIONS,
    PRESET_FILES,
    MonteCarloSettings,
    ScenarioSpec,
    SigmaSweep,
    SweepResult,
    emit_csv,
    get_preset,
    load_scenario,
    run_sweep,
)


@dataclass
class ProcessingResult:
    """Complete result of processing one scenario"""
    spec: ScenarioSpec
    sweep: SweepResult
    convergence: ConvergenceReport
    csv_text: str
    saved_path: Optional[Path] = None


class SweepProcessor:
    """
    Orchestrates the scenario pipeline: load, uncertainty analysis,
    sigma sweep, convergence diagnostics and CSV emission.
    """

    def __init__(self, workers: int = DEFAULT_WORKERS, tolerances: Tolerances = TOLERANCES):
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.workers = workers
        self.tolerances = tolerances
        self.logger = logging.getLogger(__name__)

    def load(
        self,
        scenario_file: Optional[Path] = None,
        preset: Optional[str] = None,
        theta: float = DEFAULT_THETA,
    ) -> ScenarioSpec:
        """Scenario from a document or a built-in preset (exactly one)"""
        if (scenario_file is None) == (preset is None):
            raise ValueError("give either a scenario file or a preset name")
        if scenario_file is not None:
            self.logger.info(f"Loading scenario file: {scenario_file}")
            return load_scenario(scenario_file)
        self.logger.info(f"Building preset: {preset} (theta = {theta:.6g})")
        return get_preset(preset, theta)  # type: ignore[arg-type]

    def process(self, spec: ScenarioSpec, output: Optional[Path] = None) -> ProcessingResult:
        try:
            self.logger.info(f"Step 1: Sweeping {spec.sweep.points} sigma points for {spec.name!r}...")
            sweep = run_sweep(spec, workers=self.workers, cross_check=self.tolerances.cross_check)
            header = sweep.header
            self.logger.info(
                f"epsilon^2 = {header.epsilon_squared:.12g}, Delta A^2 = {header.variance:.12g} "
                f"({spec.strategy.value} estimates)"
            )
            for entry in header.weak_values.entries:
                if entry.anomalous:
                    self.logger.warning(f"Outcome {entry.label!r} has anomalous weak value {entry.real:.9g}")

            self.logger.info("Step 2: Checking small-sigma convergence...")
            convergence = residual_convergence(spec.state, spec.observable, spec.povm, spec.estimates)
            self.logger.info(f"Residual ratios under sigma halving: {list(convergence.ratios)}")

            self.logger.info("Step 3: Writing CSV...")
            csv_text = emit_csv(sweep.rows, header)

            saved_path = None
            if output is not None:
                output.parent.mkdir(parents=True, exist_ok=True)
                output.write_text(csv_text, encoding="utf-8")
                saved_path = output
                self.logger.info(f"Saved CSV to: {saved_path}")

            return ProcessingResult(
                spec=spec,
                sweep=sweep,
                convergence=convergence,
                csv_text=csv_text,
                saved_path=saved_path,
            )

        except Exception as e:
            self.logger.error(f"Error processing scenario {spec.name!r}: {e}")
            raise

    def compare(self, spec: ScenarioSpec) -> List[Tuple[EstimateStrategy, float]]:
        """epsilon^2 under each built-in estimate strategy"""
        self.logger.info(f"Comparing estimate strategies for {spec.name!r}")
        return compare_strategies(spec.state, spec.observable, spec.povm)


def apply_overrides(
    spec: ScenarioSpec,
    sigma_start: Optional[float] = None,
    sigma_stop: Optional[float] = None,
    sigma_points: Optional[int] = None,
    strategy: Optional[str] = None,
    mc_shots: Optional[int] = None,
    seed: Optional[int] = None,
) -> ScenarioSpec:
    """Command line overrides on top of a loaded scenario"""
    sweep = None
    if sigma_start is not None or sigma_stop is not None or sigma_points is not None:
        base = spec.sweep
        sweep = SigmaSweep(
            start=base.start if sigma_start is None else sigma_start,
            stop=base.stop if sigma_stop is None else sigma_stop,
            points=base.points if sigma_points is None else sigma_points,
            spacing=base.spacing,
        )

    monte_carlo = None
    if mc_shots is not None or seed is not None:
        current = spec.monte_carlo
        if mc_shots is None and current is None:
            raise ValueError("--seed needs --mc-shots when the scenario has no Monte Carlo settings")
        monte_carlo = MonteCarloSettings(
            shots=mc_shots if mc_shots is not None else current.shots,  # type: ignore[union-attr]
            seed=seed if seed is not None else (current.seed if current else 0),
        )

    return spec.with_overrides(
        sweep=sweep,
        strategy=EstimateStrategy(strategy) if strategy else None,
        monte_carlo=monte_carlo,
    )


def configure_logging(verbose: bool = False) -> None:
    from rich.console import Console
    from rich.logging import RichHandler

    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def main():
    """Main CLI entry point for qfeedback"""
    import click
    from rich.console import Console
    from rich.markup import escape
    from rich.table import Table

    from .errors import QFeedbackError

    console = Console()
    err_console = Console(stderr=True)

    def fail(e: Exception) -> None:
        err_console.print(f"[red]✗ Error:[/red] {escape(str(e))}", soft_wrap=True)
        sys.exit(1)

    def print_summary(result: ProcessingResult) -> None:
        header = result.sweep.header
        table = Table(title=f"Scenario {header.name} ({header.strategy.value} estimates)")
        table.add_column("Outcome", style="cyan")
        table.add_column("p(m)", justify="right")
        table.add_column("A(m)", justify="right", style="green")
        table.add_column("Re WV", justify="right")
        table.add_column("Im WV", justify="right")
        table.add_column("Contribution", justify="right")
        table.add_column("Flags")
        for entry in header.weak_values.entries:
            flags = [name for name, on in (("degenerate", entry.degenerate), ("anomalous", entry.anomalous)) if on]
            table.add_row(
                str(entry.label),
                f"{entry.probability:.6g}",
                f"{header.estimates[entry.label]:.6g}",
                f"{entry.real:.6g}",
                f"{entry.imag:.6g}",
                f"{header.uncertainty.contributions[entry.label]:.6g}",
                ", ".join(flags),
            )
        err_console.print(table)
        err_console.print(f"[bold]epsilon^2:[/bold] {header.epsilon_squared:.12g}")
        err_console.print(f"[bold]Delta A^2:[/bold] {header.variance:.12g}   [dim]<A> = {header.mean:.6g}[/dim]")
        ratios = ", ".join(f"{r:.4g}" for r in result.convergence.ratios)
        expected = ", ".join(f"{r:.4g}" for r in result.convergence.expected_ratios)
        err_console.print(f"[dim]Residual ratios (sigma halving):[/dim] {ratios} [dim](sigma^4 law: {expected})[/dim]")
        if result.saved_path:
            err_console.print(f"[green]✓ Saved:[/green] {result.saved_path} ({len(result.sweep.rows)} rows)")

    @click.group(invoke_without_command=True)
    @click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
    @click.version_option(version=__version__)
    @click.pass_context
    def cli(ctx, verbose):
        """qfeedback - measurement-conditioned feedback compensation of probe decoherence"""
        configure_logging(verbose)
        if ctx.invoked_subcommand is None:
            console.print("[yellow]No command specified. Use --help to see available commands.[/yellow]")
            console.print("[dim]Quick start: qfeedback run --preset xbasis-theta[/dim]")

    def resolve(processor: SweepProcessor, scenario_file: Optional[str], preset: Optional[str], theta: Optional[float]) -> ScenarioSpec:
        if (scenario_file is None) == (preset is None):
            raise click.UsageError("give either SCENARIO_FILE or --preset NAME")
        if theta is not None and preset is None:
            logging.getLogger(__name__).warning("--theta only applies to presets; ignored")
        return processor.load(
            Path(scenario_file) if scenario_file else None,
            preset,
            DEFAULT_THETA if theta is None else theta,
        )

    preset_choice = click.Choice(sorted(PRESET_DESCRIPTIONS))

    @cli.command()
    @click.argument("scenario_file", required=False, type=click.Path(exists=True, dir_okay=False))
    @click.option("--preset", type=preset_choice, help="Built-in scenario instead of a file")
    @click.option("--theta", type=float, help="State angle for the xbasis-theta preset (default pi/8)")
    @click.option("--sigma-start", type=float, help="First coupling strength")
    @click.option("--sigma-stop", type=float, help="Last coupling strength")
    @click.option("--sigma-points", type=click.IntRange(min=1), help="Number of sigma points")
    @click.option("--estimates", type=click.Choice([s.value for s in EstimateStrategy]), help="Estimate strategy override")
    @click.option("--mc-shots", type=click.IntRange(min=1), help="Monte Carlo shots per sigma point")
    @click.option("--seed", type=click.IntRange(0, 2**64 - 1), help="Monte Carlo seed")
    @click.option("--output", "-o", type=click.Path(dir_okay=False), help="CSV output file (default stdout)")
    @click.option("--workers", "-w", type=click.IntRange(min=1), default=DEFAULT_WORKERS, show_default=True, help="Threads for sigma points")
    def run(scenario_file, preset, theta, sigma_start, sigma_stop, sigma_points, estimates, mc_shots, seed, output, workers):
        """Sweep sigma for a scenario and write the CSV"""
        processor = SweepProcessor(workers=workers)
        try:
            spec = resolve(processor, scenario_file, preset, theta)
            spec = apply_overrides(spec, sigma_start, sigma_stop, sigma_points, estimates, mc_shots, seed)
            result = processor.process(spec, Path(output) if output else None)
        except (QFeedbackError, ValueError) as e:
            fail(e)
            return

        if result.saved_path is None:
            click.echo(result.csv_text, nl=False)
        print_summary(result)

    @cli.command(name="list-presets")
    def list_presets():
        """Show the built-in scenarios"""
        table = Table(title="Built-in scenarios")
        table.add_column("Name", style="cyan")
        table.add_column("Shipped file", style="green")
        table.add_column("Description")
        for name, description in PRESET_DESCRIPTIONS.items():
            table.add_row(name, PRESET_FILES.get(name, "(generated)"), description)
        console.print(table)

    @cli.command()
    @click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
    def validate(scenario_file):
        """Parse and validate a scenario document"""
        try:
            spec = load_scenario(Path(scenario_file))
        except (QFeedbackError, ValueError) as e:
            fail(e)
            return
        console.print(
            f"[green]✓ Valid:[/green] {escape(spec.name)} (dimension {spec.dimension}, "
            f"{len(spec.povm)} outcomes, {spec.strategy.value} estimates, {spec.sweep.points} sigma points)",
            soft_wrap=True,
        )

    @cli.command()
    @click.argument("scenario_file", required=False, type=click.Path(exists=True, dir_okay=False))
    @click.option("--preset", type=preset_choice, help="Built-in scenario instead of a file")
    @click.option("--theta", type=float, help="State angle for the xbasis-theta preset (default pi/8)")
    def compare(scenario_file, preset, theta):
        """Compare epsilon^2 across estimate strategies"""
        processor = SweepProcessor()
        try:
            spec = resolve(processor, scenario_file, preset, theta)
            rows = processor.compare(spec)
        except (QFeedbackError, ValueError) as e:
            fail(e)
            return

        best = min(eps2 for _, eps2 in rows)
        table = Table(title=f"Estimate strategies for {spec.name}")
        table.add_column("Strategy", style="cyan")
        table.add_column("epsilon^2", justify="right", style="green")
        for strategy, eps2 in rows:
            marker = " [bold]*[/bold]" if abs(eps2 - best) <= TOLERANCES.hermitian else ""
            table.add_row(strategy.value, f"{eps2:.12g}{marker}")
        console.print(table)

    return cli


def cli_main():
    """Entry point for the CLI script"""
    cli = main()
    cli()


if __name__ == "__main__":
    cli_main()
