import functools
from typing import List, Optional

import typer
from fsspec.utils import infer_storage_options

from ..analysis.checks import (
    AnalysisReport,
    Check,
    averaging_check,
    demodulation_check,
    linearization_check,
    lyapunov_check,
    rwa_check,
)
from ..analysis.demodulation import predicted_times
from ..exceptions import ConfigError, RegimeViolation
from ..filesystem.base import ArtifactStore
from ..filesystem.fs import fsspec_filesystem
from ..sim.montecarlo import monte_carlo, results_frame
from ..sim.pipeline import TwoStepEstimation
from ..sim.trajectory import SCHEMA_VERSION
from ..utils.logging import get_logger, log_decorator
from ..utils.table import to_csv, to_parquet_bytes
from .config import RunConfig, config_to_dict, load_config
from .plots import estimates_svg, output_svg

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_CHECK_FAILED = 4

logger = get_logger(__name__)

app = typer.Typer(
    help="Two-step estimation of the Rabi amplitudes of a three-level system.",
    no_args_is_help=True,
)


def exit_code_for(error: BaseException) -> int:
    if isinstance(error, (ConfigError, RegimeViolation, OSError)):
        return EXIT_CONFIG
    if isinstance(error, ArithmeticError):
        return EXIT_NUMERICAL
    if isinstance(error, ValueError):
        return EXIT_CONFIG
    return EXIT_ERROR


def _store(cfg: RunConfig) -> ArtifactStore:
    return ArtifactStore(cfg.output_dir)


@log_decorator(show_arguments=False)
def cmd_estimate(cfg: RunConfig) -> int:
    """Single two-step run: trajectory, summary and optional plots."""
    s = cfg.scenario
    trajectory, result = TwoStepEstimation(s).run()
    t12, t23 = predicted_times(s.gains12, s.gains23, s.plant)

    store = _store(cfg)
    store.stage_text("trajectory.csv", to_csv(trajectory.to_polars()))
    if cfg.output_format == "parquet":
        store.stage_bytes("trajectory.parquet", to_parquet_bytes(trajectory.to_arrow()))
    store.stage_toml(
        "summary.toml",
        {
            "schema_version": SCHEMA_VERSION,
            "result": result.to_dict(),
            "predicted": {"t12": t12, "t23": t23},
            "config": config_to_dict(cfg),
        },
    )
    if cfg.emit_plots:
        store.stage_text("estimates.svg", estimates_svg(trajectory, s.plant, s.sim.t1_end))
        store.stage_text("output.svg", output_svg(trajectory))
    store.commit()
    return EXIT_OK


@log_decorator(show_arguments=False)
def cmd_sweep(
    cfg: RunConfig, n: int, seed0: int, jobs: int = 1, progress: bool = True
) -> int:
    """Monte Carlo sweep: one sweep.csv row per seed plus median/IQR statistics."""
    results, summary = monte_carlo(cfg.scenario, n, seed0, jobs=jobs, progress=progress)

    store = _store(cfg)
    store.stage_text("sweep.csv", to_csv(results_frame(results)))
    store.stage_toml(
        "summary.toml",
        {
            "schema_version": SCHEMA_VERSION,
            "n_runs": n,
            "seed0": seed0,
            "n_failed": sum(not r.ok for r in results),
            "statistics": {
                row["metric"]: {k: v for k, v in row.items() if k != "metric"}
                for row in summary.iter_rows(named=True)
            },
            "config": config_to_dict(cfg),
        },
    )
    store.commit()
    return EXIT_OK


def run_check(cfg: RunConfig, which: Check) -> AnalysisReport:
    s = cfg.scenario
    which = Check(which)
    if which == Check.AVERAGING:
        return averaging_check(g=s.gains12, omega12=s.plant.omega12)
    if which == Check.LINEARIZATION:
        return linearization_check(g=s.gains12)
    if which == Check.LYAPUNOV:
        return lyapunov_check(g=s.gains12)
    if which == Check.DEMODULATION:
        return demodulation_check(p=s.plant)
    return rwa_check(
        lp=cfg.rwa.params, u12=cfg.rwa.u12, u23=cfg.rwa.u23, horizon=cfg.rwa.horizon
    )


@log_decorator(show_arguments=False)
def cmd_analyze(cfg: RunConfig, which: Check) -> int:
    """Runs one analysis check and writes its report; exit 4 when it fails."""
    report = run_check(cfg, which)
    store = _store(cfg)
    store.stage_toml(f"analysis_{report.name}.toml", report.to_dict())
    store.commit()
    if not report.passed:
        logger.warning(f"analysis check {report.name} failed: {report.measured}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def _load(
    config: Optional[str],
    out: Optional[str],
    seed: Optional[int],
    noise_output: Optional[float],
    noise_input: Optional[float],
    plots: Optional[bool],
    assignments: Optional[List[str]] = None,
) -> RunConfig:
    filesystem, path = None, None
    if config is not None:
        options = infer_storage_options(config)
        filesystem = fsspec_filesystem(options["protocol"])
        path = options["path"]
    return load_config(path, filesystem, assignments or ()).with_overrides(
        out=out,
        seed=seed,
        noise_output=noise_output,
        noise_input=noise_input,
        plots=plots,
    )


def _guarded(func):
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            code = func(*args, **kwargs)
        except typer.Exit:
            raise
        except Exception as e:
            typer.echo(f"error: {type(e).__name__}: {e}", err=True)
            raise typer.Exit(code=exit_code_for(e))
        raise typer.Exit(code=code)

    return wrapper


ConfigOption = typer.Option(None, "--config", help="TOML config of dotted keys.")
OutOption = typer.Option(None, "--out", help="Output directory (any fsspec URL).")
SeedOption = typer.Option(None, "--seed", min=0, help="Noise seed.")
NoiseOutputOption = typer.Option(None, "--noise-output", min=0.0, help="Output noise std.")
NoiseInputOption = typer.Option(None, "--noise-input", min=0.0, help="Actuator noise std.")
PlotsOption = typer.Option(None, "--plots/--no-plots", help="Write SVG plots.")
SetOption = typer.Option(
    None, "--set", help="Override one config key, e.g. --set gains12.epsilon=0.2."
)


@app.command()
@_guarded
def estimate(
    config: Optional[str] = ConfigOption,
    out: Optional[str] = OutOption,
    seed: Optional[int] = SeedOption,
    noise_output: Optional[float] = NoiseOutputOption,
    noise_input: Optional[float] = NoiseInputOption,
    plots: Optional[bool] = PlotsOption,
    set_: Optional[List[str]] = SetOption,
):
    """Run phase 1 then phase 2 once and write trajectory.csv and summary.toml."""
    return cmd_estimate(
        _load(config, out, seed, noise_output, noise_input, plots, set_)
    )


@app.command()
@_guarded
def sweep(
    n: int = typer.Option(20, "--n", min=1, help="Number of runs."),
    config: Optional[str] = ConfigOption,
    out: Optional[str] = OutOption,
    seed: Optional[int] = typer.Option(None, "--seed", min=0, help="First seed."),
    noise_output: Optional[float] = NoiseOutputOption,
    noise_input: Optional[float] = NoiseInputOption,
    jobs: int = typer.Option(1, "--jobs", min=1, help="Concurrent runs."),
    set_: Optional[List[str]] = SetOption,
):
    """Monte Carlo sweep over seeds seed .. seed + n - 1."""
    cfg = _load(config, out, seed, noise_output, noise_input, None, set_)
    seed0 = seed if seed is not None else cfg.scenario.seed
    return cmd_sweep(cfg, n, seed0, jobs=jobs)


@app.command()
@_guarded
def analyze(
    which: Check = typer.Argument(..., help="Check to run."),
    config: Optional[str] = ConfigOption,
    out: Optional[str] = OutOption,
    set_: Optional[List[str]] = SetOption,
):
    """Run one analysis check and write analysis_<which>.toml."""
    return cmd_analyze(_load(config, out, None, None, None, None, set_), which)


@app.command("validate-rwa")
@_guarded
def validate_rwa(
    config: Optional[str] = ConfigOption,
    out: Optional[str] = OutOption,
    set_: Optional[List[str]] = SetOption,
):
    """Same as ``analyze rwa``."""
    return cmd_analyze(_load(config, out, None, None, None, None, set_), Check.RWA)


if __name__ == "__main__":
    app()
