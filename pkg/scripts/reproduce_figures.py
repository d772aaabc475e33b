from typing import List, Optional

import typer

from pyqest.analysis import Check
from pyqest.cli.app import EXIT_OK, cmd_analyze, cmd_estimate, cmd_sweep
from pyqest.cli.config import load_config
from pyqest.utils.logging import get_logger

app = typer.Typer()
logger = get_logger("reproduce_figures")


@app.command()
def main(
    configs: List[str] = typer.Argument(
        ["configs/reference.toml", "configs/reference_noisy.toml"]
    ),
    sweep_runs: int = typer.Option(20, "--sweep-runs", min=0),
    jobs: int = typer.Option(1, "--jobs", min=1),
    out: Optional[str] = typer.Option(None, "--out"),
):
    """Estimates with plots for every config, a noisy sweep and all analysis checks."""
    codes = []
    for path in configs:
        cfg = load_config(path)
        if out is not None:
            name = path.rsplit("/", 1)[-1].removesuffix(".toml")
            cfg = cfg.with_overrides(out=f"{out}/{name}")
        cfg = cfg.with_overrides(plots=True)
        codes.append(cmd_estimate(cfg))
        if cfg.scenario.noisy and sweep_runs:
            codes.append(
                cmd_sweep(
                    cfg.with_overrides(out=f"{cfg.output_dir}/sweep"),
                    sweep_runs,
                    cfg.scenario.seed,
                    jobs=jobs,
                )
            )

    checks = load_config(None).with_overrides(out=f"{out or 'out'}/analysis")
    for which in Check:
        codes.append(cmd_analyze(checks, which))

    failed = [c for c in codes if c != EXIT_OK]
    if failed:
        logger.warning(f"{len(failed)} steps did not succeed.")
    raise typer.Exit(code=max(codes, default=EXIT_OK))


if __name__ == "__main__":
    app()
