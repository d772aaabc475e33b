from typing import List, Optional

import typer

from pyqest.cli.config import load_config
from pyqest.filesystem import ArtifactStore
from pyqest.sim import handoff_sensitivity
from pyqest.utils.table import to_csv

app = typer.Typer()


@app.command()
def main(
    config: Optional[str] = typer.Option(None, "--config"),
    offsets: List[float] = typer.Option(
        [-0.1, -0.05, -0.02, 0.0, 0.02, 0.05, 0.1], "--offset"
    ),
    out: str = typer.Option("out/handoff", "--out"),
):
    """Final Ω̂23 when phase 2 receives a perturbed Ω12 instead of the phase-1 estimate."""
    cfg = load_config(config)
    frame = handoff_sensitivity(cfg.scenario, offsets)
    store = ArtifactStore(out)
    store.stage_text("handoff_sensitivity.csv", to_csv(frame))
    store.commit()
    typer.echo(frame)


if __name__ == "__main__":
    app()
