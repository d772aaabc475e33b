import io

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..plant.params import PlantParams  # noqa: E402
from ..sim.trajectory import Trajectory  # noqa: E402


def _to_svg(fig) -> str:
    buf = io.StringIO()
    with plt.rc_context({"svg.hashsalt": "pyqest", "svg.fonttype": "none"}):
        fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def estimates_svg(trajectory: Trajectory, p: PlantParams, t1_end: float) -> str:
    """Ω̂12(t) and Ω̂23(t) against the true values, phase boundary marked."""
    t = trajectory.times
    fig, ax = plt.subplots(figsize=[8, 4.5])
    ax.plot(t, trajectory.column("omega12_hat"), label=r"$\hat\Omega_{12}$")
    ax.plot(t, trajectory.column("omega23_hat"), label=r"$\hat\Omega_{23}$")
    ax.axhline(p.omega12, color="C0", linestyle="--", linewidth=0.8, label=r"$\Omega_{12}$")
    ax.axhline(p.omega23, color="C1", linestyle="--", linewidth=0.8, label=r"$\Omega_{23}$")
    ax.axvline(t1_end, color="grey", linestyle=":", linewidth=0.8)
    ax.set_xlabel("t")
    ax.set_ylabel("estimate")
    ax.grid(linestyle="--")
    ax.legend()
    fig.tight_layout()
    return _to_svg(fig)


def output_svg(trajectory: Trajectory) -> str:
    """Measured and true output with the observer prediction Tr(P1 ρ̂)."""
    t = trajectory.times
    fig, ax = plt.subplots(figsize=[8, 4.5])
    ax.plot(t, trajectory.column("y_meas"), linewidth=0.6, alpha=0.6, label=r"$y_{meas}$")
    ax.plot(t, trajectory.column("y_true"), label=r"$y$")
    ax.plot(
        t,
        np.clip(trajectory.column("rh11"), 0.0, 1.0),
        linestyle="--",
        label=r"$\hat y$",
    )
    ax.set_xlabel("t")
    ax.set_ylabel("population of level 1")
    ax.grid(linestyle="--")
    ax.legend()
    fig.tight_layout()
    return _to_svg(fig)
