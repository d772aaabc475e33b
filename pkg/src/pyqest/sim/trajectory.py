from dataclasses import dataclass

import numpy as np
import polars as pl
import pyarrow as pa

from ..exceptions import ValidationError
from ..qmat.projector import PureState

SCHEMA_VERSION = 1

COLUMNS = [
    "t",
    "y_true",
    "y_meas",
    "r11",
    "r22",
    "r33",
    "r12",
    "r13",
    "r23",
    "rh11",
    "rh22",
    "rh33",
    "rh12",
    "rh13",
    "rh23",
    "omega12_hat",
    "omega23_hat",
    "fidelity",
]


def sample_row(
    t: float,
    y_true: float,
    y_meas: float,
    rho: np.ndarray,
    rho_hat: np.ndarray,
    omega12_hat: float,
    omega23_hat: float,
) -> list[float]:
    return [
        t,
        y_true,
        y_meas,
        rho[0, 0],
        rho[1, 1],
        rho[2, 2],
        rho[0, 1],
        rho[0, 2],
        rho[1, 2],
        rho_hat[0, 0],
        rho_hat[1, 1],
        rho_hat[2, 2],
        rho_hat[0, 1],
        rho_hat[0, 2],
        rho_hat[1, 2],
        omega12_hat,
        omega23_hat,
        float(np.sum(rho * rho_hat)),
    ]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled run of plant and observer plus the terminal states of the run."""

    frame: pl.DataFrame
    final_rho: PureState
    final_rho_hat: PureState

    def __post_init__(self):
        if self.frame.columns != COLUMNS:
            raise ValidationError(f"trajectory columns must be {COLUMNS}.")
        t = self.frame["t"].to_numpy()
        if t.size > 1 and not np.all(np.diff(t) > 0.0):
            raise ValidationError("trajectory times must be strictly increasing.")
        fid = self.frame["fidelity"].to_numpy()
        if fid.size and (fid.min() < -1e-9 or fid.max() > 1.0 + 1e-9):
            raise ValidationError("trajectory fidelity left [0, 1].")

    @classmethod
    def from_rows(
        cls, rows: list[list[float]], final_rho: PureState, final_rho_hat: PureState
    ) -> "Trajectory":
        data = np.asarray(rows, dtype=float).reshape(-1, len(COLUMNS))
        frame = pl.DataFrame(
            {name: data[:, i] for i, name in enumerate(COLUMNS)},
            schema={name: pl.Float64 for name in COLUMNS},
        )
        return cls(frame=frame, final_rho=final_rho, final_rho_hat=final_rho_hat)

    def __len__(self) -> int:
        return self.frame.height

    def column(self, name: str) -> np.ndarray:
        return self.frame[name].to_numpy()

    @property
    def times(self) -> np.ndarray:
        return self.column("t")

    def rho_at(self, i: int, hat: bool = False) -> np.ndarray:
        prefix = "rh" if hat else "r"
        row = self.frame.row(i, named=True)
        e = [row[f"{prefix}{ij}"] for ij in ("11", "22", "33", "12", "13", "23")]
        return np.array(
            [[e[0], e[3], e[4]], [e[3], e[1], e[5]], [e[4], e[5], e[2]]]
        )

    def between(self, t_start: float, t_end: float) -> pl.DataFrame:
        return self.frame.filter(
            (pl.col("t") >= t_start - 1e-12) & (pl.col("t") <= t_end + 1e-12)
        )

    def concat(self, other: "Trajectory") -> "Trajectory":
        return Trajectory(
            frame=pl.concat([self.frame, other.frame], how="vertical"),
            final_rho=other.final_rho,
            final_rho_hat=other.final_rho_hat,
        )

    def to_polars(self) -> pl.DataFrame:
        return self.frame

    def to_arrow(self) -> pa.Table:
        table = self.frame.to_arrow()
        return table.replace_schema_metadata(
            {"pyqest.schema_version": str(SCHEMA_VERSION)}
        )
