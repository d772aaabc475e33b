import multiprocessing
from concurrent.futures import ProcessPoolExecutor

import polars as pl
from tqdm import tqdm

from ..exceptions import PyqestError
from ..utils.logging import get_logger, log_decorator
from .config import Scenario
from .metrics import EstimationResult
from .pipeline import TwoStepEstimation

logger = get_logger(__name__)

SUMMARY_COLUMNS = ["rel_err12", "rel_err23", "tconv12", "tconv23"]


def _run_seed(args: tuple[Scenario, int]) -> EstimationResult:
    scenario, seed = args
    try:
        return TwoStepEstimation(scenario.with_seed(seed)).run()[1]
    except (PyqestError, ArithmeticError, ValueError) as e:
        return EstimationResult.failed(seed, scenario.noisy, str(e))


def results_frame(results: list[EstimationResult]) -> pl.DataFrame:
    """One row per run, in seed order."""
    return pl.DataFrame(
        [r.to_dict() for r in results],
        schema={
            "omega12_hat_final": pl.Float64,
            "omega23_hat_final": pl.Float64,
            "rel_err12": pl.Float64,
            "rel_err23": pl.Float64,
            "tconv12": pl.Float64,
            "tconv23": pl.Float64,
            "seed": pl.UInt64,
            "noisy": pl.Boolean,
            "status": pl.Utf8,
        },
    )


def summarize(results: list[EstimationResult]) -> pl.DataFrame:
    """Median and interquartile range of errors and convergence times over the ok runs."""
    ok = results_frame(results).filter(pl.col("status") == "ok")
    rows = []
    for name in SUMMARY_COLUMNS:
        col = ok[name].drop_nulls()
        if col.len() == 0:
            rows.append({"metric": name, "n": 0, "median": None, "iqr": None})
            continue
        q1 = col.quantile(0.25, interpolation="linear")
        q3 = col.quantile(0.75, interpolation="linear")
        rows.append(
            {
                "metric": name,
                "n": col.len(),
                "median": col.median(),
                "iqr": q3 - q1,
            }
        )
    return pl.DataFrame(
        rows,
        schema={
            "metric": pl.Utf8,
            "n": pl.Int64,
            "median": pl.Float64,
            "iqr": pl.Float64,
        },
    )


@log_decorator(show_arguments=False)
def monte_carlo(
    scenario: Scenario,
    n_runs: int,
    seed0: int,
    jobs: int = 1,
    progress: bool = True,
) -> tuple[list[EstimationResult], pl.DataFrame]:
    """Independent two-step runs with seeds ``seed0 .. seed0 + n_runs - 1``.

    Results come back in seed order whatever ``jobs`` is; failed runs are kept
    as rows whose status is not ``ok``.
    """
    if int(n_runs) != n_runs or n_runs < 1:
        raise ValueError(f"n_runs must be an integer >= 1, got {n_runs}.")
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}.")

    tasks = [(scenario, seed0 + i) for i in range(int(n_runs))]
    if jobs == 1:
        results = [
            _run_seed(task)
            for task in tqdm(tasks, desc="monte carlo", disable=not progress)
        ]
    else:
        # fork deadlocks once polars has started its thread pool
        with ProcessPoolExecutor(
            max_workers=jobs, mp_context=multiprocessing.get_context("spawn")
        ) as executor:
            results = list(
                tqdm(
                    executor.map(_run_seed, tasks),
                    total=len(tasks),
                    desc="monte carlo",
                    disable=not progress,
                )
            )

    n_failed = sum(not r.ok for r in results)
    if n_failed:
        logger.warning(f"{n_failed} of {len(results)} runs failed.")
    return results, summarize(results)
