import polars as pl
import pyarrow as pa
import pyarrow.parquet as pq

SIGNIFICANT_DIGITS = 12


def to_arrow(table: pa.Table | pl.DataFrame) -> pa.Table:
    if isinstance(table, pl.DataFrame):
        return table.to_arrow()
    return table


def format_significant(
    frame: pl.DataFrame, digits: int = SIGNIFICANT_DIGITS
) -> pl.DataFrame:
    """Float columns rendered as decimal strings with ``digits`` significant digits."""
    floats = [name for name, dtype in frame.schema.items() if dtype in (pl.Float32, pl.Float64)]
    return frame.with_columns(
        [
            pl.col(name).map_elements(
                lambda v: f"{v:.{digits}g}", return_dtype=pl.Utf8
            )
            for name in floats
        ]
    )


def to_csv(frame: pl.DataFrame, digits: int = SIGNIFICANT_DIGITS) -> str:
    """CSV text with a header row and fixed significant-digit floats."""
    return format_significant(frame, digits).write_csv()


def to_parquet_bytes(table: pa.Table | pl.DataFrame) -> bytes:
    sink = pa.BufferOutputStream()
    pq.write_table(to_arrow(table), sink)
    return sink.getvalue().to_pybytes()
