import logging

import polars as pl
import pyarrow as pa
import pyarrow.parquet as pq
import pytest

from pyqest.filesystem import ArtifactStore
from pyqest.filesystem.fs import fsspec_dir_filesystem, fsspec_filesystem
from pyqest.utils.base import (
    create_nested_dict,
    dumps_toml,
    loads_toml,
    merge_nested_dict,
    random_id,
    read_toml,
)
from pyqest.utils.logging import get_logger, log_decorator
from pyqest.utils.table import to_csv, to_parquet_bytes


def test_toml_none_sentinel():
    doc = loads_toml('a = "None"\n[b]\nc = ["None", 1]\nd = 2.5\n')
    assert doc == {"a": None, "b": {"c": [None, 1], "d": 2.5}}
    assert 'a = "None"' in dumps_toml({"a": None, "b": 1})
    assert loads_toml(dumps_toml({"x": {"y": None}})) == {"x": {"y": None}}


def test_read_toml(tmp_path):
    fs = fsspec_filesystem("file")
    (tmp_path / "c.toml").write_text("sim.dt = 0.01\n")
    assert read_toml(str(tmp_path / "c.toml"), fs) == {"sim": {"dt": 0.01}}
    with pytest.raises(OSError):
        read_toml(str(tmp_path / "missing.toml"), fs)


def test_nested_dict_helpers():
    assert create_nested_dict("a.b.c", 1) == {"a": {"b": {"c": 1}}}
    assert create_nested_dict("a", 1) == {"a": 1}
    base = {"a": {"b": 1, "c": 2}, "d": 3}
    assert merge_nested_dict(base, {"a": {"c": 5}}) == {"a": {"b": 1, "c": 5}, "d": 3}
    assert base["a"]["c"] == 2


def test_random_id():
    ids = {random_id() for _ in range(20)}
    assert len(ids) == 20
    assert all(len(i) == 8 and i.isalnum() for i in ids)


def test_to_csv_significant_digits():
    frame = pl.DataFrame({"x": [1.0 / 3.0, 2.0, 1e-20], "n": [1, 2, 3]})
    assert to_csv(frame).splitlines() == [
        "x,n",
        "0.333333333333,1",
        "2,2",
        "1e-20,3",
    ]


def test_to_parquet_bytes():
    frame = pl.DataFrame({"t": [0.0, 0.5], "v": [1.0, 2.0]})
    table = pq.read_table(pa.BufferReader(to_parquet_bytes(frame)))
    assert table.column_names == ["t", "v"]
    assert table.num_rows == 2


def test_artifact_store_stages_until_commit(tmp_path):
    store = ArtifactStore(str(tmp_path / "run"))
    store.stage_text("a.txt", "hello")
    store.stage_toml("b.toml", {"x": None, "y": 1.5})
    assert store.staged == ["a.txt", "b.toml"]
    assert not (tmp_path / "run").exists()

    assert store.commit() == ["a.txt", "b.toml"]
    assert store.staged == []
    assert store.ls() == ["a.txt", "b.toml"]
    assert store.read_text("a.txt") == "hello"
    assert store.read_toml("b.toml") == {"x": None, "y": 1.5}
    assert not any(p.name.endswith(".tmp") for p in (tmp_path / "run").iterdir())


def test_artifact_store_discard(tmp_path):
    store = ArtifactStore(str(tmp_path))
    store.stage_bytes("a.bin", b"\x00")
    store.discard()
    assert store.commit() == []
    assert not store.exists("a.bin")


@pytest.mark.parametrize("name", ["sub/a.txt", ".hidden"])
def test_artifact_store_rejects_paths(tmp_path, name):
    with pytest.raises(ValueError):
        ArtifactStore(str(tmp_path)).stage_text(name, "x")


def test_artifact_store_commit_is_all_or_nothing(tmp_path, monkeypatch):
    store = ArtifactStore(str(tmp_path / "run"))
    store.stage_text("a.txt", "1")
    store.stage_text("b.txt", "2")
    fs = store.fs
    real_open = fs.open

    def open_failing_on_b(path, *args, **kwargs):
        if path.startswith(".b.txt."):
            raise OSError("disk full")
        return real_open(path, *args, **kwargs)

    monkeypatch.setattr(fs, "open", open_failing_on_b)
    with pytest.raises(OSError):
        store.commit()
    assert list((tmp_path / "run").iterdir()) == []
    assert store.staged == []


def test_artifact_store_unwritable(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    store = ArtifactStore(str(blocker / "run"))
    store.stage_text("a.txt", "x")
    with pytest.raises(OSError):
        store.commit()
    assert store.staged == []


def test_dir_filesystem(tmp_path):
    fs = fsspec_dir_filesystem(str(tmp_path))
    with fs.open("x.txt", "w") as f:
        f.write("1")
    assert (tmp_path / "x.txt").read_text() == "1"


def test_log_level_from_env(monkeypatch):
    monkeypatch.setenv("PYQEST_LOG_LEVEL", "warning")
    assert get_logger("pyqest.test").level == logging.WARNING
    monkeypatch.setenv("PYQEST_LOG_LEVEL", "chatty")
    assert get_logger("pyqest.test").level == logging.INFO


def test_log_decorator_logs_and_reraises(capsys):
    @log_decorator
    def divide(a, b):
        return a / b

    assert divide(4, 2) == 2
    out = capsys.readouterr().out
    assert "Arguments: 4, 2. Start." in out
    assert "| divide |" in out

    with pytest.raises(ZeroDivisionError):
        divide(1, 0)
    assert "Exception: division by zero" in capsys.readouterr().out


def test_log_decorator_hides_arguments(capsys):
    @log_decorator(show_arguments=False)
    def secret(token):
        return len(token)

    assert secret("abc") == 3
    out = capsys.readouterr().out
    assert "abc" not in out
    assert "Start." in out
