from fsspec import spec
from fsspec.utils import infer_storage_options

from ..utils.base import dumps_toml, loads_toml, random_id
from ..utils.logging import get_logger, log_decorator
from .fs import fsspec_dir_filesystem, fsspec_filesystem


class ArtifactStore:
    """Output directory on any fsspec filesystem.

    Artifacts are staged in memory and only written by ``commit``; each file is
    written to a temporary name first and then moved into place.
    """

    def __init__(
        self,
        path: str,
        protocol: str | None = None,
        storage_options: dict | None = None,
        fsspec_fs: spec.AbstractFileSystem | None = None,
        log_file: str | None = None,
        log_sub_dir: str | None = None,
    ):
        self._log_file = log_file
        self._log_sub_dir = log_sub_dir
        self.logger = get_logger(
            name=repr(self.__class__).split("'")[1],
            log_file=log_file,
            log_sub_dir=log_sub_dir,
        )

        options = infer_storage_options(path)
        self._protocol = protocol or options["protocol"]
        self._path = options["path"]
        self._base_fs = fsspec_fs or fsspec_filesystem(
            protocol=self._protocol, **(storage_options or {})
        )
        self._fs = None
        self._staged: dict[str, bytes] = {}

    @property
    def path(self) -> str:
        return self._path

    @property
    def fs(self) -> spec.AbstractFileSystem:
        if self._fs is None:
            self._fs = fsspec_dir_filesystem(path=self._path, filesystem=self._base_fs)
        return self._fs

    @property
    def staged(self) -> list[str]:
        return sorted(self._staged)

    def stage_bytes(self, name: str, data: bytes) -> None:
        if "/" in name or name.startswith("."):
            raise ValueError(f"artifact name must be a plain file name, got {name!r}.")
        self._staged[name] = bytes(data)

    def stage_text(self, name: str, text: str) -> None:
        self.stage_bytes(name, text.encode("utf-8"))

    def stage_toml(self, name: str, config: dict) -> None:
        self.stage_text(name, dumps_toml(config, pretty=True))

    def discard(self) -> None:
        self._staged.clear()

    @log_decorator(show_arguments=False)
    def commit(self) -> list[str]:
        """Writes every staged artifact or none of them; returns the written names.

        All temp files are written before the first one is moved into place.
        """
        try:
            self._base_fs.mkdirs(self._path, exist_ok=True)
        except (OSError, PermissionError) as e:
            self._staged.clear()
            raise OSError(f"output directory {self._path} is not writable: {e}") from e

        pending = {
            name: f".{name}.{random_id()}.tmp" for name in sorted(self._staged)
        }
        moved = []
        try:
            for name, tmp in pending.items():
                with self.fs.open(tmp, "wb") as f:
                    f.write(self._staged[name])
            for name, tmp in pending.items():
                self.fs.mv(tmp, name)
                moved.append(name)
        except Exception:
            for path in list(pending.values()) + moved:
                if self.fs.exists(path):
                    self.fs.rm(path)
            raise
        finally:
            self._staged.clear()
        self.logger.info(f"Wrote {len(moved)} artifacts to {self._path}.")
        return moved

    def exists(self, name: str) -> bool:
        return self.fs.exists(name)

    def read_bytes(self, name: str) -> bytes:
        with self.fs.open(name, "rb") as f:
            return f.read()

    def read_text(self, name: str) -> str:
        return self.read_bytes(name).decode("utf-8")

    def read_toml(self, name: str) -> dict:
        return loads_toml(self.read_text(name))

    def ls(self) -> list[str]:
        return sorted(self.fs.ls("", detail=False))
