import fsspec
from fsspec.implementations.dirfs import DirFileSystem
from fsspec.spec import AbstractFileSystem


def fsspec_filesystem(protocol: str = "file", **storage_options) -> AbstractFileSystem:
    if protocol.lower() == "local":
        protocol = "file"
    return fsspec.filesystem(protocol=protocol, **storage_options)


def fsspec_dir_filesystem(
    path: str, filesystem: AbstractFileSystem | None = None
) -> DirFileSystem:
    """Filesystem whose paths are relative to ``path``."""
    filesystem = filesystem or fsspec_filesystem("file")
    return DirFileSystem(path=path, fs=filesystem)
