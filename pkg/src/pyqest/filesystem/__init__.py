from .fs import fsspec_dir_filesystem, fsspec_filesystem  # isort: skip
from .base import ArtifactStore  # isort: skip
