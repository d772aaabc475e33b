from .config import (  # isort: skip
    RunConfig,
    RwaSettings,
    load_config,
    parse_assignment,
    parse_config,
    serialize_config,
)
from .app import app, cmd_analyze, cmd_estimate, cmd_sweep  # isort: skip
