import dataclasses
import math
from dataclasses import dataclass, field

import rtoml
from fsspec import spec

from ..analysis.labframe import LabFrameParams
from ..exceptions import ParseError, ValidationError
from ..filesystem.fs import fsspec_filesystem
from ..observers.gains import Gains12, Gains23
from ..plant.params import NoiseSpec, PlantParams
from ..sim.config import InitialConditions, Scenario, SimConfig
from ..utils.base import (
    create_nested_dict,
    dumps_toml,
    loads_toml,
    merge_nested_dict,
    read_toml,
)

OUTPUT_FORMATS = ("csv", "parquet")


@dataclass(frozen=True)
class RwaSettings:
    params: LabFrameParams = field(default_factory=LabFrameParams)
    u12: float = 1.0
    u23: float = 0.0
    horizon: float | None = None


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs; defaults reproduce the reference scenario."""

    scenario: Scenario = field(
        default_factory=lambda: Scenario(noise=NoiseSpec())
    )
    rwa: RwaSettings = field(default_factory=RwaSettings)
    output_dir: str = "out"
    emit_plots: bool = False
    output_format: str = "csv"

    def __post_init__(self):
        if self.output_format not in OUTPUT_FORMATS:
            raise ValidationError(
                f"output.format must be one of {OUTPUT_FORMATS}, got {self.output_format!r}."
            )

    def with_overrides(
        self,
        out: str | None = None,
        seed: int | None = None,
        noise_output: float | None = None,
        noise_input: float | None = None,
        plots: bool | None = None,
    ) -> "RunConfig":
        noise = self.scenario.noise or NoiseSpec()
        changes = {}
        if seed is not None:
            changes["seed"] = seed
        if noise_output is not None:
            changes["output_std"] = noise_output
        if noise_input is not None:
            changes["input_std"] = noise_input
        scenario = dataclasses.replace(
            self.scenario, noise=dataclasses.replace(noise, **changes)
        )
        return dataclasses.replace(
            self,
            scenario=scenario,
            output_dir=out if out is not None else self.output_dir,
            emit_plots=plots if plots is not None else self.emit_plots,
        )


# section -> (type built from it, keys)
_SECTIONS = {
    "plant": (PlantParams, ("omega12", "omega23")),
    "gains12": (Gains12, ("gamma_big", "gamma_small", "epsilon")),
    "gains23": (
        Gains23,
        ("gamma_big", "gamma_small", "epsilon", "eta", "omega12_known"),
    ),
    "noise": (NoiseSpec, ("output_std", "input_std", "hold_interval", "seed")),
    "sim": (
        SimConfig,
        (
            "dt",
            "t1_end",
            "t2_end",
            "sample_stride",
            "reproject_stride",
            "measurement_period",
            "handoff",
            "theta0",
        ),
    ),
    "init": (
        InitialConditions,
        ("rho0", "rho_hat0", "omega12_hat0", "omega23_hat0"),
    ),
    "labframe": (
        LabFrameParams,
        ("energies", "a_bar12", "a_bar23", "mu12", "mu23", "u12", "u23", "horizon"),
    ),
    "output": (None, ("dir", "plots", "format")),
}
_RWA_KEYS = ("u12", "u23", "horizon")


def _build(section: str, cls, values: dict):
    try:
        return cls(**values)
    except ValidationError:
        raise
    except (TypeError, ValueError) as e:
        raise ValidationError(f"{section}: {e}") from e


def _check_keys(doc: dict) -> None:
    for section, values in doc.items():
        if section not in _SECTIONS:
            raise ValidationError(f"unknown config section {section!r}.")
        if not isinstance(values, dict):
            raise ValidationError(f"{section} must be a section of dotted keys.")
        known = _SECTIONS[section][1]
        for key in values:
            if key not in known:
                raise ValidationError(f"unknown config key {section}.{key}.")


def config_from_dict(doc: dict) -> RunConfig:
    _check_keys(doc)
    sections = {name: dict(doc.get(name, {})) for name in _SECTIONS}

    labframe = sections["labframe"]
    rwa_values = {k: labframe.pop(k) for k in _RWA_KEYS if k in labframe}
    output = sections["output"]
    scenario = Scenario(
        plant=_build("plant", PlantParams, sections["plant"]),
        gains12=_build("gains12", Gains12, sections["gains12"]),
        gains23=_build("gains23", Gains23, sections["gains23"]),
        noise=_build("noise", NoiseSpec, sections["noise"]),
        sim=_build("sim", SimConfig, sections["sim"]),
        init=_build("init", InitialConditions, sections["init"]),
    )
    rwa = _build(
        "labframe",
        RwaSettings,
        {"params": _build("labframe", LabFrameParams, labframe), **rwa_values},
    )
    horizon = rwa.horizon
    if horizon is not None and not (math.isfinite(horizon) and horizon > 0.0):
        raise ValidationError(f"labframe.horizon must be > 0, got {horizon!r}.")
    return _build(
        "output",
        RunConfig,
        {
            "scenario": scenario,
            "rwa": rwa,
            "output_dir": output.get("dir", "out"),
            "emit_plots": bool(output.get("plots", False)),
            "output_format": output.get("format", "csv"),
        },
    )


def parse_config(text: str) -> RunConfig:
    """Validated RunConfig from a TOML document of dotted keys (``gains12.epsilon = 0.2``)."""
    try:
        doc = loads_toml(text)
    except rtoml.TomlParsingError as e:
        raise ParseError(f"config is not valid TOML: {e}") from e
    return config_from_dict(doc)


def parse_assignment(text: str) -> dict:
    """``section.key=value`` as a nested dict; the value is read as a TOML value when it
    parses as one and kept as a string otherwise."""
    key, sep, raw = text.partition("=")
    key, raw = key.strip(), raw.strip()
    if not sep or not key:
        raise ParseError(f"override must look like section.key=value, got {text!r}.")
    try:
        value = loads_toml(f"v = {raw}")["v"]
    except rtoml.TomlParsingError:
        value = None if raw == "None" else raw
    return create_nested_dict(key, value)


def load_config(
    path: str | None,
    filesystem: spec.AbstractFileSystem | None = None,
    assignments: list[str] | tuple[str, ...] = (),
) -> RunConfig:
    """Config file (if any) with ``assignments`` applied on top."""
    doc = {}
    if path is not None:
        doc = read_toml(path, filesystem or fsspec_filesystem("file"))
    for assignment in assignments:
        doc = merge_nested_dict(doc, parse_assignment(assignment))
    return config_from_dict(doc)


def config_to_dict(cfg: RunConfig) -> dict:
    s = cfg.scenario
    noise = s.noise or NoiseSpec()
    sim = dataclasses.asdict(s.sim)
    sim["handoff"] = s.sim.handoff.value
    init = dataclasses.asdict(s.init)
    init["rho0"], init["rho_hat0"] = list(s.init.rho0), list(s.init.rho_hat0)
    labframe = dataclasses.asdict(cfg.rwa.params)
    labframe["energies"] = list(cfg.rwa.params.energies)
    labframe.update(u12=cfg.rwa.u12, u23=cfg.rwa.u23, horizon=cfg.rwa.horizon)
    return {
        "plant": dataclasses.asdict(s.plant),
        "gains12": dataclasses.asdict(s.gains12),
        "gains23": dataclasses.asdict(s.gains23),
        "noise": dataclasses.asdict(noise),
        "sim": sim,
        "init": init,
        "labframe": labframe,
        "output": {
            "dir": cfg.output_dir,
            "plots": cfg.emit_plots,
            "format": cfg.output_format,
        },
    }


def serialize_config(cfg: RunConfig) -> str:
    return dumps_toml(config_to_dict(cfg), pretty=True)
