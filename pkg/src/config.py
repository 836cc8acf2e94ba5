"""
Run configuration
Flat YAML mapping of RunConfig fields; frequencies in 2π·MHz except the
optical transition frequencies (rad/s), temperatures in K.
"""

import logging
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any

import yaml

from src.analyzers.reservoirs import rabi_unit
from src.models.params import (
    SIDEBAND_SOURCE_FORMS, DecayRates, DetuningGrid, EngineParams, EngineVariant, ReservoirSpec,
)
from src.validation import (
    ValidationError, validate_choice, validate_grid, validate_non_negative, validate_number,
    validate_order, validate_positive,
)

logger = logging.getLogger(__name__)

RUN_METHODS = {"closed-form", "floquet", "both"}

# Rabi frequencies left unset resolve to these multiples of the variant's γ₄₁
DEFAULT_RABI_FRACTIONS = {"rabi_pr": 0.05, "rabi_pu": 1.0, "rabi_c": 1.0}


@dataclass(frozen=True)
class RunConfig:
    """Every input of one run; field names are the YAML keys"""
    variant: str = EngineVariant.HE_PUC.value
    rabi_pr: float | None = None
    rabi_pu: float | None = None
    rabi_c: float | None = None
    delta_pr: float = 0.0
    delta_pu: float = 0.0
    delta_c: float = 0.0
    omega_m: float = 2.0
    epsilon: float = 0.01
    t41: float = 5000.0
    t42: float = 5000.0
    t43: float = 5000.0
    omega_41_rad_s: float = 4.0e15
    omega_42_rad_s: float = 3.0e15
    omega_43_rad_s: float = 3.0e15
    gamma_41: float = 5.7
    gamma_42: float = 5.7
    gamma_43: float = 5.7
    grid_min: float = -50.0
    grid_max: float = 50.0
    grid_points: int = 2001
    method: str = "floquet"
    harmonics: int = 2
    sideband_source_form: str = "single_f"
    output: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", EngineVariant.parse(self.variant).value)
        for name in ("rabi_pr", "rabi_pu", "rabi_c"):
            if getattr(self, name) is not None:
                object.__setattr__(self, name, validate_non_negative(getattr(self, name), name))
        for name in ("delta_pr", "delta_pu", "delta_c", "omega_m"):
            object.__setattr__(self, name, validate_number(getattr(self, name), name))
        object.__setattr__(self, "epsilon", validate_non_negative(self.epsilon, "epsilon"))
        for name in ("t41", "t42", "t43", "omega_41_rad_s", "omega_42_rad_s", "omega_43_rad_s"):
            object.__setattr__(self, name, validate_positive(getattr(self, name), name))
        for name in ("gamma_41", "gamma_42", "gamma_43"):
            object.__setattr__(self, name, validate_non_negative(getattr(self, name), name))
        validate_grid(self.grid_min, self.grid_max, self.grid_points)
        validate_choice(self.method, "method", RUN_METHODS)
        validate_order(self.harmonics)
        validate_choice(self.sideband_source_form, "sideband_source_form", SIDEBAND_SOURCE_FORMS)

    @property
    def engine_variant(self) -> EngineVariant:
        return EngineVariant(self.variant)

    def reservoirs(self) -> ReservoirSpec:
        return ReservoirSpec(
            T41=self.t41, T42=self.t42, T43=self.t43,
            omega41=self.omega_41_rad_s, omega42=self.omega_42_rad_s, omega43=self.omega_43_rad_s,
        )

    def decays(self) -> DecayRates:
        return DecayRates(Gamma41=self.gamma_41, Gamma42=self.gamma_42, Gamma43=self.gamma_43)

    def grid(self) -> DetuningGrid:
        return DetuningGrid(self.grid_min, self.grid_max, self.grid_points)


def resolve_rabi(config: RunConfig) -> RunConfig:
    """Fill unset Rabi frequencies from the variant's γ₄₁"""
    unit = rabi_unit(config.engine_variant, config.decays(), config.reservoirs())
    changes = {
        name: fraction * unit
        for name, fraction in DEFAULT_RABI_FRACTIONS.items()
        if getattr(config, name) is None
    }
    return replace(config, **changes) if changes else config


def to_params(config: RunConfig) -> EngineParams:
    """Engine parameters of a configuration"""
    config = resolve_rabi(config)
    return EngineParams(
        variant=config.engine_variant,
        omega_pr=config.rabi_pr,
        omega_pu=config.rabi_pu,
        omega_c=config.rabi_c,
        delta_pr=config.delta_pr,
        delta_pu=config.delta_pu,
        delta_c=config.delta_c,
        omega_m=config.omega_m,
        epsilon=config.epsilon,
        reservoirs=config.reservoirs(),
        decays=config.decays(),
        sideband_source_form=config.sideband_source_form,
    )


def from_mapping(data: dict[str, Any] | None) -> RunConfig:
    """
    Build a RunConfig from a parsed mapping

    Raises:
        ValidationError: For unknown keys or invalid values
    """
    if data is None:
        return RunConfig()
    if not isinstance(data, dict):
        raise ValidationError("Configuration must be a key: value mapping")

    known = {f.name for f in fields(RunConfig)}
    for key in data:
        if key not in known:
            raise ValidationError(f"Unknown configuration key '{key}'")
    return RunConfig(**data)


def load_config(path: str | Path | None) -> RunConfig:
    """
    Read a YAML configuration file; None gives the defaults

    Raises:
        ValidationError: If the file is missing, malformed or invalid
    """
    if path is None:
        return RunConfig()

    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"Configuration file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as e:
        raise ValidationError(f"Configuration file {path} is not valid YAML: {str(e)}")

    config = from_mapping(data)
    logger.info(f"Loaded configuration from {path}")
    return config


def with_overrides(config: RunConfig, **overrides: Any) -> RunConfig:
    """Apply command-line overrides; None values are ignored"""
    changes = {key: value for key, value in overrides.items() if value is not None}
    return replace(config, **changes) if changes else config


def dump_effective(config: RunConfig, path: str | Path) -> Path:
    """Write the configuration with every default applied and Rabi frequencies resolved"""
    path = Path(path)
    path.write_text(yaml.safe_dump(asdict(resolve_rabi(config)), sort_keys=False))
    logger.info(f"Wrote effective configuration to {path}")
    return path
