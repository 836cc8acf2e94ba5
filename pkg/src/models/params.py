"""
Input parameter models for the heat engine variants
"""

import enum
import logging
from dataclasses import dataclass, field, replace

import numpy as np

from src.units import AngularFrequency
from src.validation import (
    ValidationError, validate_choice, validate_non_negative, validate_grid,
    validate_number, validate_positive,
)

logger = logging.getLogger(__name__)

SIDEBAND_SOURCE_FORMS = {"single_f", "nested_f"}

# Sideband strength above which first-order harmonic truncation is unreliable
PERTURBATIVE_EPSILON = 0.1


class EngineVariant(str, enum.Enum):
    """Engine variant tag"""
    HE_PU = "HE_pu"
    HE_C = "HE_c"
    HE_PUC = "HE_puc"

    @property
    def channels(self) -> tuple[int, ...]:
        """Ground levels connected to level 4 by a reservoir"""
        return {
            EngineVariant.HE_PU: (1, 2),
            EngineVariant.HE_C: (1, 3),
            EngineVariant.HE_PUC: (1, 2, 3),
        }[self]

    @property
    def levels(self) -> tuple[int, ...]:
        """Levels the engine actually populates"""
        return self.channels + (4,)

    @property
    def inactive_levels(self) -> tuple[int, ...]:
        return tuple(level for level in (1, 2, 3) if level not in self.channels)

    @property
    def has_pump(self) -> bool:
        return 2 in self.channels

    @property
    def has_control(self) -> bool:
        return 3 in self.channels

    @property
    def has_mirror(self) -> bool:
        return self.has_control

    @classmethod
    def parse(cls, value: "str | EngineVariant") -> "EngineVariant":
        if isinstance(value, EngineVariant):
            return value
        valid = {variant.value: variant for variant in cls}
        name = validate_choice(value, "variant", set(valid))
        return valid[name]


@dataclass(frozen=True)
class ReservoirSpec:
    """Reservoir temperatures (K) and transition frequencies (rad/s)"""
    T41: float = 5000.0
    T42: float = 5000.0
    T43: float = 5000.0
    omega41: float = 4.0e15
    omega42: float = 3.0e15
    omega43: float = 3.0e15

    def __post_init__(self):
        for name in ("T41", "T42", "T43", "omega41", "omega42", "omega43"):
            validate_positive(getattr(self, name), name)
        if not (self.omega41 > self.omega42 and self.omega41 > self.omega43):
            raise ValidationError("omega41 must exceed omega42 and omega43")

    def temperature(self, channel: int) -> float:
        return getattr(self, f"T4{channel}")

    def frequency(self, channel: int) -> AngularFrequency:
        return AngularFrequency.from_rad_s(getattr(self, f"omega4{channel}"))


@dataclass(frozen=True)
class DecayRates:
    """Spontaneous decay rates Γ₄ᵢ in 2π·MHz"""
    Gamma41: float = 5.7
    Gamma42: float = 5.7
    Gamma43: float = 5.7

    def __post_init__(self):
        for name in ("Gamma41", "Gamma42", "Gamma43"):
            validate_non_negative(getattr(self, name), name)

    def rate(self, channel: int) -> float:
        return getattr(self, f"Gamma4{channel}")


@dataclass(frozen=True)
class DephasingSet:
    """Coherence dephasing rates γ_jk in 2π·MHz"""
    gamma41: float
    gamma42: float
    gamma43: float
    gamma21: float
    gamma31: float
    gamma32: float
    unused: frozenset[str] = frozenset()

    def __post_init__(self):
        for name in ("gamma41", "gamma42", "gamma43", "gamma21", "gamma31", "gamma32"):
            validate_non_negative(getattr(self, name), name)

    @property
    def gamma14(self) -> float:
        return self.gamma41

    @property
    def gamma23(self) -> float:
        return self.gamma32


@dataclass(frozen=True)
class Channel:
    """Jump |target⟩⟨source| with its rate and the reservoir occupation"""
    source: int
    target: int
    rate: float
    occupation: float

    def operator(self) -> np.ndarray:
        jump = np.zeros((4, 4), dtype=complex)
        jump[self.target - 1, self.source - 1] = 1.0
        return jump


@dataclass(frozen=True)
class Dissipator:
    """Set of Lindblad jump channels"""
    channels: tuple[Channel, ...] = ()

    def operators(self) -> list[tuple[float, np.ndarray]]:
        return [(channel.rate, channel.operator()) for channel in self.channels]

    def rate(self, source: int, target: int) -> float:
        return sum(
            channel.rate for channel in self.channels
            if channel.source == source and channel.target == target
        )


@dataclass(frozen=True)
class EngineParams:
    """
    Physical inputs of one engine configuration

    Rabi frequencies, detunings, the mirror frequency and decay rates are in
    2π·MHz. Fields a variant does not carry are forced to zero on construction.
    """
    variant: EngineVariant = EngineVariant.HE_PUC
    omega_pr: float = 0.0
    omega_pu: float = 0.0
    omega_c: float = 0.0
    delta_pr: float = 0.0
    delta_pu: float = 0.0
    delta_c: float = 0.0
    omega_m: float = 0.0
    epsilon: float = 0.0
    reservoirs: ReservoirSpec = field(default_factory=ReservoirSpec)
    decays: DecayRates = field(default_factory=DecayRates)
    sideband_source_form: str = "single_f"

    def __post_init__(self):
        object.__setattr__(self, "variant", EngineVariant.parse(self.variant))
        for name in ("omega_pr", "omega_pu", "omega_c", "epsilon"):
            object.__setattr__(self, name, validate_non_negative(getattr(self, name), name))
        for name in ("delta_pr", "delta_pu", "delta_c", "omega_m"):
            object.__setattr__(self, name, validate_number(getattr(self, name), name))
        validate_choice(self.sideband_source_form, "sideband_source_form", SIDEBAND_SOURCE_FORMS)

        if not self.variant.has_pump:
            object.__setattr__(self, "omega_pu", 0.0)
            object.__setattr__(self, "delta_pu", 0.0)
        if not self.variant.has_control:
            object.__setattr__(self, "omega_c", 0.0)
            object.__setattr__(self, "delta_c", 0.0)
        if not self.variant.has_mirror:
            object.__setattr__(self, "epsilon", 0.0)
            object.__setattr__(self, "omega_m", 0.0)

    @property
    def is_perturbative(self) -> bool:
        return self.epsilon <= PERTURBATIVE_EPSILON

    @property
    def is_modulated(self) -> bool:
        """True when the mirror sidebands actually enter the generator"""
        return self.variant.has_mirror and self.epsilon > 0 and self.omega_c > 0

    def with_updates(self, **changes) -> "EngineParams":
        return replace(self, **changes)

    def fields_off(self) -> "EngineParams":
        """Same reservoirs and probe with pump, control and mirror removed"""
        return replace(self, omega_pu=0.0, omega_c=0.0, epsilon=0.0)


def warn_if_not_perturbative(params: EngineParams) -> bool:
    """Log the perturbative-regime warning; returns True when it fired"""
    if params.is_perturbative:
        return False
    logger.warning(
        f"Sideband strength epsilon={params.epsilon} exceeds {PERTURBATIVE_EPSILON}; "
        f"first-harmonic results are outside the perturbative regime"
    )
    return True


@dataclass(frozen=True)
class DetuningGrid:
    """Uniform probe detuning grid in 2π·MHz"""
    minimum: float = -50.0
    maximum: float = 50.0
    points: int = 2001

    def __post_init__(self):
        validate_grid(self.minimum, self.maximum, self.points)

    def values(self) -> np.ndarray:
        return np.linspace(self.minimum, self.maximum, self.points)

    def refined(self) -> "DetuningGrid":
        """Grid with the spacing halved"""
        return DetuningGrid(self.minimum, self.maximum, 2 * self.points - 1)
