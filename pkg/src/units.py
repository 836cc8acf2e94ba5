"""
Physical constants and unit conventions

Small frequencies (Rabi, detuning, decay, mirror) are carried as plain floats
in units of 2π·MHz. Optical transition frequencies travel as AngularFrequency.
"""

import math
from dataclasses import dataclass

from scipy import constants as const

from src.errors import DomainError

# 1 (2π·MHz) expressed in rad/s; the internal time unit is its reciprocal
TWO_PI_MHZ = 2.0 * math.pi * 1.0e6


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 constants in SI units"""
    hbar: float = const.hbar
    kB: float = const.k
    c: float = const.c


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class AngularFrequency:
    """Optical transition frequency stored in rad/s"""
    value: float

    @classmethod
    def from_rad_s(cls, value: float) -> "AngularFrequency":
        return cls(float(value))

    def as_rad_s(self) -> float:
        return self.value


def _rad_s(omega: "AngularFrequency | float") -> float:
    if isinstance(omega, AngularFrequency):
        return omega.value
    return float(omega)


def thermal_exponent(omega: "AngularFrequency | float", temperature: float) -> float:
    """
    Compute the Planck exponent ħω/(k_B T)

    Args:
        omega: Transition frequency (AngularFrequency, or float in rad/s)
        temperature: Reservoir temperature in K

    Returns:
        Dimensionless exponent

    Raises:
        DomainError: If the temperature is not positive
    """
    if not temperature > 0:
        raise DomainError(f"Temperature must be positive (got {temperature})")
    return CONSTANTS.hbar * _rad_s(omega) / (CONSTANTS.kB * temperature)
