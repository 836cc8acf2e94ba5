"""
Blackbody reservoir model
Thermal photon occupations, incoherent pump rates and dephasing rates
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from src.errors import DomainError
from src.models.params import DecayRates, DephasingSet, EngineParams, EngineVariant, ReservoirSpec
from src.units import AngularFrequency, thermal_exponent


@dataclass(frozen=True)
class EngineRates:
    """Occupations n₄ᵢ, pump rates R_i4 and dephasing rates of one configuration"""
    occupations: tuple[float, float, float]
    pumps: tuple[float, float, float]
    dephasing: DephasingSet

    @property
    def n41(self) -> float:
        return self.occupations[0]

    @property
    def R14(self) -> float:
        return self.pumps[0]

    @property
    def R24(self) -> float:
        return self.pumps[1]

    @property
    def R34(self) -> float:
        return self.pumps[2]


def photon_occupation(omega: "AngularFrequency | float", temperature: float) -> float:
    """
    Planck occupation 1/(exp(ħω/k_B T) - 1)

    Args:
        omega: Transition frequency (AngularFrequency, or float in rad/s)
        temperature: Reservoir temperature in K

    Returns:
        Mean photon number, strictly positive

    Raises:
        DomainError: If omega is zero or the temperature is not positive
    """
    exponent = thermal_exponent(omega, temperature)
    if exponent <= 0:
        raise DomainError(f"Occupation diverges for non-positive frequency (exponent {exponent})")
    # exp overflows past ~709; the occupation is zero to double precision there
    if exponent > 700:
        return math.exp(-exponent)
    return 1.0 / math.expm1(exponent)


def pump_rate(decay: float, occupation: float) -> float:
    """Stimulated absorption rate R_i4 = Γ₄ᵢ·n₄ᵢ"""
    return decay * occupation


def pump_rates(
    variant: EngineVariant,
    decays: DecayRates,
    reservoirs: ReservoirSpec,
) -> tuple[float, float, float]:
    """Pump rates (R₁₄, R₂₄, R₃₄); channels the variant lacks are zero"""
    rates = []
    for channel in (1, 2, 3):
        if channel in variant.channels:
            occupation = photon_occupation(reservoirs.frequency(channel), reservoirs.temperature(channel))
            rates.append(pump_rate(decays.rate(channel), occupation))
        else:
            rates.append(0.0)
    return tuple(rates)


def decay_floor(variant: EngineVariant, decays: DecayRates) -> float:
    """Sum of the spontaneous decay rates out of level 4 for the variant"""
    return sum(decays.rate(channel) for channel in variant.channels)


def dephasing_rates(
    variant: EngineVariant,
    decays: DecayRates,
    pumps: tuple[float, float, float],
) -> DephasingSet:
    """
    Dephasing rates of every coherence for an engine variant

    Each γ₄ᵢ is the spontaneous group (sum of Γ over the variant's channels)
    plus the thermal group (sum of pump rates with R_i4 counted twice).
    Ground-state coherences decay with the sum of the two pump rates involved.

    Args:
        variant: Engine variant
        decays: Spontaneous decay rates
        pumps: Pump rates (R₁₄, R₂₄, R₃₄)

    Returns:
        DephasingSet with fields irrelevant to the variant zeroed and listed as unused
    """
    channels = variant.channels
    pump = dict(zip((1, 2, 3), pumps))
    spontaneous = decay_floor(variant, decays)
    thermal = sum(pump[channel] for channel in channels)

    values = {}
    unused = set()
    for channel in (1, 2, 3):
        name = f"gamma4{channel}"
        if channel in channels:
            values[name] = spontaneous + (thermal + pump[channel])
        else:
            values[name] = 0.0
            unused.add(name)

    for high, low in ((2, 1), (3, 1), (3, 2)):
        name = f"gamma{high}{low}"
        if high in channels and low in channels:
            values[name] = pump[high] + pump[low]
        else:
            values[name] = 0.0
            unused.add(name)

    return DephasingSet(**values, unused=frozenset(unused))


def engine_rates(params: EngineParams) -> EngineRates:
    """Occupations, pump rates and dephasing rates for a parameter set"""
    return _engine_rates(params.variant, params.decays, params.reservoirs)


@lru_cache(maxsize=64)
def _engine_rates(variant: EngineVariant, decays: DecayRates, reservoirs: ReservoirSpec) -> EngineRates:
    occupations = tuple(
        photon_occupation(reservoirs.frequency(channel), reservoirs.temperature(channel))
        for channel in (1, 2, 3)
    )
    pumps = pump_rates(variant, decays, reservoirs)
    return EngineRates(
        occupations=occupations,
        pumps=pumps,
        dephasing=dephasing_rates(variant, decays, pumps),
    )


def rabi_unit(
    variant: EngineVariant,
    decays: DecayRates | None = None,
    reservoirs: ReservoirSpec | None = None,
) -> float:
    """γ₄₁ of a variant, the unit Rabi frequencies are quoted in"""
    return _engine_rates(variant, decays or DecayRates(), reservoirs or ReservoirSpec()).dephasing.gamma41
