import math

import pytest

from src.analyzers.reservoirs import (
    dephasing_rates, engine_rates, photon_occupation, pump_rates, rabi_unit,
)
from src.errors import DomainError
from src.models.params import DecayRates, EngineParams, EngineVariant, ReservoirSpec
from src.units import AngularFrequency
from src.validation import ValidationError


def test_photon_occupation_at_defaults():
    assert photon_occupation(4.0e15, 5000.0) == pytest.approx(2.2242e-3, rel=1e-3)
    assert photon_occupation(3.0e15, 5000.0) == pytest.approx(1.03305e-2, rel=1e-3)


def test_photon_occupation_cold_reservoir_is_tiny_but_positive():
    occupation = photon_occupation(4.0e15, 50.0)
    assert 0 < occupation < 1e-200


def test_photon_occupation_rejects_zero_temperature():
    with pytest.raises(DomainError):
        photon_occupation(4.0e15, 0.0)


def test_pump_rates_follow_decay_times_occupation():
    R14, R24, R34 = pump_rates(EngineVariant.HE_PUC, DecayRates(), ReservoirSpec())
    assert R14 == pytest.approx(0.012678, rel=1e-3)
    assert R24 == pytest.approx(0.058884, rel=1e-3)
    assert R34 == pytest.approx(R24)


def test_pump_rates_zero_for_missing_channel():
    assert pump_rates(EngineVariant.HE_PU, DecayRates(), ReservoirSpec())[2] == 0.0
    assert pump_rates(EngineVariant.HE_C, DecayRates(), ReservoirSpec())[1] == 0.0


def test_composite_dephasing_rates():
    rates = engine_rates(EngineParams(variant="HE_puc"))
    gamma = rates.dephasing
    assert gamma.gamma41 == pytest.approx(17.2431, rel=1e-4)
    assert gamma.gamma42 == pytest.approx(17.2893, rel=1e-4)
    assert gamma.gamma21 == pytest.approx(0.07156, rel=1e-3)
    assert gamma.gamma32 == pytest.approx(0.11777, rel=1e-3)
    assert gamma.gamma14 == gamma.gamma41
    assert gamma.unused == frozenset()


def test_dephasing_marks_unused_fields():
    pumps = pump_rates(EngineVariant.HE_PU, DecayRates(), ReservoirSpec())
    gamma = dephasing_rates(EngineVariant.HE_PU, DecayRates(), pumps)
    assert gamma.unused == {"gamma43", "gamma31", "gamma32"}
    assert gamma.gamma43 == 0.0
    assert gamma.gamma41 == pytest.approx(2 * 5.7 + pumps[0] + pumps[1] + pumps[0])


def test_rabi_unit_is_variant_gamma41():
    assert rabi_unit(EngineVariant.HE_PU) == pytest.approx(11.4 + 2 * 0.012678 + 0.058884, rel=1e-4)
    assert math.isclose(rabi_unit(EngineVariant.HE_C), rabi_unit(EngineVariant.HE_PU))


def test_reservoir_spec_rejects_bad_inputs():
    with pytest.raises(ValidationError, match="T41 must be positive"):
        ReservoirSpec(T41=0.0)
    with pytest.raises(ValidationError):
        ReservoirSpec(omega41=2.0e15)


def test_rates_increase_with_temperature():
    temperatures = [2000.0, 3500.0, 5000.0, 6500.0, 8000.0]
    occupations = [photon_occupation(4.0e15, T) for T in temperatures]
    pumps = [pump_rates(EngineVariant.HE_PUC, DecayRates(), ReservoirSpec(T41=T))[0] for T in temperatures]
    units = [rabi_unit(EngineVariant.HE_PUC, reservoirs=ReservoirSpec(T41=T)) for T in temperatures]
    for values in (occupations, pumps, units):
        assert all(later > earlier for earlier, later in zip(values, values[1:]))


def test_reservoir_frequency_is_angular_frequency():
    frequency = ReservoirSpec().frequency(1)
    assert isinstance(frequency, AngularFrequency)
    assert frequency.as_rad_s() == 4.0e15
    assert photon_occupation(frequency, 5000.0) == photon_occupation(4.0e15, 5000.0)
