import pytest

from src.errors import DomainError
from src.units import CONSTANTS, TWO_PI_MHZ, AngularFrequency, thermal_exponent


def test_constants_are_codata():
    assert CONSTANTS.hbar == pytest.approx(1.054571817e-34)
    assert CONSTANTS.kB == pytest.approx(1.380649e-23)
    assert CONSTANTS.c == 299792458.0


@pytest.mark.parametrize("omega, expected", [(4.0e15, 6.1106), (3.0e15, 4.5829)])
def test_thermal_exponent_at_reservoir_temperature(omega, expected):
    assert thermal_exponent(omega, 5000.0) == pytest.approx(expected, abs=5e-4)


def test_thermal_exponent_accepts_angular_frequency():
    omega = AngularFrequency.from_rad_s(4.0e15)
    assert thermal_exponent(omega, 5000.0) == thermal_exponent(4.0e15, 5000.0)


@pytest.mark.parametrize("temperature", [0.0, -10.0])
def test_thermal_exponent_rejects_non_positive_temperature(temperature):
    with pytest.raises(DomainError):
        thermal_exponent(4.0e15, temperature)


def test_angular_frequency_stores_rad_per_second():
    omega = AngularFrequency.from_rad_s(3)
    assert omega.as_rad_s() == 3.0
    assert isinstance(omega.value, float)


def test_two_pi_mhz_in_rad_per_second():
    assert TWO_PI_MHZ == pytest.approx(6.283185307e6)
