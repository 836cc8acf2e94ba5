"""
Spectral trends of the three engines

Brightness and absorption features are located with the Floquet response.
Where the engine does not follow the trend a simple rate picture suggests,
the measured behaviour is pinned so a change shows up here.
"""

import math

import numpy as np
import pytest

from conftest import make_params
from src.analyzers.closed_form import ClosedFormResponse
from src.analyzers.observables import ObservableAnalyzer, brightness, t_max
from src.analyzers.reservoirs import engine_rates, rabi_unit
from src.analyzers.tables import CONTROL_FIELDS, MIRROR_FREQUENCIES, ordering_checks, table_params
from src.models.params import EngineVariant
from src.models.results import TableRow

floquet = ObservableAnalyzer("floquet")
closed_form = ClosedFormResponse()
FIELDS = (0.8, 1.0, 1.2)


def brightness_curve(params, detunings) -> np.ndarray:
    return np.array([
        brightness(floquet.split_coefficients(params.with_updates(delta_pr=float(delta))))
        for delta in detunings
    ])


def absorption_curve(params, detunings) -> np.ndarray:
    return np.array([
        floquet.split_coefficients(params.with_updates(delta_pr=float(delta))).sigma_abs
        for delta in detunings
    ])


def test_pump_engine_peaks_at_line_center():
    detunings = np.linspace(-3.0, 3.0, 121)
    curve = brightness_curve(make_params("HE_pu"), detunings)
    assert detunings[np.argmax(curve)] == pytest.approx(0.0, abs=0.1)


def test_pump_engine_brightness_grows_with_pump():
    unit = rabi_unit(EngineVariant.HE_PU)
    values = [floquet.center_brightness(make_params("HE_pu", omega_pu=field * unit)) for field in FIELDS]
    assert values[0] <= values[1] <= values[2]


def test_control_engine_brightness_falls_with_mirror_frequency():
    values = [floquet.center_brightness(make_params("HE_c", omega_m=omega_m)) for omega_m in MIRROR_FREQUENCIES]
    assert values[0] > values[1] > values[2]


def test_modulation_phase_at_center_rises_with_mirror_frequency():
    phases = [
        closed_form.modulation(make_params("HE_c", omega_m=omega_m)).phase_alpha
        for omega_m in MIRROR_FREQUENCIES
    ]
    assert phases[0] < phases[1] < phases[2]


def test_composite_peak_brightness_is_flat_in_control_field():
    # measured 97.76, 97.81, 97.84 for 0.8, 1.0, 1.2 γ₄₁: flat, not decreasing
    unit = rabi_unit(EngineVariant.HE_PUC)
    detunings = np.linspace(-1.0, 1.0, 41)
    peaks = []
    for field in FIELDS:
        params = make_params("HE_puc", omega_c=field * unit)
        peaks.append(brightness_curve(params, detunings).max() / engine_rates(params).n41)
    assert min(peaks) > 50
    assert (max(peaks) - min(peaks)) / min(peaks) < 0.01


@pytest.mark.parametrize("omega_m", MIRROR_FREQUENCIES)
def test_composite_absorption_doublet_ignores_mirror_frequency(omega_m):
    # dressed-state splitting ±√(Ω_pu² + Ω_c²)/2
    params = make_params("HE_puc", omega_m=omega_m)
    splitting = math.hypot(params.omega_pu, params.omega_c) / 2
    for sign in (1, -1):
        detunings = sign * np.linspace(10.0, 14.0, 201)
        curve = absorption_curve(params, detunings)
        assert detunings[np.argmax(curve)] == pytest.approx(sign * splitting, abs=0.3)


def test_composite_line_center_temperature_is_flat_in_mirror_frequency():
    rows = []
    for field in CONTROL_FIELDS:
        if field < 0.5:
            continue
        series = []
        for serial, omega_m in enumerate(MIRROR_FREQUENCIES, start=1):
            params = table_params(3, omega_m, field)
            value = t_max(floquet.center_brightness(params), params.reservoirs.frequency(1), params.reservoirs.T41)
            series.append(value)
            rows.append(TableRow(3, serial, omega_m, field, (value,) * 3, (value, 0.0, 0.0), (0.0,) * 3))
        assert (max(series) - min(series)) / min(series) < 0.01
    checks = ordering_checks(3, rows)
    assert len(checks) == 4
    assert not all(check.passed for check in checks)


def test_closed_form_modulation_dip_fills_with_mirror_frequency():
    detunings = np.linspace(-20.0, 20.0, 401)
    ratios = []
    for omega_m in (1.0, 3.0):
        params = make_params("HE_c", omega_m=omega_m)
        amplitudes = [
            closed_form.modulation(params.with_updates(delta_pr=float(delta))).amplitude
            for delta in detunings
        ]
        ratios.append(amplitudes[200] / max(amplitudes))
    assert ratios[0] < ratios[1]


def test_pump_detuning_moves_brightness_peak():
    detunings = np.linspace(-5.0, 20.0, 501)
    curve = brightness_curve(make_params("HE_pu", delta_pu=10.0), detunings)
    assert detunings[np.argmax(curve)] == pytest.approx(10.0, abs=0.5)


def test_control_detuning_moves_brightness_peak_to_raman_resonance():
    detunings = np.linspace(0.0, 20.0, 401)
    params = make_params("HE_c", delta_c=10.0)
    curve = brightness_curve(params, detunings)
    assert detunings[np.argmax(curve)] == pytest.approx(params.delta_c, abs=0.5)


def test_composite_engine_has_two_transparency_windows():
    params = make_params("HE_puc", delta_c=10.0)
    for center in (0.0, 10.0):
        below, at, above = absorption_curve(params, [center - 1.0, center, center + 1.0])
        assert at < below
        assert at < above
