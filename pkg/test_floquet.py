import numpy as np
import pytest

from conftest import VARIANTS, make_params
from src.analyzers.closed_form import ClosedFormResponse
from src.analyzers.floquet import FloquetSolver
from src.errors import SingularSystemError
from src.models.params import DecayRates
from src.validation import MAX_HARMONICS, ValidationError

solver = FloquetSolver()


def test_unmodulated_engine_has_only_dc_harmonic():
    state = FloquetSolver(2).solve(make_params("HE_puc", epsilon=0.0))
    for l in (-2, -1, 1, 2):
        assert not np.any(state.harmonic(l))
    assert state.order == 2


@pytest.mark.parametrize("variant", VARIANTS)
def test_fields_off_populations_match_rate_equations(variant):
    params = make_params(variant, omega_pr=0.0).fields_off()
    state = solver.solve(params)
    expected = ClosedFormResponse().populations(params).populations
    assert np.allclose(state.dc_populations(), expected, rtol=1e-9, atol=1e-12)


def test_inactive_level_stays_empty():
    assert abs(solver.solve(make_params("HE_pu")).element(3, 3, 0)) < 1e-14
    assert abs(solver.solve(make_params("HE_c")).element(2, 2, 0)) < 1e-14


def test_periodic_state_invariants(composite_params):
    state = FloquetSolver(2).solve(composite_params)
    assert state.residual <= 1e-10
    assert state.conjugation_residual() < 1e-10
    assert state.trace_residual() < 1e-10
    assert state.population_bounds_ok()
    assert state.min_eigenvalue(phases=32) >= -1e-9
    assert np.max(np.abs(state.harmonic(1))) > 0


def test_first_harmonic_scales_linearly_with_epsilon():
    amplitudes = [
        np.max(np.abs(solver.solve(make_params("HE_puc", epsilon=eps)).harmonic(1)))
        for eps in (0.005, 0.01)
    ]
    slope = np.log(amplitudes[1] / amplitudes[0]) / np.log(2)
    assert slope == pytest.approx(1.0, abs=0.05)


def test_truncation_converges(composite_params):
    coarse = FloquetSolver(3).solve(composite_params).element(1, 4, 0)
    fine = FloquetSolver(4).solve(composite_params).element(1, 4, 0)
    assert fine == pytest.approx(coarse, rel=1e-6)


def test_truncation_change_needs_a_sideband():
    assert solver.truncation_change(make_params("HE_pu")) is None


def test_largest_order_solves_and_skips_truncation_check():
    params = make_params("HE_c")
    largest = FloquetSolver(MAX_HARMONICS)
    state = largest.solve(params, check_truncation=True)
    assert state.order == MAX_HARMONICS
    assert state.residual <= 1e-10
    assert largest.truncation_change(params, state) is None


def test_order_above_largest_rejected():
    with pytest.raises(ValidationError):
        FloquetSolver(MAX_HARMONICS + 1)


def test_order_zero_rejected_when_modulated(composite_params):
    with pytest.raises(ValidationError):
        FloquetSolver(0).solve(composite_params)


def test_static_mirror_folds_sidebands():
    state = FloquetSolver(2).solve(make_params("HE_c", omega_m=0.0))
    assert not np.any(state.harmonic(1))
    assert state.trace_residual() < 1e-10


def test_zero_rates_give_singular_system():
    params = make_params("HE_pu", omega_pr=1.0, omega_pu=1.0, decays=DecayRates(0.0, 0.0, 0.0))
    with pytest.raises(SingularSystemError) as excinfo:
        solver.solve(params)
    assert excinfo.value.zero_mode.startswith("rho_")


@pytest.mark.parametrize("variant", VARIANTS)
def test_linear_response_matches_weak_probe_solution(variant):
    params = make_params(variant, omega_pr=1e-4, delta_pr=0.3)
    response = solver.linear_response(params)
    full = solver.solve(params).probe_coherence(0)
    linear = response.harmonic(response.absorption, 0) + response.harmonic(response.emission, 0)
    assert linear == pytest.approx(full, rel=1e-5)


def test_linear_response_is_zero_beyond_solved_order():
    response = FloquetSolver(2).linear_response(make_params("HE_pu"))
    assert response.harmonic(response.emission, 1) == 0j
    assert response.harmonic(response.absorption, 5) == 0j
