import numpy as np
import pytest

from conftest import make_params, random_params
from src.analyzers.engine import (
    commutator_superoperator, dissipator_superoperator, dissipators, generator_blocks,
    hamiltonian_dc, hamiltonian_sideband, unvectorize, vectorize,
)
from src.analyzers.reservoirs import rabi_unit
from src.analyzers.verification import EngineVerifier
from src.errors import VariantError
from src.models.params import DecayRates, EngineParams


def test_hamiltonian_entries_for_composite_engine():
    params = EngineParams(
        variant="HE_puc", omega_pr=1.0, omega_pu=2.0, omega_c=3.0,
        delta_pr=0.5, delta_pu=0.2, delta_c=-0.1,
    )
    H = hamiltonian_dc(params)
    assert np.allclose(np.diag(H), [0.0, 0.3, 0.6, 0.5])
    assert H[0, 3] == H[3, 0] == -0.5
    assert H[1, 3] == H[3, 1] == -1.0
    assert H[2, 3] == H[3, 2] == -1.5
    assert np.allclose(H, H.conj().T)


def test_pump_engine_drops_control_field():
    params = EngineParams(variant="HE_pu", omega_pr=1.0, omega_pu=2.0, omega_c=3.0, epsilon=0.5, omega_m=2.0)
    assert params.omega_c == 0.0
    assert params.epsilon == 0.0
    assert params.omega_m == 0.0
    assert np.all(hamiltonian_dc(params)[2] == 0)


def test_sideband_coupling_amplitude():
    params = EngineParams(variant="HE_c", omega_c=4.0, epsilon=0.02, omega_m=1.0)
    v_plus, v_minus = hamiltonian_sideband(params)
    assert v_plus[2, 3] == pytest.approx(-(4.0 / 2) * (0.02 / 2))
    assert v_plus[3, 2] == v_plus[2, 3]
    assert np.allclose(v_minus, v_plus.conj().T)
    assert np.count_nonzero(v_plus) == 2


def test_sideband_requires_mirror():
    with pytest.raises(VariantError):
        hamiltonian_sideband(EngineParams(variant="HE_pu"))


def test_dissipator_channels():
    spontaneous, thermal = dissipators(EngineParams(variant="HE_puc"))
    assert len(spontaneous.channels) == 3
    assert len(thermal.channels) == 6
    assert spontaneous.rate(4, 1) == pytest.approx(5.7)
    assert thermal.rate(1, 4) == pytest.approx(thermal.rate(4, 1))

    spontaneous, thermal = dissipators(EngineParams(variant="HE_pu"))
    assert {channel.target for channel in spontaneous.channels} == {1, 2}


def test_commutator_superoperator_matches_matrix_commutator():
    rng = np.random.default_rng(3)
    H = rng.normal(size=(4, 4))
    H = H + H.T
    rho = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    expected = -1j * (H @ rho - rho @ H)
    assert np.allclose(unvectorize(commutator_superoperator(H) @ vectorize(rho)), expected)


@pytest.mark.parametrize("variant", ["HE_pu", "HE_c", "HE_puc"])
def test_generator_preserves_trace(variant):
    trace_row = vectorize(np.eye(4))
    for block in generator_blocks(make_params(variant)):
        assert np.max(np.abs(trace_row @ block)) < 1e-12


@pytest.mark.parametrize("variant", ["HE_pu", "HE_c", "HE_puc"])
def test_generator_preserves_hermiticity(variant):
    rng = np.random.default_rng(7)
    raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = vectorize(raw + raw.conj().T)
    L0, L_plus, L_minus = generator_blocks(make_params(variant))
    static = unvectorize(L0 @ rho)
    assert np.allclose(static, static.conj().T, atol=1e-12)
    assert np.allclose(unvectorize(L_minus @ rho), unvectorize(L_plus @ rho).conj().T, atol=1e-12)


def test_unmodulated_engine_has_zero_sideband_blocks():
    _, L_plus, L_minus = generator_blocks(make_params("HE_puc", epsilon=0.0))
    assert not np.any(L_plus)
    assert not np.any(L_minus)


def test_hamiltonian_is_hermitian_over_random_draws():
    rng = np.random.default_rng(11)
    for _ in range(100):
        H = hamiltonian_dc(random_params(rng))
        assert np.allclose(H, H.conj().T, rtol=0, atol=1e-14)


def test_generator_preserves_hermiticity_over_random_draws():
    rng = np.random.default_rng(12)
    for _ in range(100):
        check = EngineVerifier.hermiticity_preservation(random_params(rng), draws=3)
        assert check.passed, check.residual


def test_composite_engine_without_pump_is_control_engine():
    reduced = make_params(
        "HE_puc", omega_pu=0.0, delta_pr=0.4, delta_pu=0.4, delta_c=-0.3,
        decays=DecayRates(Gamma42=0.0),
    )
    control = make_params(
        "HE_c", omega_pr=reduced.omega_pr, omega_c=reduced.omega_c, delta_pr=0.4, delta_c=-0.3,
        decays=DecayRates(Gamma42=0.0),
    )
    assert rabi_unit(reduced.variant, reduced.decays) == pytest.approx(rabi_unit(control.variant), rel=1e-12)
    assert np.allclose(hamiltonian_dc(reduced), hamiltonian_dc(control))
    assert np.allclose(dissipator_superoperator(*dissipators(reduced)), dissipator_superoperator(*dissipators(control)))
    for reduced_block, control_block in zip(generator_blocks(reduced), generator_blocks(control)):
        assert np.allclose(reduced_block, control_block)


def test_composite_engine_without_control_is_pump_engine():
    reduced = make_params(
        "HE_puc", omega_c=0.0, epsilon=0.0, delta_pr=-0.6, delta_pu=0.2, delta_c=-0.6,
        decays=DecayRates(Gamma43=0.0),
    )
    pump = make_params("HE_pu", omega_pr=reduced.omega_pr, omega_pu=reduced.omega_pu, delta_pr=-0.6, delta_pu=0.2)
    assert rabi_unit(reduced.variant, reduced.decays) == pytest.approx(rabi_unit(pump.variant), rel=1e-12)
    assert np.allclose(hamiltonian_dc(reduced), hamiltonian_dc(pump))
    for reduced_block, pump_block in zip(generator_blocks(reduced), generator_blocks(pump)):
        assert np.allclose(reduced_block, pump_block)
