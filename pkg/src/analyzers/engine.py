"""
Engine model
Rotating-frame Hamiltonians, reservoir dissipators and their Liouvillian superoperators
"""

import numpy as np

from src.analyzers.reservoirs import engine_rates
from src.errors import VariantError
from src.models.params import Channel, Dissipator, EngineParams

IDENTITY = np.eye(4, dtype=complex)


def hamiltonian_dc(params: EngineParams) -> np.ndarray:
    """
    Static part of the rotating-frame Hamiltonian (ħ = 1, units of 2π·MHz)

    Diagonal {0, Δpr−Δpu, Δpr−Δc, Δpr}; couplings −Ω/2 between level 4 and
    levels 1 (probe), 2 (pump) and 3 (control). Fields a variant does not
    carry are already zero in params.
    """
    H = np.zeros((4, 4), dtype=complex)
    if params.variant.has_pump:
        H[1, 1] = params.delta_pr - params.delta_pu
    if params.variant.has_control:
        H[2, 2] = params.delta_pr - params.delta_c
    H[3, 3] = params.delta_pr

    for level, rabi in ((0, params.omega_pr), (1, params.omega_pu), (2, params.omega_c)):
        H[level, 3] = -rabi / 2
        H[3, level] = -rabi / 2
    return H


def hamiltonian_sideband(params: EngineParams) -> tuple[np.ndarray, np.ndarray]:
    """
    Mirror sideband couplings (V₊, V₋)

    H(t) = H_dc + V₊·exp(−iω_m t) + V₋·exp(+iω_m t); only the control
    transition is modulated, with amplitude −(Ω_c/2)(ε/2).

    Raises:
        VariantError: For engines without a vibrating mirror
    """
    if not params.variant.has_mirror:
        raise VariantError(f"{params.variant.value} carries no mirror sideband")

    amplitude = -(params.omega_c / 2) * (params.epsilon / 2)
    v_plus = np.zeros((4, 4), dtype=complex)
    v_plus[2, 3] = amplitude
    v_plus[3, 2] = amplitude
    return v_plus, v_plus.conj().T.copy()


def probe_coupling() -> np.ndarray:
    """Hamiltonian of the probe per unit Rabi frequency"""
    H = np.zeros((4, 4), dtype=complex)
    H[0, 3] = H[3, 0] = -0.5
    return H


def dissipators(params: EngineParams) -> tuple[Dissipator, Dissipator]:
    """
    Spontaneous (L1) and reservoir (L2) dissipators

    L1 decays 4→i at Γ₄ᵢ. L2 adds stimulated emission 4→i and absorption
    i→4, both at Γ₄ᵢn₄ᵢ, so the total downward rate is Γ₄ᵢ(n₄ᵢ+1) and the
    zero-field populations obey ρ₄₄/ρᵢᵢ = n₄ᵢ/(n₄ᵢ+1).
    """
    rates = engine_rates(params)
    spontaneous = []
    thermal = []
    for channel in params.variant.channels:
        decay = params.decays.rate(channel)
        occupation = rates.occupations[channel - 1]
        spontaneous.append(Channel(source=4, target=channel, rate=decay, occupation=occupation))
        thermal.append(Channel(source=4, target=channel, rate=decay * occupation, occupation=occupation))
        thermal.append(Channel(source=channel, target=4, rate=decay * occupation, occupation=occupation))
    return Dissipator(tuple(spontaneous)), Dissipator(tuple(thermal))


def commutator_superoperator(H: np.ndarray) -> np.ndarray:
    """Row-major superoperator of ρ ↦ −i[H, ρ]"""
    return -1j * (np.kron(H, IDENTITY) - np.kron(IDENTITY, H.T))


def dissipator_superoperator(*parts: Dissipator) -> np.ndarray:
    """Row-major superoperator of Σ rate·(LρL† − ½{L†L, ρ})"""
    D = np.zeros((16, 16), dtype=complex)
    for part in parts:
        for rate, jump in part.operators():
            if rate == 0:
                continue
            number = jump.conj().T @ jump
            D += rate * (
                np.kron(jump, jump.conj())
                - 0.5 * np.kron(number, IDENTITY)
                - 0.5 * np.kron(IDENTITY, number.T)
            )
    return D


def liouvillian(H: np.ndarray, parts: tuple[Dissipator, ...]) -> np.ndarray:
    """Full 16×16 Lindblad generator acting on row-major vec(ρ)"""
    return commutator_superoperator(H) + dissipator_superoperator(*parts)


def generator_blocks(params: EngineParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Fourier blocks (L0, L₊, L₋) of the periodic generator

    dρ/dt = [L0 + L₊exp(−iω_m t) + L₋exp(+iω_m t)] ρ. Unmodulated engines get
    zero sideband blocks.
    """
    L0 = liouvillian(hamiltonian_dc(params), dissipators(params))
    if params.variant.has_mirror:
        v_plus, v_minus = hamiltonian_sideband(params)
        return L0, commutator_superoperator(v_plus), commutator_superoperator(v_minus)
    zero = np.zeros((16, 16), dtype=complex)
    return L0, zero, zero.copy()


def vectorize(rho: np.ndarray) -> np.ndarray:
    return np.asarray(rho, dtype=complex).reshape(16)


def unvectorize(vector: np.ndarray) -> np.ndarray:
    return np.asarray(vector).reshape(4, 4)
