"""
Floquet harmonic-balance steady state of the periodically driven master equation

With ρ(t) = Σ_l ρ_l exp(−ilω_m t) and the generator
L0 + L₊exp(−iω_m t) + L₋exp(+iω_m t), stationarity of every harmonic gives

    (L0 + ilω_m)ρ_l + L₊ρ_{l−1} + L₋ρ_{l+1} = 0,   |l| ≤ L,

a block-tridiagonal system of 16(2L+1) complex unknowns. The ρ₁₁,₀ row is
replaced by the normalisation Σ_j ρ_jj,0 = 1.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import linalg

from src.analyzers.engine import commutator_superoperator, generator_blocks, probe_coupling
from src.errors import SingularSystemError, SolverError
from src.models.params import EngineParams, EngineVariant
from src.models.results import HarmonicState
from src.validation import MAX_HARMONICS, ValidationError, validate_order

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 2
RESIDUAL_TOLERANCE = 1e-10
TRUNCATION_TOLERANCE = 1e-8
# Flat index of ρ₁₁ inside a 16-component block
_RHO11 = 0
_DIAGONAL = (0, 5, 10, 15)


@dataclass(frozen=True, eq=False)
class ProbeResponse:
    """
    First-order probe coherence harmonics x_l = −ρ¹_14,l

    absorption is driven by the ground population ρ₁₁ alone; emission by the
    remaining populations and coherences of the probe-free state.
    """
    order: int
    omega_m: float
    absorption: np.ndarray
    emission: np.ndarray

    def harmonic(self, source: np.ndarray, l: int) -> complex:
        if abs(l) > self.order:
            return 0j
        return complex(source[l + self.order])


def component_label(index: int, order: int) -> str:
    """Human-readable name of a flat unknown, e.g. rho_23,l=-1"""
    block, within = divmod(index, 16)
    j, k = divmod(within, 4)
    return f"rho_{j + 1}{k + 1},l={block - order}"


def effective_order(params: EngineParams, order: int) -> int:
    """
    Order actually solved

    Unmodulated engines have no harmonics, and a static mirror folds the
    sidebands into the DC generator.
    """
    if not params.is_modulated or params.omega_m == 0:
        return 0
    if order < 1:
        raise ValidationError("harmonics must be at least 1 when the mirror sideband is active")
    return order


def _static_blocks(params: EngineParams, order: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    L0, L_plus, L_minus = generator_blocks(params)
    if order == 0 and params.is_modulated:
        # ω_m = 0: the sidebands are a constant shift of the control coupling
        L0 = L0 + L_plus + L_minus
    return L0, L_plus, L_minus


def assemble_system(
    L0: np.ndarray,
    L_plus: np.ndarray,
    L_minus: np.ndarray,
    omega_m: float,
    order: int,
) -> np.ndarray:
    """Block-tridiagonal harmonic-balance matrix without the trace row"""
    size = 2 * order + 1
    A = np.zeros((16 * size, 16 * size), dtype=complex)
    identity = np.eye(16)
    for block in range(size):
        l = block - order
        rows = slice(16 * block, 16 * (block + 1))
        A[rows, rows] = L0 + 1j * l * omega_m * identity
        if block > 0:
            A[rows, 16 * (block - 1):16 * block] = L_plus
        if block < size - 1:
            A[rows, 16 * (block + 1):16 * (block + 2)] = L_minus
    return A


def apply_trace_row(A: np.ndarray, order: int) -> np.ndarray:
    """Replace the ρ₁₁,₀ equation by the trace of the DC block"""
    A = A.copy()
    row = 16 * order + _RHO11
    A[row, :] = 0
    for offset in _DIAGONAL:
        A[row, 16 * order + offset] = 1
    return A


def pin_inactive_levels(A: np.ndarray, variant: EngineVariant, order: int) -> np.ndarray:
    """
    Fix ρ_kk,l = 0 for ground levels the variant never connects

    Their population equations are identically zero, which would leave a
    spurious zero mode.
    """
    A = A.copy()
    for block in range(2 * order + 1):
        for level in variant.inactive_levels:
            row = 16 * block + 5 * (level - 1)
            A[row, :] = 0
            A[row, row] = 1
    return A


def constrained_system(params: EngineParams, order: int) -> np.ndarray:
    """Harmonic-balance matrix with the trace row and inactive levels pinned"""
    L0, L_plus, L_minus = _static_blocks(params, order)
    A = apply_trace_row(assemble_system(L0, L_plus, L_minus, params.omega_m, order), order)
    return pin_inactive_levels(A, params.variant, order)


def relative_residual(A: np.ndarray, x: np.ndarray, b: np.ndarray) -> float:
    """Backward error ‖Ax − b‖ / (‖A‖‖x‖ + ‖b‖)"""
    scale = np.linalg.norm(A) * np.linalg.norm(x) + np.linalg.norm(b)
    if scale == 0:
        return 0.0
    return float(np.linalg.norm(A @ x - b) / scale)


def check_rank(A: np.ndarray, order: int) -> None:
    """
    Assert a unique periodic steady state

    Raises:
        SingularSystemError: Naming the dominant component of the zero mode
    """
    rank = np.linalg.matrix_rank(A)
    if rank == A.shape[0]:
        return
    null_vector = linalg.null_space(A)[:, 0]
    label = component_label(int(np.argmax(np.abs(null_vector))), order)
    raise SingularSystemError(
        f"Harmonic system is rank deficient ({rank} < {A.shape[0]}); zero mode dominated by {label}",
        zero_mode=label,
    )


def solve_linear(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Dense LU solve with a residual check

    Raises:
        SolverError: If the relative residual exceeds the tolerance
    """
    with np.errstate(all="ignore"):
        lu = linalg.lu_factor(A, check_finite=False)
        x = linalg.lu_solve(lu, b, check_finite=False)
    residual = relative_residual(A, x, b)
    if not residual <= RESIDUAL_TOLERANCE:
        raise SolverError(f"Linear solve residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:.0e}")
    return x


def _to_state(x: np.ndarray, omega_m: float, solved: int, order: int, residual: float) -> HarmonicState:
    coefficients = np.zeros((2 * order + 1, 4, 4), dtype=complex)
    blocks = x.reshape(2 * solved + 1, 4, 4)
    coefficients[order - solved:order + solved + 1] = blocks
    return HarmonicState(order=order, omega_m=omega_m, coefficients=coefficients, residual=residual)


@lru_cache(maxsize=32)
def _cached_state(params: EngineParams, order: int) -> HarmonicState:
    return FloquetSolver(order).solve(params)


class FloquetSolver:
    """Periodic steady state of the driven master equation at a fixed truncation order"""

    def __init__(self, order: int = DEFAULT_ORDER):
        self.order = validate_order(order)

    def solve(self, params: EngineParams, check_truncation: bool = False) -> HarmonicState:
        """
        Periodic steady state of the driven master equation

        Args:
            params: Engine parameters
            check_truncation: Re-solve at L+1 and warn when ρ̃₁₄,₀ moves by more than 1e-8

        Returns:
            HarmonicState with harmonics −L..L (zero beyond the effective order)

        Raises:
            ValidationError: If the order is invalid for a modulated engine
            SingularSystemError: If the steady state is not unique
            SolverError: If the residual exceeds 1e-10
        """
        solved = effective_order(params, self.order)
        A = constrained_system(params, solved)
        check_rank(A, solved)
        b = np.zeros(A.shape[0], dtype=complex)
        b[16 * solved + _RHO11] = 1

        x = solve_linear(A, b)
        state = _to_state(x, params.omega_m, solved, self.order, relative_residual(A, x, b))

        if check_truncation:
            change = self.truncation_change(params, state)
            if change is not None and change > TRUNCATION_TOLERANCE:
                logger.warning(
                    f"Truncation order {self.order} too small: rho_14,0 changes by {change:.2e} "
                    f"at order {self.order + 1}"
                )
        return state

    def truncation_change(self, params: EngineParams, state: HarmonicState | None = None) -> float | None:
        """
        Shift of ρ̃₁₄,₀ when one more harmonic is kept

        Returns None when there is nothing to compare: the engine is not
        modulated, or the order is already MAX_HARMONICS.
        """
        if effective_order(params, self.order) == 0:
            return None
        if self.order >= MAX_HARMONICS:
            logger.info(f"Truncation check skipped: order {self.order} is the largest accepted")
            return None
        state = state or self.solve(params)
        finer = FloquetSolver(self.order + 1).solve(params)
        return abs(finer.element(1, 4, 0) - state.element(1, 4, 0))

    def probe_free_state(self, params: EngineParams) -> HarmonicState:
        """Periodic steady state without the probe, at zero probe detuning"""
        return _cached_state(params.with_updates(omega_pr=0.0, delta_pr=0.0), self.order)

    def linear_response(self, params: EngineParams) -> ProbeResponse:
        """
        Probe coherence to first order in Ω_pr, split by population source

        The probe-free state ρ⁰ does not depend on Δ_pr (level 1 is then only
        coupled incoherently), so it is solved once and cached. The first-order
        correction solves M ρ¹ = −Ω_pr P ρ⁰ with tr ρ¹_0 = 0, once with the
        ρ⁰₁₁ part of the source and once with the remainder.

        Args:
            params: Engine parameters (delta_pr selects the detuning)

        Returns:
            ProbeResponse with absorption and emission harmonics
        """
        order = self.order
        solved = effective_order(params, order)
        rho0 = self.probe_free_state(params)

        blocks = np.array([rho0.harmonic(l) for l in range(-solved, solved + 1)])
        absorption_source = np.zeros_like(blocks)
        absorption_source[:, 0, 0] = blocks[:, 0, 0]
        emission_source = blocks - absorption_source

        probe = commutator_superoperator(probe_coupling())
        rhs = np.stack([
            -params.omega_pr * np.concatenate([probe @ block.reshape(16) for block in source])
            for source in (absorption_source, emission_source)
        ], axis=1)
        rhs[16 * solved + _RHO11, :] = 0

        A = constrained_system(params.with_updates(omega_pr=0.0), solved)
        x = solve_linear(A, rhs)

        coherence = np.zeros((2, 2 * order + 1), dtype=complex)
        for block in range(2 * solved + 1):
            coherence[:, order - solved + block] = -x[16 * block + 3, :]
        return ProbeResponse(
            order=order,
            omega_m=params.omega_m,
            absorption=coherence[0],
            emission=coherence[1],
        )
