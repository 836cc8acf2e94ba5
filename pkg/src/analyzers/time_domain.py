"""
Fixed-step time-domain integration of the master equation
Independent check of the harmonic-balance steady state
"""

import logging
import math

import numpy as np

from src.analyzers.engine import generator_blocks, vectorize
from src.analyzers.reservoirs import engine_rates
from src.models.params import EngineParams
from src.models.results import Trajectory
from src.validation import StepSizeError, validate_positive

logger = logging.getLogger(__name__)

IDENTITY16 = np.eye(16, dtype=complex)


def max_step(params: EngineParams) -> float:
    """Largest accepted step: 0.01·min(2π/ω_m, 1/γ₄₁) over the scales present"""
    scales = []
    if params.is_modulated and params.omega_m != 0:
        scales.append(2 * math.pi / abs(params.omega_m))
    gamma41 = engine_rates(params).dephasing.gamma41
    if gamma41 > 0:
        scales.append(1 / gamma41)
    if not scales:
        return math.inf
    return 0.01 * min(scales)


def rk4_step_matrix(generator, t: float, h: float) -> np.ndarray:
    """One classical Runge-Kutta step of dv/dt = A(t)v as a matrix"""
    a_start = generator(t)
    a_mid = generator(t + h / 2)
    a_end = generator(t + h)
    k1 = a_start
    k2 = a_mid @ (IDENTITY16 + (h / 2) * k1)
    k3 = a_mid @ (IDENTITY16 + (h / 2) * k2)
    k4 = a_end @ (IDENTITY16 + h * k3)
    return IDENTITY16 + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)


def evolve_time_domain(
    params: EngineParams,
    t_end: float,
    dt: float,
    tail: float | None = None,
) -> Trajectory:
    """
    Integrate the full time-dependent master equation from the maximally mixed
    state over the levels the variant populates

    For a periodic generator the step is shrunk to an integer fraction of the
    mirror period, the one-period propagator is raised to the number of whole
    periods, and the remaining steps are taken one at a time.

    Args:
        params: Engine parameters
        t_end: Final time in units of 1/(2π·MHz)
        dt: Requested step
        tail: Length of the recorded window ending at t_end (default: one
            mirror period, or only the final state when unmodulated)

    Returns:
        Trajectory of the recorded window

    Raises:
        StepSizeError: If dt does not resolve the mirror period and γ₄₁
    """
    validate_positive(t_end, "t_end")
    validate_positive(dt, "dt")
    limit = max_step(params)
    if dt > limit:
        raise StepSizeError(f"dt={dt} exceeds the stable limit {limit:.3e} for these parameters")

    L0, L_plus, L_minus = generator_blocks(params)
    periodic = params.is_modulated and params.omega_m != 0

    if periodic:
        omega = params.omega_m
        period = 2 * math.pi / abs(omega)
        per_period = math.ceil(period / dt)
        h = period / per_period

        def generator(t: float) -> np.ndarray:
            return L0 + L_plus * np.exp(-1j * omega * t) + L_minus * np.exp(1j * omega * t)
    else:
        if params.is_modulated:
            L0 = L0 + L_plus + L_minus
        per_period = 1
        h = dt

        def generator(t: float) -> np.ndarray:
            return L0

    total = max(1, math.ceil(t_end / h - 1e-9))
    if tail is None:
        recorded = per_period if periodic else 1
    else:
        recorded = max(1, math.ceil(tail / h - 1e-9))
    recorded = min(recorded, total)
    head = total - recorded

    def step(index: int) -> np.ndarray:
        return rk4_step_matrix(generator, (index % per_period) * h, h)

    propagator = IDENTITY16.copy()
    for index in range(per_period):
        propagator = step(index) @ propagator

    logger.info(f"Time-domain integration: {total} steps of {h:.3e} ({per_period} per period)")
    levels = params.variant.levels
    start = np.zeros((4, 4), dtype=complex)
    for level in levels:
        start[level - 1, level - 1] = 1 / len(levels)
    vector = vectorize(start)
    vector = np.linalg.matrix_power(propagator, head // per_period) @ vector
    for index in range(head - head % per_period, head):
        vector = step(index) @ vector

    times = []
    states = []
    for index in range(head, total):
        vector = step(index) @ vector
        times.append((index + 1) * h)
        states.append(vector.reshape(4, 4).copy())
    return Trajectory(times=np.array(times), states=np.array(states))
