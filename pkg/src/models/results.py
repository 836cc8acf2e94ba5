"""
Data models for solver and observable results
"""

import math
from dataclasses import dataclass, field

import numpy as np


def wrap_phase(angle: float) -> float:
    """Wrap an angle to (−π, π]"""
    return math.pi - (math.pi - angle) % (2 * math.pi)


@dataclass(frozen=True, eq=False)
class HarmonicState:
    """Truncated Fourier expansion ρ(t) = Σ ρ_l exp(−ilω_m t), l ∈ [−L, L]"""
    order: int
    omega_m: float
    coefficients: np.ndarray
    residual: float = 0.0

    def harmonic(self, l: int) -> np.ndarray:
        if abs(l) > self.order:
            return np.zeros((4, 4), dtype=complex)
        return self.coefficients[l + self.order]

    def element(self, j: int, k: int, l: int) -> complex:
        """ρ̃_jk,l with 1-based level labels"""
        return complex(self.harmonic(l)[j - 1, k - 1])

    def probe_coherence(self, l: int = 0) -> complex:
        """Reported probe coherence x_l = −ρ_14,l; Im x_0 > 0 is absorption"""
        return -self.element(1, 4, l)

    def dc_populations(self) -> np.ndarray:
        return np.real(np.diag(self.harmonic(0))).copy()

    def at_time(self, t: float) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        for l in range(-self.order, self.order + 1):
            rho += self.harmonic(l) * np.exp(-1j * l * self.omega_m * t)
        return rho

    def conjugation_residual(self) -> float:
        return max(
            float(np.max(np.abs(self.harmonic(l) - self.harmonic(-l).conj().T)))
            for l in range(-self.order, self.order + 1)
        )

    def trace_residual(self) -> float:
        residual = abs(np.trace(self.harmonic(0)) - 1)
        for l in range(-self.order, self.order + 1):
            if l != 0:
                residual = max(residual, abs(np.trace(self.harmonic(l))))
        return float(residual)

    def population_bounds_ok(self, tol: float = 1e-12) -> bool:
        populations = self.dc_populations()
        return bool(np.all(populations >= -tol) and np.all(populations <= 1 + tol))

    def min_eigenvalue(self, phases: int = 32) -> float:
        """Smallest eigenvalue of ρ(t) over equally spaced phases of the mirror cycle"""
        if self.omega_m == 0 or self.order == 0:
            times = [0.0]
        else:
            period = 2 * math.pi / abs(self.omega_m)
            times = [period * k / phases for k in range(phases)]
        lowest = math.inf
        for t in times:
            rho = self.at_time(t)
            hermitian = (rho + rho.conj().T) / 2
            lowest = min(lowest, float(np.linalg.eigvalsh(hermitian)[0]))
        return lowest


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Density matrices sampled by the time-domain integrator"""
    times: np.ndarray
    states: np.ndarray

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def traces(self) -> np.ndarray:
        return np.trace(self.states, axis1=1, axis2=2)

    def fourier_coefficient(self, l: int, omega_m: float) -> np.ndarray:
        """
        Harmonic ρ_l of the recorded window

        Assumes the window holds one full mirror period sampled uniformly
        with the endpoint excluded.
        """
        phases = np.exp(1j * l * omega_m * self.times)
        return np.mean(self.states * phases[:, None, None], axis=0)


@dataclass(frozen=True)
class ClosedFormPieces:
    """
    Effective pump rates, populations and response denominators of one mirror branch

    G and F are None until the denominators are evaluated; F stays None for
    engines without a control field.
    """
    X: float
    Y: float
    rho11: float
    rho22: float
    rho33: float
    rho44: float
    branch: int = 1
    G: complex | None = None
    F: complex | None = None

    @property
    def populations(self) -> tuple[float, float, float, float]:
        return (self.rho11, self.rho22, self.rho33, self.rho44)


@dataclass(frozen=True)
class CoherenceHarmonics:
    """Probe and control coherence amplitudes of the ± mirror branches"""
    rho14_plus: complex
    rho14_minus: complex
    rho43_plus: complex
    rho43_minus: complex
    rho14_dc: complex
    lead_plus: complex = 0j
    lead_minus: complex = 0j

    @property
    def sideband_plus(self) -> complex:
        """Part of rho14_plus induced by the mirror sideband"""
        return self.rho14_plus - self.lead_plus

    @property
    def sideband_minus(self) -> complex:
        return self.rho14_minus - self.lead_minus

    @property
    def branch_mean(self) -> complex:
        return (self.rho14_plus + self.rho14_minus) / 2


@dataclass(frozen=True)
class ModulationResult:
    """
    Modulation of the emitted probe coherence

    Im x(t) = Im x_0 − amplitude·cos(ω_m t − phase_alpha) for the
    exp(−iω_m t) harmonic convention. phase_alpha is None when the
    amplitude vanishes.
    """
    amplitude: float
    phase_alpha: float | None
    omega_m: float = 0.0

    @classmethod
    def from_harmonics(cls, plus: complex, minus: complex, omega_m: float) -> "ModulationResult":
        z = complex(plus) - complex(minus).conjugate()
        amplitude = abs(z)
        if amplitude == 0:
            return cls(amplitude=0.0, phase_alpha=None, omega_m=omega_m)
        alpha = wrap_phase(math.atan2(z.imag, z.real) + math.pi / 2)
        return cls(amplitude=amplitude, phase_alpha=alpha, omega_m=omega_m)

    def oscillation(self, t: "float | np.ndarray") -> "float | np.ndarray":
        """Oscillating part of Im x(t)"""
        if self.phase_alpha is None:
            return np.zeros_like(np.asarray(t, dtype=float))
        return -self.amplitude * np.cos(self.omega_m * np.asarray(t, dtype=float) - self.phase_alpha)


@dataclass(frozen=True)
class ResponseCoefficients:
    """Absorption and emission coefficients at one probe detuning"""
    sigma_abs: float
    sigma_em: float
    emission_plus: complex = 0j
    emission_minus: complex = 0j
    omega_m: float = 0.0

    @property
    def is_gain(self) -> bool:
        return self.sigma_em > self.sigma_abs

    @property
    def net_absorption(self) -> float:
        """Im of the full probe coherence"""
        return self.sigma_abs - self.sigma_em

    def modulation(self) -> ModulationResult:
        return ModulationResult.from_harmonics(self.emission_plus, self.emission_minus, self.omega_m)


@dataclass(frozen=True)
class SpectrumRow:
    """Per-detuning spectral record"""
    delta_pr: float
    sigma_abs: float
    sigma_em: float
    brightness: float
    brightness_over_n41: float
    mod_amplitude: float
    mod_phase: float | None
    flags: tuple[str, ...] = ()

    @property
    def usable(self) -> bool:
        """Row enters the entropy and emission-rate integrals"""
        return not self.flags and math.isfinite(self.brightness) and self.brightness >= 0


@dataclass(frozen=True)
class EngineReport:
    """Integrated observables of one engine configuration"""
    S_over_kB: float
    T_B_over_T0: float
    T_max_over_T0: float
    emission_rate: float
    entropy_upper: float
    entropy_lower: float
    second_law_ok: bool
    brightness_at_center: float
    gain_rows: int = 0
    excluded_rows: int = 0


@dataclass(frozen=True)
class TableRow:
    """One recomputed row of a reference table"""
    table_id: int
    serial: int
    omega_m: float
    field_over_gamma41: float
    reference: tuple[float, float, float]
    computed: tuple[float, float, float] | None
    tolerances: tuple[float, float, float]
    note: str = ""

    @property
    def relative_errors(self) -> tuple[float, float, float] | None:
        if self.computed is None:
            return None
        return tuple(
            abs(value - expected) / abs(expected)
            for value, expected in zip(self.computed, self.reference)
        )

    @property
    def passed(self) -> bool:
        errors = self.relative_errors
        if errors is None:
            return False
        return all(error <= tol for error, tol in zip(errors, self.tolerances))


@dataclass(frozen=True)
class VerificationCheck:
    """Outcome of one invariant check"""
    name: str
    residual: float
    threshold: float
    passed: bool
    gating: bool = True
    detail: str = ""

    @property
    def status(self) -> str:
        if self.passed:
            return "pass"
        return "fail" if self.gating else "warning"


@dataclass
class VerificationReport:
    """Collection of invariant checks"""
    checks: list[VerificationCheck] = field(default_factory=list)

    def add(self, check: VerificationCheck) -> None:
        self.checks.append(check)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks if check.gating)

    @property
    def warnings(self) -> list[VerificationCheck]:
        return [check for check in self.checks if not check.gating and not check.passed]


@dataclass(frozen=True)
class TableResult:
    """Recomputed reference table with its ordering checks"""
    table_id: int
    rows: tuple[TableRow, ...]
    orderings: tuple[VerificationCheck, ...] = ()

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows) and all(check.passed for check in self.orderings)
