"""
Observables
Absorption/emission split, spectral brightness, entropy flow, temperature
limits, second-law bounds and emission rate.
"""

import logging
import math

import numpy as np
from scipy.integrate import simpson
from scipy.special import xlogy

from src.analyzers.closed_form import ClosedFormResponse
from src.analyzers.floquet import DEFAULT_ORDER, FloquetSolver
from src.analyzers.reservoirs import engine_rates
from src.errors import (
    DegenerateInputError, DivergentBrightnessError, DomainError, SolverError,
    UndefinedEntropyError,
)
from src.models.params import DetuningGrid, EngineParams, EngineVariant, ReservoirSpec
from src.models.results import EngineReport, ResponseCoefficients, SpectrumRow
from src.units import TWO_PI_MHZ, AngularFrequency, thermal_exponent
from src.validation import validate_choice

logger = logging.getLogger(__name__)

METHODS = {"closed-form", "floquet"}


def brightness(sigma: ResponseCoefficients) -> float:
    """
    Asymptotic spectral brightness B = σ_em / (σ_abs − σ_em)

    A negative denominator is the gain regime; the value is still returned
    and callers flag it via sigma.is_gain.

    Raises:
        DivergentBrightnessError: If σ_abs = σ_em
    """
    denominator = sigma.sigma_abs - sigma.sigma_em
    if denominator == 0:
        raise DivergentBrightnessError(
            f"Brightness diverges: sigma_abs = sigma_em = {sigma.sigma_abs:.6e}"
        )
    return sigma.sigma_em / denominator


def _integration_arrays(spectrum: list[SpectrumRow]) -> tuple[np.ndarray, np.ndarray]:
    detunings = np.array([row.delta_pr for row in spectrum], dtype=float)
    values = np.array([row.brightness if row.usable else 0.0 for row in spectrum], dtype=float)
    return detunings, values


def entropy_flow(spectrum: list[SpectrumRow]) -> float:
    """
    Entropy flow rate per unit power S/k_B

    S = ∫[(B+1)ln(B+1) − B lnB]dω / ∫B dω by composite Simpson; flagged rows
    contribute zero and B lnB → 0 at B = 0.

    Raises:
        UndefinedEntropyError: If ∫B dω vanishes
    """
    detunings, values = _integration_arrays(spectrum)
    photons = simpson(values, x=detunings)
    if not photons > 0:
        raise UndefinedEntropyError("Spectrum carries no brightness; entropy flow undefined")
    entropy = simpson(xlogy(values + 1, values + 1) - xlogy(values, values), x=detunings)
    return float(entropy / photons)


def emission_rate(spectrum: list[SpectrumRow]) -> float:
    """Output photon rate R = (1/2π)∫B dω in 1/s, with ω in rad/s"""
    detunings, values = _integration_arrays(spectrum)
    return float(simpson(values, x=detunings) * TWO_PI_MHZ / (2 * math.pi))


def t_max(brightness_at_center: float, omega41: "AngularFrequency | float", reference_temperature: float) -> float:
    """
    Maximum scaled temperature T_max/T0 = (ħω₄₁/k_B T0) / ln(1/B + 1)

    Raises:
        DomainError: If B is not positive
    """
    if not brightness_at_center > 0:
        raise DomainError(f"T_max needs a positive brightness (got {brightness_at_center})")
    return thermal_exponent(omega41, reference_temperature) / math.log1p(1 / brightness_at_center)


def brightness_temperature(entropy: float, omega41: "AngularFrequency | float", reference_temperature: float) -> float:
    """
    Scaled brightness temperature T_B/T0 from S = ħω₄₁/(k_B T_B)

    Raises:
        DomainError: If the entropy is not positive
    """
    if not entropy > 0:
        raise DomainError(f"T_B needs a positive entropy flow (got {entropy})")
    return thermal_exponent(omega41, reference_temperature) / entropy


def entropy_bounds(variant: EngineVariant, reservoirs: ReservoirSpec) -> tuple[float, float]:
    """
    Second-law limits on S/k_B

    Upper: ħω₄₁/k_B T₄₁. Lower: the upper limit minus ħω₄ᵢ/k_B T₄ᵢ of every
    reservoir the engine dumps into (channels 2 and/or 3).
    """
    upper = thermal_exponent(reservoirs.frequency(1), reservoirs.T41)
    lower = upper
    for channel in variant.channels:
        if channel != 1:
            lower -= thermal_exponent(reservoirs.frequency(channel), reservoirs.temperature(channel))
    return upper, lower


def rabi_intensity(omega: float, gamma: float, saturation_intensity: float) -> float:
    """
    Laser intensity for a Rabi frequency, I = 2I_s(2Ω/Γ)²

    Args:
        omega: Rabi frequency
        gamma: Natural decay rate, same units as omega
        saturation_intensity: I_s in mW/cm²

    Returns:
        Intensity in mW/cm²
    """
    if not gamma > 0:
        raise DomainError(f"Decay rate must be positive (got {gamma})")
    return 2 * saturation_intensity * (2 * omega / gamma) ** 2


def intensity_rabi(intensity: float, gamma: float, saturation_intensity: float) -> float:
    """Rabi frequency for a laser intensity, inverse of rabi_intensity"""
    if not gamma > 0:
        raise DomainError(f"Decay rate must be positive (got {gamma})")
    if intensity < 0 or not saturation_intensity > 0:
        raise DomainError("Intensity must be non-negative and I_s positive")
    return gamma / 2 * math.sqrt(intensity / (2 * saturation_intensity))


def _flagged_row(delta: float, flag: str, sigma: ResponseCoefficients | None = None) -> SpectrumRow:
    return SpectrumRow(
        delta_pr=delta,
        sigma_abs=sigma.sigma_abs if sigma else math.nan,
        sigma_em=sigma.sigma_em if sigma else math.nan,
        brightness=math.nan,
        brightness_over_n41=math.nan,
        mod_amplitude=math.nan,
        mod_phase=None,
        flags=(flag,),
    )


class ObservableAnalyzer:
    """
    Spectra and integrated observables of one response method

    Args:
        method: "closed-form" (mean of the ± mirror branches) or "floquet"
            (first-order response of the periodic steady state)
        order: Harmonic truncation order for the Floquet method
    """

    def __init__(self, method: str = "floquet", order: int = DEFAULT_ORDER):
        self.method = validate_choice(method, "method", METHODS)
        self.solver = FloquetSolver(order)
        self.closed_form = ClosedFormResponse()

    def split_coefficients(self, params: EngineParams) -> ResponseCoefficients:
        """
        Absorption and emission coefficients at params.delta_pr

        The probe coherence is linear in the populations that drive it:
        σ_abs = Im x evaluated with (ρ₁₁, 0, 0, 0) and σ_em = −Im x evaluated
        with (0, ρ₂₂, ρ₃₃, ρ₄₄), so σ_abs − σ_em is Im of the full coherence.

        Returns:
            ResponseCoefficients with the emission first harmonics attached
        """
        if self.method == "closed-form":
            absorption = self.closed_form.coherence_harmonics(params, split="absorption")
            emission = self.closed_form.coherence_harmonics(params, split="emission")
            return ResponseCoefficients(
                sigma_abs=float(absorption.branch_mean.imag),
                sigma_em=float(-emission.branch_mean.imag),
                emission_plus=emission.sideband_plus,
                emission_minus=emission.sideband_minus,
                omega_m=params.omega_m,
            )

        response = self.solver.linear_response(params)
        return ResponseCoefficients(
            sigma_abs=float(response.harmonic(response.absorption, 0).imag),
            sigma_em=float(-response.harmonic(response.emission, 0).imag),
            emission_plus=response.harmonic(response.emission, 1),
            emission_minus=response.harmonic(response.emission, -1),
            omega_m=params.omega_m,
        )

    def center_brightness(self, params: EngineParams) -> float:
        """Brightness at Δ_pr = 0"""
        return brightness(self.split_coefficients(params.with_updates(delta_pr=0.0)))

    def spectrum_row(self, params: EngineParams, n41: float) -> SpectrumRow:
        """Evaluate one grid point; numerical failures become flagged rows"""
        delta = params.delta_pr
        try:
            sigma = self.split_coefficients(params)
        except DegenerateInputError:
            return _flagged_row(delta, "degenerate")
        except SolverError:
            return _flagged_row(delta, "singular")

        try:
            value = brightness(sigma)
        except DivergentBrightnessError:
            return _flagged_row(delta, "divergent", sigma)

        flags = []
        if sigma.sigma_em < 0:
            flags.append("negative_emission")
        if sigma.is_gain:
            flags.append("gain")
        modulation = sigma.modulation()
        return SpectrumRow(
            delta_pr=delta,
            sigma_abs=sigma.sigma_abs,
            sigma_em=sigma.sigma_em,
            brightness=value,
            brightness_over_n41=value / n41,
            mod_amplitude=modulation.amplitude,
            mod_phase=modulation.phase_alpha,
            flags=tuple(flags),
        )

    def sweep(self, params: EngineParams, grid: DetuningGrid | None = None) -> list[SpectrumRow]:
        """
        Spectrum over a probe detuning grid

        Args:
            params: Engine parameters (delta_pr is overridden per point)
            grid: Detuning grid (default −50…50 with 2001 points)

        Returns:
            One SpectrumRow per grid point, in grid order
        """
        grid = grid or DetuningGrid()
        n41 = engine_rates(params).n41

        logger.info(f"Sweeping {params.variant.value} over {grid.points} points ({self.method})")
        rows = [
            self.spectrum_row(params.with_updates(delta_pr=float(delta)), n41)
            for delta in grid.values()
        ]

        flagged = sum(1 for row in rows if row.flags)
        if flagged:
            logger.warning(f"{flagged} of {len(rows)} spectrum rows flagged")
        return rows

    def report(self, params: EngineParams, grid: DetuningGrid | None = None) -> EngineReport:
        """
        Integrated observables of one configuration

        Args:
            params: Engine parameters
            grid: Integration grid (default −50…50 with 2001 points)

        Returns:
            EngineReport; T0 is the T₄₁ reservoir temperature
        """
        spectrum = self.sweep(params, grid)
        reservoirs = params.reservoirs
        reference_temperature = reservoirs.T41
        omega41 = reservoirs.frequency(1)

        entropy = entropy_flow(spectrum)
        center = self.center_brightness(params)
        upper, lower = entropy_bounds(params.variant, reservoirs)

        return EngineReport(
            S_over_kB=entropy,
            T_B_over_T0=brightness_temperature(entropy, omega41, reference_temperature),
            T_max_over_T0=t_max(center, omega41, reference_temperature),
            emission_rate=emission_rate(spectrum),
            entropy_upper=upper,
            entropy_lower=lower,
            second_law_ok=lower <= entropy <= upper,
            brightness_at_center=center,
            gain_rows=sum(1 for row in spectrum if "gain" in row.flags),
            excluded_rows=sum(1 for row in spectrum if not row.usable),
        )
