"""
Closed-form steady-state response
Rate-equation populations, G/F denominators, first-harmonic coherences and
the modulation of the emitted probe coherence.

Branch +1 is the exp(−iω_m t) sideband and carries the upper sign of every
∓ω_m; branch −1 carries the lower sign.
"""

from dataclasses import replace

from src.analyzers.reservoirs import engine_rates
from src.errors import DegenerateInputError
from src.models.params import EngineParams
from src.models.results import ClosedFormPieces, CoherenceHarmonics, ModulationResult

BRANCHES = (1, -1)
DETERMINANT_FLOOR = 1e-14
SPLITS = {"full", "absorption", "emission"}


def _ratio(numerator: complex, denominator: complex, what: str) -> complex:
    if denominator == 0:
        raise DegenerateInputError(f"Pole in {what}: denominator vanishes")
    return numerator / denominator


def _d31(params: EngineParams, branch: int) -> complex:
    gamma = engine_rates(params).dephasing
    return gamma.gamma31 / 2 - 1j * (params.delta_pr - params.delta_c) - branch * 1j * params.omega_m


def _split_populations(pieces: ClosedFormPieces, split: str) -> tuple[float, float, float, float]:
    rho11, rho22, rho33, rho44 = pieces.populations
    if split == "absorption":
        return rho11, 0.0, 0.0, 0.0
    if split == "emission":
        return 0.0, rho22, rho33, rho44
    return rho11, rho22, rho33, rho44


def _sideband_source(params: EngineParams, F: complex, rho33: float, rho44: float) -> complex:
    if params.sideband_source_form == "nested_f":
        return 1j * params.epsilon * params.omega_c * (rho44 - rho33) / (4 * F ** 2)
    return 1j * (params.epsilon / 2) * params.omega_c * (rho44 - rho33) / (2 * F)


class ClosedFormResponse:
    """Rate-equation populations and coupled probe/control coherences in closed form"""

    @staticmethod
    def effective_pump_rates(params: EngineParams, branch: int = 1) -> tuple[float, float]:
        """
        Effective pump rates (X, Y) of the pump and control transitions

        X = R₂₄ + γ₄₂Ω_pu²/(γ₄₂² + 4Δ_pu²)
        Y = R₃₄ + γ₄₃(1 + ε/2)²Ω_c²/(γ₄₃² + 4(Δ_c ∓ ω_m)²)
        """
        rates = engine_rates(params)
        gamma = rates.dephasing
        X = rates.R24
        if params.omega_pu != 0:
            X += _ratio(
                gamma.gamma42 * params.omega_pu ** 2,
                gamma.gamma42 ** 2 + 4 * params.delta_pu ** 2,
                "X",
            )
        Y = rates.R34
        if params.omega_c != 0:
            shifted = params.delta_c - branch * params.omega_m
            Y += _ratio(
                gamma.gamma43 * (1 + params.epsilon / 2) ** 2 * params.omega_c ** 2,
                gamma.gamma43 ** 2 + 4 * shifted ** 2,
                "Y",
            )
        return float(X), float(Y)

    def populations(self, params: EngineParams, branch: int = 1) -> ClosedFormPieces:
        """
        Rate-equation populations of one mirror branch

        Each active ground level i is pumped up at u_i (u₁ = R₁₄, u₂ = X, u₃ = Y)
        and returns at Γ₄ᵢ + u_i, so ρᵢᵢ ∝ (Γ₄ᵢ + u_i)·Π_{j≠i}u_j and
        ρ₄₄ ∝ Π_j u_j. For the composite engine the normalisation is
        4XYR₁₄ + XYΓ₄₁ + YR₁₄Γ₄₂ + XR₁₄Γ₄₃.

        Args:
            params: Engine parameters
            branch: +1 or −1

        Returns:
            ClosedFormPieces without G and F

        Raises:
            DegenerateInputError: If the normalisation vanishes
        """
        rates = engine_rates(params)
        X, Y = self.effective_pump_rates(params, branch)
        up = {1: rates.R14, 2: X, 3: Y}
        channels = params.variant.channels

        weights = {level: 0.0 for level in (1, 2, 3, 4)}
        weights[4] = 1.0
        for channel in channels:
            weights[4] *= up[channel]
        for channel in channels:
            weight = params.decays.rate(channel) + up[channel]
            for other in channels:
                if other != channel:
                    weight *= up[other]
            weights[channel] = weight

        denominator = sum(weights.values())
        if not denominator > 0:
            raise DegenerateInputError(
                f"Population normalisation vanishes for {params.variant.value} (all pump rates zero)"
            )

        rho = {level: weight / denominator for level, weight in weights.items()}
        if abs(sum(rho.values()) - 1) > 1e-12:
            raise DegenerateInputError(f"Populations sum to {sum(rho.values())!r}")

        return ClosedFormPieces(
            X=X, Y=Y,
            rho11=rho[1], rho22=rho[2], rho33=rho[3], rho44=rho[4],
            branch=branch,
        )

    @staticmethod
    def response_denominators(params: EngineParams, branch: int = 1) -> tuple[complex, complex | None]:
        """
        Response denominators G and F of one mirror branch

        G = γ₁₄/2 − iΔpr + Ω_pu²/[4(γ₂₁/2 − i(Δpr−Δpu))]
            + (ε/2)²Ω_c²/[4(γ₃₁/2 − i(Δpr−Δc) ∓ iω_m)]
        F = γ₄₃/2 + iΔc ∓ iω_m + Ω_pu²/[4(γ₂₃/2 + i(Δpu−Δc) ∓ iω_m)]

        Terms with a vanishing numerator are omitted. F is None for engines
        without a control field.

        Raises:
            DegenerateInputError: On a pole of any term
        """
        gamma = engine_rates(params).dephasing
        G = gamma.gamma14 / 2 - 1j * params.delta_pr
        if params.omega_pu != 0:
            G += _ratio(
                params.omega_pu ** 2,
                4 * (gamma.gamma21 / 2 - 1j * (params.delta_pr - params.delta_pu)),
                "G",
            )
        if params.epsilon * params.omega_c != 0:
            G += _ratio((params.epsilon / 2) ** 2 * params.omega_c ** 2, 4 * _d31(params, branch), "G")
        if G == 0:
            raise DegenerateInputError("Pole in G: all dephasing rates and the probe detuning vanish")

        if not params.variant.has_control:
            return complex(G), None

        F = gamma.gamma43 / 2 + 1j * params.delta_c - branch * 1j * params.omega_m
        if params.omega_pu != 0:
            F += _ratio(
                params.omega_pu ** 2,
                4 * (gamma.gamma23 / 2 + 1j * (params.delta_pu - params.delta_c) - branch * 1j * params.omega_m),
                "F",
            )
        if F == 0:
            raise DegenerateInputError("Pole in F")
        return complex(G), complex(F)

    def pieces(self, params: EngineParams, branch: int = 1) -> ClosedFormPieces:
        """Populations together with G and F for one branch"""
        G, F = self.response_denominators(params, branch)
        return replace(self.populations(params, branch), G=G, F=F)

    def _branch_coherences(self, params: EngineParams, branch: int, split: str) -> tuple[complex, complex, complex]:
        """(ρ̃₁₄, ρ̃₄₃, leading term) of one branch"""
        pieces = self.pieces(params, branch)
        rho11, _, rho33, rho44 = _split_populations(pieces, split)
        lead = 1j * params.omega_pr * (rho11 - rho44) / (2 * pieces.G)

        if pieces.F is None or params.epsilon * params.omega_c == 0:
            return lead, 0j, lead

        d31 = _d31(params, branch)
        coupling = params.omega_pr * params.omega_c * (params.epsilon / 2) / (4 * d31)
        k_g = coupling / pieces.G
        k_f = coupling / pieces.F
        source = _sideband_source(params, pieces.F, rho33, rho44)

        determinant = 1 - k_g * k_f
        if abs(determinant) < DETERMINANT_FLOOR:
            raise DegenerateInputError(f"Coupled coherence system is singular (|det| = {abs(determinant):.2e})")
        rho14 = (lead + k_g * source) / determinant
        rho43 = (source + k_f * lead) / determinant
        return rho14, rho43, lead

    def coherence_harmonics(self, params: EngineParams, split: str = "full") -> CoherenceHarmonics:
        """
        First-harmonic probe and control coherences of both mirror branches

        Solves the coupled pair
            ρ̃₁₄ = iΩ_pr(ρ₁₁−ρ₄₄)/(2G) + K_G ρ̃₄₃
            ρ̃₄₃ = s + K_F ρ̃₁₄
        exactly, with K_G = Ω_prΩ_c(ε/2)/(4D₃₁G), K_F = Ω_prΩ_c(ε/2)/(4D₃₁F)
        and the sideband source s selected by params.sideband_source_form.

        Args:
            params: Engine parameters
            split: "full", or "absorption"/"emission" to keep only the ρ₁₁ or
                the (ρ₂₂, ρ₃₃, ρ₄₄) populations

        Returns:
            CoherenceHarmonics; rho14_dc is the branch mean of the leading term at ε = 0

        Raises:
            DegenerateInputError: On poles or a singular coupled system
        """
        if split not in SPLITS:
            raise ValueError(f"Unknown split '{split}'")

        plus = self._branch_coherences(params, 1, split)
        minus = self._branch_coherences(params, -1, split)

        unmodulated = params.with_updates(epsilon=0.0)
        dc = sum(self._branch_coherences(unmodulated, branch, split)[2] for branch in BRANCHES) / 2

        return CoherenceHarmonics(
            rho14_plus=plus[0],
            rho14_minus=minus[0],
            rho43_plus=plus[1],
            rho43_minus=minus[1],
            rho14_dc=dc,
            lead_plus=plus[2],
            lead_minus=minus[2],
        )

    def modulation(self, params: EngineParams) -> ModulationResult:
        """
        Amplitude and phase of the emitted probe coherence modulation

        Uses the sideband-induced part of the emission-split first harmonics,
        z = x₊ − conj(x₋): amplitude |z|, phase arg z + π/2 in (−π, π].
        """
        harmonics = self.coherence_harmonics(params, split="emission")
        return ModulationResult.from_harmonics(
            harmonics.sideband_plus, harmonics.sideband_minus, params.omega_m
        )
