"""
Invariant checks for one engine configuration

Gating checks decide the verify exit status; the perturbative-regime and
truncation checks are warnings, reported only.
"""

import logging
import math

import numpy as np

from src.analyzers.closed_form import ClosedFormResponse
from src.analyzers.engine import generator_blocks, unvectorize, vectorize
from src.analyzers.floquet import DEFAULT_ORDER, FloquetSolver, effective_order
from src.analyzers.observables import ObservableAnalyzer, brightness, entropy_bounds
from src.analyzers.reservoirs import engine_rates
from src.errors import EngineError
from src.models.params import PERTURBATIVE_EPSILON, DetuningGrid, EngineParams
from src.models.results import HarmonicState, VerificationCheck, VerificationReport

logger = logging.getLogger(__name__)

GENERATOR_TOLERANCE = 1e-12
STATE_TOLERANCE = 1e-10
POSITIVITY_FLOOR = -1e-9
SLOPE_TOLERANCE = 0.05
BALANCE_TOLERANCE = 1e-9
AGREEMENT_TOLERANCE = 1e-9
TRUNCATION_TOLERANCE = 1e-8
LINEARITY_EPSILON = 0.01


def _check(name: str, residual: float, threshold: float, gating: bool = True, detail: str = "") -> VerificationCheck:
    return VerificationCheck(
        name=name,
        residual=float(residual),
        threshold=threshold,
        passed=bool(residual <= threshold),
        gating=gating,
        detail=detail,
    )


def _skipped(name: str, detail: str, gating: bool = True) -> VerificationCheck:
    return VerificationCheck(name=name, residual=0.0, threshold=0.0, passed=True, gating=gating, detail=detail)


def _relative(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else float(abs(a - b) / scale)


def oracle_tolerance(params: EngineParams) -> float:
    """Agreement required of the two methods: max(1e-3, (Ω_pr/γ₄₁)²)"""
    gamma41 = engine_rates(params).dephasing.gamma41
    return max(1e-3, (params.omega_pr / gamma41) ** 2)


def _with_probe(params: EngineParams) -> EngineParams:
    if params.omega_pr == 0:
        return params.with_updates(omega_pr=0.05 * engine_rates(params).dephasing.gamma41)
    return params


class EngineVerifier:
    """
    Invariant suite of the engine model

    Args:
        order: Harmonic truncation order of the Floquet solver
        grid: Grid for the entropy-flow check (default −50…50 with 2001 points)
    """

    def __init__(self, order: int = DEFAULT_ORDER, grid: DetuningGrid | None = None):
        self.solver = FloquetSolver(order)
        self.grid = grid or DetuningGrid()
        self.floquet = ObservableAnalyzer("floquet", order)
        self.closed = ObservableAnalyzer("closed-form", order)
        self.closed_form = ClosedFormResponse()

    @staticmethod
    def trace_preservation(params: EngineParams) -> VerificationCheck:
        """tr(Lρ) = 0 for every generator block"""
        trace_row = vectorize(np.eye(4))
        residual = max(float(np.max(np.abs(trace_row @ block))) for block in generator_blocks(params))
        return _check("trace_preservation", residual, GENERATOR_TOLERANCE)

    @staticmethod
    def hermiticity_preservation(params: EngineParams, draws: int = 1, seed: int = 0) -> VerificationCheck:
        """L0 maps Hermitian to Hermitian and L₋ρ = (L₊ρ)† for random Hermitian ρ"""
        rng = np.random.default_rng(seed)
        L0, L_plus, L_minus = generator_blocks(params)
        residual = 0.0
        for _ in range(draws):
            raw = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            rho = vectorize((raw + raw.conj().T) / 2)
            static = unvectorize(L0 @ rho)
            sideband = unvectorize(L_plus @ rho)
            residual = max(
                residual,
                float(np.max(np.abs(static - static.conj().T))),
                float(np.max(np.abs(unvectorize(L_minus @ rho) - sideband.conj().T))),
            )
        return _check("hermiticity_preservation", residual, GENERATOR_TOLERANCE, detail=f"{draws} draws")

    @staticmethod
    def state_checks(state: HarmonicState) -> list[VerificationCheck]:
        """Residual, conjugation symmetry, trace, population bounds and positivity of a periodic state"""
        populations = state.dc_populations()
        lowest = state.min_eigenvalue()
        return [
            _check("floquet_residual", state.residual, 1e-10),
            _check("conjugation_symmetry", state.conjugation_residual(), STATE_TOLERANCE),
            _check("trace_condition", state.trace_residual(), STATE_TOLERANCE),
            VerificationCheck(
                name="population_bounds",
                residual=float(max(0.0, -populations.min(), populations.max() - 1)),
                threshold=1e-12,
                passed=state.population_bounds_ok(),
            ),
            _check("positivity", max(0.0, -lowest), -POSITIVITY_FLOOR, detail=f"min eigenvalue {lowest:.3e}"),
        ]

    def epsilon_linearity(self, params: EngineParams) -> VerificationCheck:
        """First-harmonic amplitude scales linearly with ε"""
        name = "epsilon_linearity"
        if not params.is_modulated or params.omega_m == 0:
            return _skipped(name, "no mirror sideband")

        small = min(params.epsilon, LINEARITY_EPSILON)
        amplitudes = [
            float(np.max(np.abs(self.solver.solve(params.with_updates(epsilon=eps)).harmonic(1))))
            for eps in (small / 2, small)
        ]
        if amplitudes[0] == 0:
            return _check(name, math.inf, SLOPE_TOLERANCE, detail="first harmonic vanishes")
        slope = math.log(amplitudes[1] / amplitudes[0]) / math.log(2)
        return _check(name, abs(slope - 1), SLOPE_TOLERANCE, detail=f"slope {slope:.4f}")

    def detailed_balance(self, params: EngineParams) -> VerificationCheck:
        """With pump, control and mirror off the brightness equals n₄₁"""
        fields_off = _with_probe(params.fields_off())
        n41 = engine_rates(params).n41
        value = brightness(self.floquet.split_coefficients(fields_off))
        return _check("detailed_balance", abs(value / n41 - 1), BALANCE_TOLERANCE, detail=f"B/n41 = {value / n41:.12f}")

    def closed_form_agreement(self, params: EngineParams) -> VerificationCheck:
        """Closed form and Floquet coincide with pump, control and mirror off"""
        fields_off = _with_probe(params.fields_off())
        closed = self.closed.split_coefficients(fields_off)
        floquet = self.floquet.split_coefficients(fields_off)
        residual = max(
            _relative(closed.sigma_abs, floquet.sigma_abs),
            _relative(closed.sigma_em, floquet.sigma_em),
        )
        return _check("closed_form_agreement", residual, AGREEMENT_TOLERANCE)

    def coupled_oracle(self, params: EngineParams) -> VerificationCheck:
        """
        Closed-form coherence harmonics against the Floquet probe response

        The closed-form DC coherence is compared with the Floquet l = 0
        harmonic, and the sideband-induced part of each mirror branch with
        the l = ±1 harmonic it stands for. The residual is the worst of the
        relative errors.
        """
        name = "coupled_oracle"
        threshold = oracle_tolerance(params)
        try:
            closed = self.closed_form.coherence_harmonics(params)
            response = self.solver.linear_response(params)
        except EngineError as e:
            return VerificationCheck(name, math.inf, threshold, False, detail=str(e))

        def floquet(l: int) -> complex:
            return response.harmonic(response.absorption, l) + response.harmonic(response.emission, l)

        errors = {"dc": _relative(closed.rho14_dc, floquet(0))}
        if effective_order(params, self.solver.order) > 0:
            errors["l=+1"] = _relative(closed.sideband_plus, floquet(1))
            errors["l=-1"] = _relative(closed.sideband_minus, floquet(-1))
        detail = ", ".join(f"{key} {value:.3e}" for key, value in errors.items())
        return _check(name, max(errors.values()), threshold, detail=detail)

    def truncation(self, params: EngineParams) -> VerificationCheck:
        """ρ̃₁₄,₀ is stable when one more harmonic is kept"""
        if not params.is_modulated or params.omega_m == 0:
            return _skipped("truncation", "no mirror sideband", gating=False)
        change = self.solver.truncation_change(params)
        if change is None:
            return _skipped("truncation", f"order {self.solver.order} is the largest accepted", gating=False)
        order = self.solver.order
        return _check("truncation", change, TRUNCATION_TOLERANCE, gating=False, detail=f"order {order} vs {order + 1}")

    def second_law(self, params: EngineParams) -> VerificationCheck:
        """Entropy flow inside its second-law bounds"""
        try:
            report = self.floquet.report(params, self.grid)
        except EngineError as e:
            return VerificationCheck("second_law", math.inf, 0.0, False, detail=str(e))
        excess = max(report.entropy_lower - report.S_over_kB, report.S_over_kB - report.entropy_upper, 0.0)
        return _check(
            "second_law", excess, 0.0,
            detail=f"S = {report.S_over_kB:.4f} in [{report.entropy_lower:.4f}, {report.entropy_upper:.4f}]",
        )

    def run(self, params: EngineParams) -> VerificationReport:
        """
        Run the invariant suite on one configuration

        Returns:
            VerificationReport; report.passed reflects the gating checks only
        """
        report = VerificationReport()
        report.add(self.trace_preservation(params))
        report.add(self.hermiticity_preservation(params))
        for check in self.state_checks(self.solver.solve(params)):
            report.add(check)

        report.add(self.epsilon_linearity(params))
        report.add(self.detailed_balance(params))
        report.add(self.closed_form_agreement(params))

        upper, lower = entropy_bounds(params.variant, params.reservoirs)
        report.add(_check("bound_ordering", max(0.0, lower - upper), 0.0))

        report.add(_check("perturbative_regime", params.epsilon, PERTURBATIVE_EPSILON, gating=False))
        report.add(self.truncation(params))
        report.add(self.coupled_oracle(params))
        report.add(self.second_law(params))

        for check in report.checks:
            if check.status == "warning":
                logger.warning(f"Check {check.name}: residual {check.residual:.3e} above {check.threshold:.1e}")
            elif check.status == "fail":
                logger.error(f"Check {check.name} failed: residual {check.residual:.3e} ({check.detail})")
        logger.info(f"Verification {'passed' if report.passed else 'failed'} ({len(report.checks)} checks)")
        return report
