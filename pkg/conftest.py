"""
Shared fixtures for the engine test suite
"""

import numpy as np
import pytest

from src.analyzers.reservoirs import rabi_unit
from src.models.params import DecayRates, EngineParams, EngineVariant, ReservoirSpec

VARIANTS = [variant.value for variant in EngineVariant]


def make_params(variant: str = "HE_puc", **overrides) -> EngineParams:
    """Default operating point of a variant: Ω_pu = Ω_c = γ₄₁, Ω_pr = 0.05γ₄₁, ε = 0.01, ω_m = 2"""
    unit = rabi_unit(EngineVariant.parse(variant))
    values = dict(
        variant=variant,
        omega_pr=0.05 * unit,
        omega_pu=unit,
        omega_c=unit,
        omega_m=2.0,
        epsilon=0.01,
    )
    values.update(overrides)
    return EngineParams(**values)


def random_params(rng: np.random.Generator, fields: bool = True) -> EngineParams:
    """
    Random valid operating point

    Temperatures 3000-8000 K, decay rates 2-10, probe up to 0.1γ₄₁,
    pump and control up to 1.5γ₄₁, ε ≤ 0.02 and ω_m in [1, 3].
    """
    variant = EngineVariant.parse(VARIANTS[int(rng.integers(len(VARIANTS)))])
    reservoirs = ReservoirSpec(*(float(t) for t in rng.uniform(3000.0, 8000.0, size=3)))
    decays = DecayRates(*(float(rate) for rate in rng.uniform(2.0, 10.0, size=3)))
    unit = rabi_unit(variant, decays, reservoirs)
    scale = 1.5 if fields else 0.0
    return EngineParams(
        variant=variant,
        omega_pr=float(rng.uniform(0.01, 0.1)) * unit,
        omega_pu=float(rng.uniform(0.0, scale)) * unit,
        omega_c=float(rng.uniform(0.0, scale)) * unit,
        delta_pr=float(rng.uniform(-20.0, 20.0)),
        delta_pu=float(rng.uniform(-10.0, 10.0)),
        delta_c=float(rng.uniform(-10.0, 10.0)),
        omega_m=float(rng.uniform(1.0, 3.0)),
        epsilon=float(rng.uniform(1e-3, 0.02)) if fields else 0.0,
        reservoirs=reservoirs,
        decays=decays,
    )


@pytest.fixture
def params_factory():
    return make_params


@pytest.fixture
def composite_params():
    return make_params("HE_puc")


@pytest.fixture(params=VARIANTS)
def variant_params(request):
    return make_params(request.param)


@pytest.fixture(params=VARIANTS)
def fields_off_params(request):
    return make_params(request.param).fields_off()
