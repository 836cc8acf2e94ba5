"""
Solvers and observables for the EIT heat engine with a vibrating mirror
"""

from .reservoirs import engine_rates, photon_occupation, rabi_unit
from .engine import generator_blocks, hamiltonian_dc, hamiltonian_sideband, liouvillian
from .floquet import FloquetSolver, ProbeResponse
from .time_domain import evolve_time_domain
from .closed_form import ClosedFormResponse
from .observables import (
    ObservableAnalyzer, brightness, brightness_temperature, emission_rate, entropy_bounds,
    entropy_flow, intensity_rabi, rabi_intensity, t_max,
)
from .tables import TableRecomputer, reference_table
from .verification import EngineVerifier

__all__ = [
    'engine_rates', 'photon_occupation', 'rabi_unit',
    'generator_blocks', 'hamiltonian_dc', 'hamiltonian_sideband', 'liouvillian',
    'FloquetSolver', 'ProbeResponse', 'evolve_time_domain', 'ClosedFormResponse',
    'ObservableAnalyzer', 'brightness', 'brightness_temperature', 'emission_rate', 'entropy_bounds',
    'entropy_flow', 'intensity_rabi', 'rabi_intensity', 't_max',
    'TableRecomputer', 'reference_table', 'EngineVerifier',
]
