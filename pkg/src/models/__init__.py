"""
Data models for engine parameters and solver results
"""

from .params import DetuningGrid, EngineParams, EngineVariant, ReservoirSpec, DecayRates
from .results import (
    HarmonicState, Trajectory, ModulationResult, ResponseCoefficients, SpectrumRow,
    EngineReport, TableRow, TableResult, VerificationCheck, VerificationReport,
)

__all__ = [
    'DetuningGrid', 'EngineParams', 'EngineVariant', 'ReservoirSpec', 'DecayRates',
    'HarmonicState', 'Trajectory', 'ModulationResult', 'ResponseCoefficients', 'SpectrumRow',
    'EngineReport', 'TableRow', 'TableResult', 'VerificationCheck', 'VerificationReport',
]
