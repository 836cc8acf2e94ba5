"""
EIT Heat Engine
Steady-state simulator for a four-level EIT heat engine driven by a vibrating mirror
"""

__version__ = "0.1.0"
