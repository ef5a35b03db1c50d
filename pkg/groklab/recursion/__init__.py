# Python 3.10.11
# Creado: 08/10/2026
"""Laboratorio de la recursión

Verificación numérica, sin redes, de la contracción de la norma: cotas del
tiempo de cruce, dicotomía de necesidad, punto fijo con ruido y
preservación de la tasa.

"""

from .contraction import (
    BoundGrid,
    BoundReport,
    NecessityVerdict,
    RecursionConfig,
    crossing_time,
    ideal_crossing,
    necessity_check,
    simulate_contraction,
    verify_bounds,
)
from .kosson import KossonSimulation, kosson_fixed_point, simulate_kosson
from .rate import RatePreservation, radial_decay_series, rate_preservation_check

__all__ = [
    "BoundGrid",
    "BoundReport",
    "KossonSimulation",
    "NecessityVerdict",
    "RatePreservation",
    "RecursionConfig",
    "crossing_time",
    "ideal_crossing",
    "kosson_fixed_point",
    "necessity_check",
    "radial_decay_series",
    "rate_preservation_check",
    "simulate_contraction",
    "simulate_kosson",
    "verify_bounds",
]
