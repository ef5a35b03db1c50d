# Python 3.10.11
# Creado: 22/09/2026
"""Ajuste lineal por mínimos cuadrados ordinarios"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np


@dataclass
class LineFit:
    """Recta y = intercept + slope·x con su bondad de ajuste

    Si la varianza de 'y' es nula, 'r_squared' vale 0 por convenio y
    'flat' queda a True.

    """

    slope: float
    intercept: float
    r_squared: float
    n_points: int
    flat: bool = False

    def predict(self, x: Any) -> Any:
        return self.intercept + self.slope * np.asarray(x, dtype=np.float64)

    def serialize(self) -> dict[str, Any]:
        return {
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "n_points": self.n_points,
            "flat": self.flat,
        }


def least_squares_line(x: Sequence[float], y: Sequence[float]) -> LineFit:
    """Ajusta una recta por mínimos cuadrados ordinarios

    Requiere al menos 3 puntos y abscisas no todas iguales.

    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("[LineFit] 'x' e 'y' deben ser vectores de igual longitud")
    n = x.size
    if n < 3:
        raise ValueError(f"[LineFit] Se necesitan al menos 3 puntos, hay {n}")
    dx = x - x.mean()
    sxx = float(dx @ dx)
    if sxx <= 0.0:
        raise ValueError("[LineFit] Abscisa degenerada: todos los valores de x coinciden")
    dy = y - y.mean()
    syy = float(dy @ dy)
    slope = float(dx @ dy) / sxx
    intercept = float(y.mean() - slope * x.mean())
    if syy == 0.0:
        return LineFit(slope, intercept, 0.0, n, flat=True)
    residuals = y - (intercept + slope * x)
    r_squared = 1.0 - float(residuals @ residuals) / syy
    return LineFit(slope, intercept, min(max(r_squared, 0.0), 1.0), n)
