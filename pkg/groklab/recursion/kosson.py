# Python 3.10.11
# Creado: 08/10/2026
"""Recursión en valor esperado con ruido de gradiente

E[V_{t+1}] = (1 - ηλ)²·E[V_t] + η²·C. Su punto fijo exacto es
η²C / (1 - (1 - ηλ)²) y su aproximación de primer orden ηC / (2λ).

"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class KossonSimulation:
    series: np.ndarray = field(repr=False)
    fixed_point: float
    fixed_point_exact: float
    approximation: float

    @property
    def rel_error_exact(self) -> float:
        return abs(self.fixed_point - self.fixed_point_exact) / self.fixed_point_exact

    @property
    def rel_error_approx(self) -> float:
        return abs(self.approximation - self.fixed_point_exact) / self.fixed_point_exact

    def serialize(self) -> dict[str, Any]:
        return {
            "steps": len(self.series) - 1,
            "fixed_point": self.fixed_point,
            "fixed_point_exact": self.fixed_point_exact,
            "approximation": self.approximation,
            "rel_error_exact": self.rel_error_exact,
            "rel_error_approx": self.rel_error_approx,
        }


def kosson_fixed_point(eta: float, lam: float, C_dim: float) -> float:
    return eta * eta * C_dim / (1.0 - (1.0 - eta * lam) ** 2)


def simulate_kosson(
    V0: float, eta: float, lam: float, C_dim: float, T: int | None = None
) -> KossonSimulation:
    """Itera la recursión T pasos (por defecto, hasta e^-60 del transitorio)"""
    if C_dim <= 0.0:
        raise ValueError("[Kosson] C debe ser positivo")
    if eta <= 0.0 or lam <= 0.0 or eta * lam >= 1.0:
        raise ValueError("[Kosson] Se requiere η, λ > 0 y ηλ < 1")
    a = (1.0 - eta * lam) ** 2
    noise = eta * eta * C_dim
    if T is None:
        T = math.ceil(60.0 / -math.log(a))
    series = np.empty(T + 1)
    V = float(V0)
    series[0] = V
    for t in range(1, T + 1):
        V = a * V + noise
        series[t] = V
    return KossonSimulation(
        series=series,
        fixed_point=V,
        fixed_point_exact=kosson_fixed_point(eta, lam, C_dim),
        approximation=eta * C_dim / (2.0 * lam),
    )
