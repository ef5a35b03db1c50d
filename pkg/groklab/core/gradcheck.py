# Python 3.10.11
# Creado: 22/09/2026
"""Oráculo de gradiente por diferencias finitas centradas"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np


def finite_diff_gradient(
    f: Callable[[np.ndarray], float],
    theta: np.ndarray,
    h: float = 1e-5,
    coords: Sequence[int] | None = None,
) -> np.ndarray:
    """Gradiente de 'f' en 'theta' por diferencias centradas

    Si se pasa 'coords', sólo se evalúan esas coordenadas y el resultado
    tiene su misma longitud (en el orden dado). 'theta' no se modifica.

    """
    if h <= 0:
        raise ValueError(f"[FiniteDiff] El paso 'h' debe ser positivo: {h}")
    base = np.array(theta, dtype=np.float64, copy=True)
    indices = range(base.size) if coords is None else coords
    grad = np.empty(len(indices), dtype=np.float64)
    for j, i in enumerate(indices):
        old = base[i]
        base[i] = old + h
        f_plus = f(base)
        base[i] = old - h
        f_minus = f(base)
        base[i] = old
        grad[j] = (f_plus - f_minus) / (2.0 * h)
    return grad
