# Python 3.10.11
# Creado: 09/10/2026
"""Preservación de la tasa de contracción

Compara la pendiente discreta de log V_t con la de log D_t, siendo
D_t = ||θ_t - θ_post||². Con ε_t = ||θ_post|| / ||θ_t|| pequeño ambas
pendientes coinciden salvo un término de orden ηλ·ε_t.

"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

import numpy as np


@dataclass
class RatePreservation:
    max_gap: float
    epsilon_max: float
    K: float | None = None
    gaps: np.ndarray = field(default_factory=lambda: np.zeros(0), repr=False)

    def serialize(self) -> dict[str, Any]:
        return {"max_gap": self.max_gap, "epsilon_max": self.epsilon_max, "K": self.K}


def rate_preservation_check(
    theta_series: Iterable[np.ndarray],
    theta_post: np.ndarray,
    eta_lambda: float | None = None,
) -> RatePreservation:
    """Máxima diferencia entre las pendientes de log V y log D

    Con 'eta_lambda' se informa además K = max_gap / (ηλ·ε_max).

    """
    theta_post = np.asarray(theta_post, dtype=np.float64)
    post_norm = float(np.linalg.norm(theta_post))
    V, D, eps = [], [], []
    for theta in theta_series:
        theta = np.asarray(theta, dtype=np.float64)
        norm = float(np.linalg.norm(theta))
        if norm <= post_norm:
            raise ValueError("[RatePreservation] Se requiere ||θ_t|| > ||θ_post|| en toda la serie")
        V.append(norm * norm)
        diff = theta - theta_post
        D.append(float(diff @ diff))
        eps.append(post_norm / norm)
    if len(V) < 2:
        raise ValueError("[RatePreservation] Se necesitan al menos dos puntos")
    gaps = np.abs(np.diff(np.log(V)) - np.diff(np.log(D)))
    max_gap = float(gaps.max())
    eps_max = max(eps)
    K = max_gap / (eta_lambda * eps_max) if eta_lambda and eps_max > 0.0 else None
    return RatePreservation(max_gap, eps_max, K, gaps)


def radial_decay_series(
    theta_post: np.ndarray,
    direction: np.ndarray,
    r0: float,
    eta: float,
    lam: float,
    T: int,
) -> Iterator[np.ndarray]:
    """θ_t = θ_post + r0·(1 - ηλ)^t·u, con u unitario"""
    u = np.asarray(direction, dtype=np.float64)
    u = u / np.linalg.norm(u)
    for t in range(T + 1):
        yield theta_post + r0 * (1.0 - eta * lam) ** t * u
