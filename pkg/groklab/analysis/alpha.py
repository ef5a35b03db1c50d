# Python 3.10.11
# Creado: 04/10/2026
"""Umbral angular α⋆

Dos formas de evaluar el ángulo a partir del cual la validación transita:

    - A partir de constantes: arcsin((M_q - 2(ε_lin + ε_hom))/(f·G·sqrt(V))),
      con f = 1 o f = 2 según la convención elegida.
    - Forma C: arcsin(C / sqrt(V)), con C = sin(α⋆)·sqrt(V_Tmem) calibrado
      en otra celda.

El argumento del arcoseno se recorta a [0, 1] y el recorte queda marcado:
'negative' si era negativo y 'unreachable' si superaba 1.

"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any, Literal, Sequence

import numpy as np

from groklab.models.observables import MarginReport

ArcsinFlag = Literal["negative", "unreachable"]


@dataclass
class ArcsinValue:
    degrees: float
    argument: float
    flag: ArcsinFlag | None = None

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


def _arcsin_degrees(argument: float) -> ArcsinValue:
    flag: ArcsinFlag | None = None
    clipped = argument
    if argument < 0.0:
        clipped, flag = 0.0, "negative"
    elif argument > 1.0:
        clipped, flag = 1.0, "unreachable"
    return ArcsinValue(math.degrees(math.asin(clipped)), float(argument), flag)


def quantile_margin(margins: MarginReport | Sequence[float], q: float) -> float:
    """M_q: menor |Δ| de S₋ tal que una fracción q de S₋ queda por debajo"""
    if not 0.0 < q <= 1.0:
        raise ValueError(f"[QuantileMargin] q debe estar en (0, 1]: {q}")
    values = margins.margins if isinstance(margins, MarginReport) else np.asarray(margins, dtype=np.float64)
    negative = np.sort(np.abs(values[values <= 0.0]))
    n = negative.size
    if n == 0:
        raise ValueError("[QuantileMargin] No hay ejemplos mal clasificados")
    index = max(0, math.ceil(q * n - 1e-12) - 1)
    return float(negative[index])


def q_delta(p_chance: float, q_grok: float) -> float:
    """(q_grok - p_chance)/(1 - p_chance)"""
    if not (0.0 <= p_chance < q_grok <= 1.0):
        raise ValueError(
            f"[QDelta] Se requiere 0 <= p_chance < q_grok <= 1 (p_chance={p_chance}, q_grok={q_grok})"
        )
    return (q_grok - p_chance) / (1.0 - p_chance)


@dataclass
class AlphaStarModel:
    """Constantes del umbral angular

    M_q en unidades de logit; G_eff en logits por unidad de norma; ε_lin y
    ε_hom, si se conocen, en logits. C en unidades de norma de parámetros.

    """

    M_q: float
    G_eff: float
    eps_lin: float = 0.0
    eps_hom: float = 0.0
    C: float | None = None
    factor: Literal[1, 2] = 1

    def __post_init__(self) -> None:
        if self.factor not in (1, 2):
            raise ValueError(f"[AlphaStar] Convención desconocida: factor={self.factor}")
        if self.G_eff <= 0.0:
            raise ValueError("[AlphaStar] G_eff debe ser positivo")


@dataclass
class AlphaStarEstimate:
    bound: ArcsinValue
    c_form: ArcsinValue | None = None

    def serialize(self) -> dict[str, Any]:
        return {
            "bound": self.bound.serialize(),
            "c_form": self.c_form.serialize() if self.c_form else None,
        }


def alpha_star_from_constants(model: AlphaStarModel, V_Tmem: float) -> AlphaStarEstimate:
    """α⋆ en grados a partir de las constantes, y su forma C si hay C"""
    if V_Tmem <= 0.0:
        raise ValueError("[AlphaStar] V_Tmem debe ser positivo")
    sqrt_v = math.sqrt(V_Tmem)
    numerator = model.M_q - 2.0 * (model.eps_lin + model.eps_hom)
    bound = _arcsin_degrees(numerator / (model.factor * model.G_eff * sqrt_v))
    c_form = _arcsin_degrees(model.C / sqrt_v) if model.C is not None else None
    return AlphaStarEstimate(bound, c_form)


def predict_alpha_C(C: float, sqrt_V_Tmem: float) -> ArcsinValue:
    """α⋆ previsto en otra celda con la constante C calibrada"""
    if sqrt_V_Tmem <= 0.0:
        raise ValueError("[AlphaStar] sqrt(V_Tmem) debe ser positivo")
    return _arcsin_degrees(C / sqrt_V_Tmem)


@dataclass
class CCalibration:
    per_cell: list[tuple[float, float]]
    mean: float
    std: float
    cv: float

    def serialize(self) -> dict[str, Any]:
        return {
            "p": [p for p, _ in self.per_cell],
            "C": [c for _, c in self.per_cell],
            "mean": self.mean,
            "std": self.std,
            "cv": self.cv,
        }


def calibrate_C(cells: Sequence[tuple[float, float, float]]) -> CCalibration:
    """C = sin(α⋆)·sqrt(V_Tmem) por celda, con media, desviación y CV

    Cada celda es (p, sqrt(V_Tmem), α⋆ observado en grados).

    """
    if not cells:
        raise ValueError("[CCalibration] Se necesita al menos una celda")
    per_cell = [(float(p), math.sin(math.radians(alpha)) * sqrt_v) for p, sqrt_v, alpha in cells]
    values = np.array([c for _, c in per_cell])
    mean = float(values.mean())
    std = float(values.std())
    return CCalibration(per_cell, mean, std, std / mean if mean else float("nan"))


def alpha_distance_sq(V_t: float, V_ref: float, alpha_deg: float) -> float:
    """||θ_t - θ_ref||² a partir de las normas y del ángulo"""
    return V_t + V_ref - 2.0 * math.sqrt(V_t * V_ref) * math.cos(math.radians(alpha_deg))
