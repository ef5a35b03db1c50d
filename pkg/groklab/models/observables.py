# Python 3.10.11
# Creado: 26/09/2026
"""Observables en el espacio de parámetros

    - V(θ) = ||θ||², la norma al cuadrado de todos los parámetros.
    - α_t, el ángulo entre θ_t y una referencia (θ en T_mem).
    - Márgenes por ejemplo y el conjunto mal clasificado S₋ = {Δ <= 0}.
    - G, el supremo de las normas de los rasgos tangentes (NTK) sobre un
      subconjunto de ejemplos.

"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Any

import numpy as np

from groklab.core.nn import true_class_margin
from groklab.core.rng import substream
from groklab.tasks.datasets import Dataset

from .architectures import backprop, forward
from .spec import ModelState

logger = logging.getLogger(__name__)


def _vector(value: ModelState | np.ndarray) -> np.ndarray:
    if isinstance(value, ModelState):
        return value.params
    return np.asarray(value, dtype=np.float64).ravel()


def param_norm_sq(state: ModelState | np.ndarray) -> float:
    """V(θ), suma exacta de cuadrados"""
    theta = _vector(state)
    return float(theta @ theta)


def cos_to_reference(state: ModelState | np.ndarray, ref: np.ndarray) -> float:
    theta, ref = _vector(state), _vector(ref)
    norms = np.linalg.norm(theta) * np.linalg.norm(ref)
    if norms == 0.0:
        raise ValueError("[Angle] Vector nulo: el ángulo no está definido")
    return float(np.clip(theta @ ref / norms, -1.0, 1.0))


def angle_to_reference(state: ModelState | np.ndarray, ref: np.ndarray) -> float:
    """Ángulo en grados entre θ y 'ref', en [0, 180]

    Se evalúa como 2·atan2(|u - r|, |u + r|) con u y r unitarios, que es
    estable también para ángulos muy pequeños o cercanos a 180°.

    """
    theta, ref = _vector(state), _vector(ref)
    n_theta, n_ref = np.linalg.norm(theta), np.linalg.norm(ref)
    if n_theta == 0.0 or n_ref == 0.0:
        raise ValueError("[Angle] Vector nulo: el ángulo no está definido")
    u, r = theta / n_theta, ref / n_ref
    return float(np.degrees(2.0 * np.arctan2(np.linalg.norm(u - r), np.linalg.norm(u + r))))


@dataclass
class MarginReport:
    """Márgenes Δ(x; θ) por ejemplo y pertenencia a S₋"""

    margins: np.ndarray

    @property
    def misclassified(self) -> np.ndarray:
        return self.margins <= 0.0

    @property
    def accuracy(self) -> float:
        if len(self.margins) == 0:
            return 0.0
        return float(np.mean(self.margins > 0.0))

    @property
    def negative(self) -> np.ndarray:
        """Márgenes de S₋"""
        return self.margins[self.misclassified]

    def __len__(self) -> int:
        return len(self.margins)

    def __iter__(self):
        return iter(zip(self.margins.tolist(), self.misclassified.tolist()))

    def serialize(self) -> dict[str, Any]:
        return {
            "count": len(self),
            "misclassified": int(self.misclassified.sum()),
            "accuracy": self.accuracy,
        }


def margins_from_logits(logits: np.ndarray, labels: np.ndarray) -> MarginReport:
    return MarginReport(true_class_margin(logits, labels))


def margins(state: ModelState, dataset: Dataset) -> MarginReport:
    """Margen de la clase verdadera para cada ejemplo de 'dataset'"""
    return margins_from_logits(forward(state, dataset.inputs), dataset.labels)


def feature_norm_sup(
    grad_fn: Callable[[Any], np.ndarray], examples: Iterable[Any]
) -> float:
    """sup_x ||grad_fn(x)||₂ sobre los ejemplos dados"""
    best = -np.inf
    for example in examples:
        best = max(best, float(np.linalg.norm(grad_fn(example))))
    if best == -np.inf:
        raise ValueError("[FeatureNorm] No hay ejemplos")
    return best


def true_logit_gradient(state: ModelState, inputs: np.ndarray, label: int) -> np.ndarray:
    """∇_θ f_θ(x)_y para un único ejemplo"""

    def one_hot(logits: np.ndarray) -> tuple[float, np.ndarray]:
        dlogits = np.zeros_like(logits)
        dlogits[0, label] = 1.0
        return float(logits[0, label]), dlogits

    _, grad = backprop(state, np.asarray(inputs).reshape(1, -1), one_hot)
    return grad


def ntk_feature_norm_sup(
    state: ModelState, dataset: Dataset, subset_size: int, seed: int
) -> float:
    """Estimación de G sobre un subconjunto aleatorio de 'dataset'"""
    if subset_size < 1:
        raise ValueError("[FeatureNorm] 'subset_size' debe ser >= 1")
    size = min(subset_size, len(dataset))
    indices = substream(seed, "ntk-subset").choice(len(dataset), size, replace=False)
    g = feature_norm_sup(
        lambda i: true_logit_gradient(state, dataset.inputs[i], int(dataset.labels[i])),
        indices.tolist(),
    )
    logger.info("G estimado en %.4g sobre %d ejemplos", g, size)
    return g
