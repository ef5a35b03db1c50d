# Python 3.10.11
# Creado: 21/09/2026
"""Primitivas de redes neuronales

Funciones puras sobre arrays float64: softmax, entropía cruzada con su
gradiente, LayerNorm (ida y vuelta) y precisión de clasificación.

"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

EPS_LN = 1e-5


class LayerNormCache(NamedTuple):
    x_hat: np.ndarray
    inv_std: np.ndarray
    gamma: np.ndarray


def softmax(logits: np.ndarray) -> np.ndarray:
    """Softmax sobre el último eje, restando el máximo para evitar desbordes"""
    z = np.asarray(logits, dtype=np.float64)
    z = z - np.max(z, axis=-1, keepdims=True)
    e = np.exp(z)
    return e / np.sum(e, axis=-1, keepdims=True)


def _check_labels(labels: np.ndarray, num_classes: int) -> np.ndarray:
    labels = np.asarray(labels)
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise ValueError(
            f"[CrossEntropy] Etiquetas fuera de rango [0, {num_classes}): "
            f"min={labels.min()}, max={labels.max()}"
        )
    return labels.astype(np.int64, copy=False)


def cross_entropy_loss(
    logits: np.ndarray, labels: np.ndarray
) -> tuple[float, np.ndarray]:
    """Entropía cruzada media y su gradiente respecto a los logits

    'logits' tiene forma (batch, clases) y 'labels' forma (batch,). Devuelve
    la pérdida media (log-sum-exp estable) y 'dlogits' ya dividido por el
    tamaño del lote.

    """
    logits = np.asarray(logits, dtype=np.float64)
    batch, num_classes = logits.shape
    labels = _check_labels(labels, num_classes)
    shifted = logits - np.max(logits, axis=1, keepdims=True)
    log_z = np.log(np.sum(np.exp(shifted), axis=1))
    rows = np.arange(batch)
    loss = float(np.mean(log_z - shifted[rows, labels]))
    dlogits = np.exp(shifted - log_z[:, None])
    dlogits[rows, labels] -= 1.0
    dlogits /= batch
    return loss, dlogits


def true_class_margin(logits: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Margen por ejemplo: logit verdadero menos el mayor de los demás"""
    logits = np.asarray(logits, dtype=np.float64)
    labels = _check_labels(labels, logits.shape[1])
    rows = np.arange(logits.shape[0])
    true = logits[rows, labels]
    others = logits.copy()
    others[rows, labels] = -np.inf
    return true - np.max(others, axis=1)


def accuracy(logits: np.ndarray, labels: np.ndarray) -> float:
    """Fracción de ejemplos con margen estrictamente positivo

    Un empate con otra clase cuenta como fallo, igual que en los márgenes.

    """
    if len(labels) == 0:
        return 0.0
    return float(np.mean(true_class_margin(logits, labels) > 0))


def layer_norm_forward(
    x: np.ndarray, gamma: np.ndarray, beta: np.ndarray, eps: float = EPS_LN
) -> tuple[np.ndarray, LayerNormCache]:
    """LayerNorm sobre el último eje, devolviendo la caché para la vuelta"""
    x = np.asarray(x, dtype=np.float64)
    mean = x.mean(axis=-1, keepdims=True)
    var = x.var(axis=-1, keepdims=True)
    inv_std = 1.0 / np.sqrt(var + eps)
    x_hat = (x - mean) * inv_std
    return gamma * x_hat + beta, LayerNormCache(x_hat, inv_std, gamma)


def layer_norm(
    x: np.ndarray, gamma: np.ndarray, beta: np.ndarray, eps: float = EPS_LN
) -> np.ndarray:
    """gamma * (x - media) / sqrt(var + eps) + beta"""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] < 2:
        raise ValueError("[LayerNorm] Se necesitan al menos 2 componentes")
    if np.shape(gamma)[-1] != x.shape[-1] or np.shape(beta)[-1] != x.shape[-1]:
        raise ValueError("[LayerNorm] 'gamma' y 'beta' deben tener la longitud de 'x'")
    return layer_norm_forward(x, gamma, beta, eps)[0]


def layer_norm_backward(
    dout: np.ndarray, cache: LayerNormCache
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vuelta de LayerNorm: devuelve (dx, dgamma, dbeta)

    'dgamma' y 'dbeta' se suman sobre todos los ejes salvo el último.

    """
    x_hat, inv_std, gamma = cache
    lead = tuple(range(dout.ndim - 1))
    dbeta = dout.sum(axis=lead)
    dgamma = (dout * x_hat).sum(axis=lead)
    n = dout.shape[-1]
    dx_hat = dout * gamma
    dx = (inv_std / n) * (
        n * dx_hat
        - dx_hat.sum(axis=-1, keepdims=True)
        - x_hat * (dx_hat * x_hat).sum(axis=-1, keepdims=True)
    )
    return dx, dgamma, dbeta
