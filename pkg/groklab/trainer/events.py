# Python 3.10.11
# Creado: 29/09/2026
"""Detección de eventos sobre una trayectoria

    - T_mem: primer paso con train_acc >= 0.99 (o train_loss < 0.01).
    - T_grok: primer paso con val_acc >= umbral (0.99 o 0.95).
    - V_post: media de V en la primera ventana estable posterior a T_grok.
    - Régimen de λ a partir de la forma de V antes de memorizar.

"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from .config import RunConfig
from .records import TrajectoryLog

logger = logging.getLogger(__name__)


def _first_step(log: TrajectoryLog, mask: np.ndarray) -> int | None:
    hits = np.flatnonzero(mask)
    return int(log.step[hits[0]]) if hits.size else None


def detect_T_mem(
    log: TrajectoryLog,
    mode: Literal["acc", "loss"] = "acc",
    *,
    acc_threshold: float = 0.99,
    loss_threshold: float = RunConfig.LOSS_MEM,
) -> int | None:
    """Paso de memorización según precisión o pérdida de entrenamiento"""
    if mode == "acc":
        return _first_step(log, log.train_acc >= acc_threshold)
    if mode == "loss":
        return _first_step(log, log.train_loss < loss_threshold)
    raise ValueError(f"[Events] Modo de memorización desconocido: {mode!r}")


def detect_T_grok(
    log: TrajectoryLog, threshold: float = 0.99, *, not_before: int | None = None
) -> int | None:
    """Primer paso con val_acc >= threshold

    Con 'not_before' (normalmente T_mem) sólo se consideran los pasos
    posteriores, de modo que T_mem <= T_grok siempre.

    """
    mask = log.val_acc >= threshold
    if not_before is not None:
        mask &= log.step >= not_before
    return _first_step(log, mask)


def find_plateau(
    log: TrajectoryLog,
    T_grok: int,
    *,
    window: int = RunConfig.PLATEAU_WINDOW,
    rel_std: float = RunConfig.PLATEAU_REL_STD,
    min_elapsed: int = RunConfig.PLATEAU_MIN_ELAPSED,
) -> int | None:
    """Índice de la primera fila de la primera ventana estable, o None

    Una ventana son 'window' filas consecutivas que empiezan al menos
    'min_elapsed' pasos después de T_grok y cuya desviación típica relativa
    de V es menor que 'rel_std'.

    """
    V = log.V
    start = int(np.searchsorted(log.step, T_grok + min_elapsed, side="left"))
    if len(V) - start < window:
        return None
    windows = np.lib.stride_tricks.sliding_window_view(V[start:], window)
    ratios = windows.std(axis=1) / windows.mean(axis=1)
    hits = np.flatnonzero(ratios < rel_std)
    return start + int(hits[0]) if hits.size else None


def detect_v_post_plateau(
    log: TrajectoryLog,
    T_grok: int | None = None,
    *,
    window: int = RunConfig.PLATEAU_WINDOW,
    tail: int = RunConfig.TAIL_POINTS,
) -> tuple[float, Literal["plateau", "tail_fallback"]]:
    """V_post y el método con que se obtuvo"""
    if T_grok is None:
        T_grok = detect_T_grok(log)
    if T_grok is None:
        raise ValueError("[Events] No hay grokking: V_post no está definido")
    start = find_plateau(log, T_grok, window=window)
    if start is not None:
        return float(np.mean(log.V[start : start + window])), "plateau"
    return float(np.mean(log.V[-tail:])), "tail_fallback"


def classify_regime(
    log: TrajectoryLog, T_mem: int | None = None
) -> Literal["insufficient", "predictable", "wd_dominant"]:
    """Diagnóstico del régimen de λ según la forma de V antes de memorizar

    Sin memorización y con V decreciendo desde el principio, el decaimiento
    domina ('wd_dominant'). Sin memorización y con V creciendo, o sin
    contracción posterior, el decaimiento es insuficiente. Con memorización
    seguida de contracción de V, la ejecución es predecible.

    """
    if len(log) < 2:
        return "insufficient"
    V = log.V
    if T_mem is None:
        T_mem = detect_T_mem(log)
    if T_mem is None:
        if int(np.argmax(V)) <= max(1, len(V) // 20) and V[-1] < V[0]:
            return "wd_dominant"
        return "insufficient"
    after = V[log.step >= T_mem]
    if len(after) >= 2 and after.min() < after[0]:
        return "predictable"
    return "insufficient"
