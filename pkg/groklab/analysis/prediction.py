# Python 3.10.11
# Creado: 03/10/2026
"""Predicción del retraso de grokking y su validación

La ley de primer paso predice T_grok - T_mem ≈ ln(V_mem / V_umbral)/(2κηλ).
El método B usa como umbral el V⋆ calibrado; el método A usa el V_post de la
propia ejecución. La validación calibra (κ, V⋆) en una celda y evalúa el
resto de ejecuciones en tres niveles anidados:

    1. Misma arquitectura y mismo p que la calibración.
    2. Además, otras arquitecturas con el mismo p.
    3. Todas las ejecuciones retenidas.

"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from groklab.trainer.records import RunSummary

logger = logging.getLogger(__name__)

MIN_CALIBRATION_RUNS = 3
TIERS = ("tier1", "tier2", "tier3")


class DelayPrediction(NamedTuple):
    steps: float
    clipped: bool


def _delay_kernel(log_ratio: float, kappa: float, eta: float, lam: float) -> DelayPrediction:
    if kappa <= 0.0 or eta <= 0.0 or lam <= 0.0:
        raise ValueError("[Prediction] κ, η y λ deben ser positivos")
    steps = log_ratio / (2.0 * kappa * eta * lam)
    if steps < 0.0:
        return DelayPrediction(0.0, True)
    return DelayPrediction(float(steps), False)


def predict_delay_B(
    kappa_train: float, V_star_train: float, eta: float, lam: float, V_mem: float
) -> DelayPrediction:
    """Método B: ln(V_mem / V⋆_train)/(2κηλ); negativo se recorta a 0"""
    if V_mem <= 0.0 or V_star_train <= 0.0:
        raise ValueError("[Prediction] V_mem y V⋆ deben ser positivos")
    return _delay_kernel(float(np.log(V_mem / V_star_train)), kappa_train, eta, lam)


def predict_delay_A(
    kappa_train: float, eta: float, lam: float, V_mem: float, V_post: float
) -> DelayPrediction:
    """Método A: ρ = ln(V_mem / V_post) en el mismo núcleo"""
    if V_mem <= 0.0 or V_post <= 0.0:
        raise ValueError("[Prediction] V_mem y V_post deben ser positivos")
    return _delay_kernel(float(np.log(V_mem / V_post)), kappa_train, eta, lam)


def _paired(predicted: Sequence[float], observed: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    pred = np.asarray(predicted, dtype=np.float64)
    obs = np.asarray(observed, dtype=np.float64)
    if pred.shape != obs.shape:
        raise ValueError(
            f"[MAPE] Longitudes distintas: {pred.size} predicciones y {obs.size} observaciones"
        )
    if obs.size == 0:
        raise ValueError("[MAPE] No hay observaciones")
    if np.any(obs <= 0.0):
        raise ValueError("[MAPE] Las observaciones deben ser positivas")
    return pred, obs


def mape(predicted: Sequence[float], observed: Sequence[float]) -> float:
    """Error porcentual absoluto medio"""
    pred, obs = _paired(predicted, observed)
    return float(np.mean(np.abs(pred - obs) / obs) * 100.0)


def signed_error(predicted: Sequence[float], observed: Sequence[float]) -> float:
    """Error porcentual medio con signo (sesgo de la predicción)"""
    pred, obs = _paired(predicted, observed)
    return float(np.mean((pred - obs) / obs) * 100.0)


@dataclass
class Calibration:
    cell_id: str
    arch: str
    p: int
    kappa_train: float
    V_star_train: float
    n_runs: int

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


def calibrate(summaries: Iterable[RunSummary], cell_id: str) -> Calibration:
    """κ_train y V⋆_train como medianas de las ejecuciones válidas de la celda"""
    runs = [s for s in summaries if s.cell_id == cell_id and s.qualifies() and s.V_star]
    if len(runs) < MIN_CALIBRATION_RUNS:
        raise ValueError(
            f"[Calibration] La celda '{cell_id}' tiene {len(runs)} ejecuciones válidas "
            f"(mínimo {MIN_CALIBRATION_RUNS})"
        )
    return Calibration(
        cell_id=cell_id,
        arch=runs[0].arch,
        p=runs[0].p,
        kappa_train=float(np.median([s.kappa_ll for s in runs])),
        V_star_train=float(np.median([s.V_star for s in runs])),
        n_runs=len(runs),
    )


@dataclass
class RunPrediction:
    run_id: str
    cell_id: str
    tier: str
    observed: float
    method_A: float
    method_B: float
    clipped_A: bool
    clipped_B: bool


@dataclass
class TierStats:
    n: int
    mape_A: float
    mape_B: float
    signed_A: float
    signed_B: float

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class CellRow:
    cell_id: str
    n: int
    median_delay: float
    median_T_grok: float
    tier: str
    mape_A: float
    mape_B: float

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class TierReport:
    calibration: Calibration
    tiers: dict[str, TierStats] = field(default_factory=dict)
    cells: list[CellRow] = field(default_factory=list)
    predictions: list[RunPrediction] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def serialize(self) -> dict[str, Any]:
        return {
            "calibration": self.calibration.serialize(),
            "tiers": {name: stats.serialize() for name, stats in self.tiers.items()},
            "cells": {row.cell_id: row.serialize() for row in self.cells},
            "notes": list(self.notes),
        }


def tier_of(summary: RunSummary, calibration: Calibration) -> str:
    """Nivel más interior al que pertenece una ejecución retenida"""
    if summary.p == calibration.p:
        return "tier1" if summary.arch == calibration.arch else "tier2"
    return "tier3"


def _predictable(summary: RunSummary) -> bool:
    return (
        summary.intervention == "none"
        and not summary.diverged
        and summary.delay is not None
        and summary.delay > 0
        and summary.V_mem is not None
        and summary.V_post is not None
    )


def _stats(rows: list[RunPrediction]) -> TierStats:
    obs = [r.observed for r in rows]
    pred_A = [r.method_A for r in rows]
    pred_B = [r.method_B for r in rows]
    return TierStats(
        n=len(rows),
        mape_A=mape(pred_A, obs),
        mape_B=mape(pred_B, obs),
        signed_A=signed_error(pred_A, obs),
        signed_B=signed_error(pred_B, obs),
    )


def three_tier_report(summaries: Sequence[RunSummary], calibration_cell_id: str) -> TierReport:
    """Calibra en una celda y mide el error en los tres niveles anidados"""
    calibration = calibrate(summaries, calibration_cell_id)
    report = TierReport(calibration)
    for s in summaries:
        if s.cell_id == calibration_cell_id:
            continue
        if not _predictable(s):
            report.notes.append(f"{s.cell_id}/seed{s.seed}: excluida (sin retraso medible)")
            continue
        kappa, V_star = calibration.kappa_train, calibration.V_star_train
        B = predict_delay_B(kappa, V_star, s.eta, s.lam, s.V_mem)  # type: ignore[arg-type]
        A = predict_delay_A(kappa, s.eta, s.lam, s.V_mem, s.V_post)  # type: ignore[arg-type]
        report.predictions.append(
            RunPrediction(
                run_id=s.run_id,
                cell_id=s.cell_id,
                tier=tier_of(s, calibration),
                observed=float(s.delay),  # type: ignore[arg-type]
                method_A=A.steps,
                method_B=B.steps,
                clipped_A=A.clipped,
                clipped_B=B.clipped,
            )
        )
    nested = {"tier1": ("tier1",), "tier2": ("tier1", "tier2"), "tier3": TIERS}
    for tier, members in nested.items():
        rows = [r for r in report.predictions if r.tier in members]
        if not rows:
            report.notes.append(f"{tier}: vacío, se omite")
            continue
        report.tiers[tier] = _stats(rows)
    by_cell: dict[str, list[RunPrediction]] = defaultdict(list)
    for r in report.predictions:
        by_cell[r.cell_id].append(r)
    T_grok = {s.run_id: s.T_grok_99 for s in summaries}
    for cell_id, rows in sorted(by_cell.items()):
        stats = _stats(rows)
        report.cells.append(
            CellRow(
                cell_id=cell_id,
                n=len(rows),
                median_delay=float(np.median([r.observed for r in rows])),
                median_T_grok=float(np.median([T_grok[r.run_id] for r in rows])),
                tier=rows[0].tier,
                mape_A=stats.mape_A,
                mape_B=stats.mape_B,
            )
        )
    if not report.predictions:
        logger.warning("Informe por niveles sin ejecuciones retenidas")
    return report


@dataclass
class LoocvResult:
    v_star_variation_pct: float
    kappa_variation_pct: float
    folds: list[tuple[float, float]]
    full: tuple[float, float]

    def serialize(self) -> dict[str, Any]:
        return {
            "v_star_variation_pct": self.v_star_variation_pct,
            "kappa_variation_pct": self.kappa_variation_pct,
            "fold_kappa": [k for k, _ in self.folds],
            "fold_v_star": [v for _, v in self.folds],
            "kappa_full": self.full[0],
            "v_star_full": self.full[1],
        }


def loocv_calibration(cell_runs: Sequence[RunSummary | tuple[float, float]]) -> LoocvResult:
    """Recalibración dejando una ejecución fuera en cada pliegue

    La variación es (máximo - mínimo entre pliegues) / valor con todas las
    ejecuciones, en porcentaje.

    """
    pairs = np.array(
        [(r.kappa_ll, r.V_star) if isinstance(r, RunSummary) else tuple(r) for r in cell_runs],
        dtype=np.float64,
    ).reshape(-1, 2)
    n = len(pairs)
    if n < 3:
        raise ValueError(f"[LOOCV] Se necesitan al menos 3 ejecuciones, hay {n}")
    full = np.median(pairs, axis=0)
    folds = np.array([np.median(np.delete(pairs, i, axis=0), axis=0) for i in range(n)])
    spread = (folds.max(axis=0) - folds.min(axis=0)) / full * 100.0
    return LoocvResult(
        v_star_variation_pct=float(spread[1]),
        kappa_variation_pct=float(spread[0]),
        folds=[(float(k), float(v)) for k, v in folds],
        full=(float(full[0]), float(full[1])),
    )


@dataclass
class RatioStats:
    n_cells: int
    mean: float
    std: float
    cv: float
    min: float
    max: float

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


def ratio_stability(groups: Mapping[str, Sequence[float]]) -> dict[str, RatioStats]:
    """Media, desviación, CV y rango del cociente V⋆/V_mem por arquitectura

    Las arquitecturas con menos de dos celdas se omiten.

    """
    out: dict[str, RatioStats] = {}
    for arch, ratios in sorted(groups.items()):
        values = np.asarray(ratios, dtype=np.float64)
        if values.size < 2:
            logger.info("Estabilidad del cociente: '%s' tiene %d celda(s), se omite", arch, values.size)
            continue
        mean = float(values.mean())
        std = float(values.std())
        out[arch] = RatioStats(values.size, mean, std, std / mean, float(values.min()), float(values.max()))
    return out
