# Python 3.10.11
# Creado: 05/10/2026
"""Estadística de campaña

Ajustes de ley de potencias con intervalo bootstrap, intervalos bootstrap
de media o mediana y estadísticas por celda (mediana, IQR y CV de κ, V⋆, α⋆
y escalas de tiempo) y constancia de retraso·λ y retraso·η en los barridos
de esos hiperparámetros. La desviación típica es poblacional (ddof=0) y el IQR
usa interpolación por punto medio.

"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from typing import Any, Literal, Sequence

import numpy as np

from groklab.core.fitting import LineFit, least_squares_line
from groklab.core.rng import substream
from groklab.trainer.records import RunSummary

logger = logging.getLogger(__name__)

BOOTSTRAP_BLOCK = 2_000_000


@dataclass
class PowerLawFit:
    """y = A·x^b ajustado en espacio log-log"""

    A: float
    b: float
    r_squared: float
    n_points: int
    b_ci95: tuple[float, float] | None = None
    n_bootstrap: int = 0
    discarded: int = 0

    def predict(self, x: np.ndarray | float) -> np.ndarray | float:
        return self.A * np.power(x, self.b)

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


def power_law_fit(
    x: Sequence[float],
    y: Sequence[float],
    n_bootstrap: int = 1000,
    *,
    seed: int = 0,
) -> PowerLawFit:
    """Mínimos cuadrados sobre (ln x, ln y) con IC percentil del exponente

    Los remuestreos cuyas abscisas coinciden todas se descartan y se cuentan.

    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.size < 3:
        raise ValueError("[PowerLaw] Se necesitan al menos 3 pares (x, y)")
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise ValueError("[PowerLaw] Todos los valores deben ser positivos")
    lx, ly = np.log(x), np.log(y)
    line = least_squares_line(lx, ly)
    fit = PowerLawFit(float(np.exp(line.intercept)), line.slope, line.r_squared, x.size)
    if n_bootstrap <= 0:
        return fit
    rng = substream(seed, "bootstrap")
    slopes = []
    for _ in range(n_bootstrap):
        idx = rng.integers(0, x.size, size=x.size)
        if np.all(lx[idx] == lx[idx[0]]):
            fit.discarded += 1
            continue
        xs, ys = lx[idx], ly[idx]
        xc = xs - xs.mean()
        slopes.append(float(xc @ (ys - ys.mean()) / (xc @ xc)))
    fit.n_bootstrap = len(slopes)
    if slopes:
        lo, hi = np.percentile(slopes, [2.5, 97.5])
        fit.b_ci95 = (float(lo), float(hi))
    return fit


def linear_fit(x: Sequence[float], y: Sequence[float]) -> LineFit:
    """Recta y = a + b·x, para comparar con la ley de potencias"""
    return least_squares_line(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64))


def bootstrap_ci(
    samples: Sequence[float],
    statistic: Literal["mean", "median"] = "mean",
    n_resamples: int = 10_000,
    *,
    seed: int = 0,
    level: float = 0.95,
) -> tuple[float, float]:
    """Intervalo bootstrap percentil del estadístico"""
    values = np.asarray(samples, dtype=np.float64)
    if values.size < 2:
        raise ValueError("[Bootstrap] Se necesitan al menos 2 muestras")
    if statistic not in ("mean", "median"):
        raise ValueError(f"[Bootstrap] Estadístico desconocido: {statistic!r}")
    if np.all(values == values[0]):
        return float(values[0]), float(values[0])
    func = np.mean if statistic == "mean" else np.median
    rng = substream(seed, "bootstrap")
    block = max(1, BOOTSTRAP_BLOCK // values.size)
    stats = []
    done = 0
    while done < n_resamples:
        size = min(block, n_resamples - done)
        idx = rng.integers(0, values.size, size=(size, values.size))
        stats.append(func(values[idx], axis=1))
        done += size
    tail = (1.0 - level) / 2.0 * 100.0
    lo, hi = np.percentile(np.concatenate(stats), [tail, 100.0 - tail])
    return float(lo), float(hi)


def cv(values: Sequence[float]) -> float | None:
    """std/mean (poblacional); None con menos de dos valores"""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size < 2:
        return None
    mean = arr.mean()
    return float(arr.std() / mean) if mean != 0.0 else None


def iqr(values: Sequence[float]) -> tuple[float, float] | None:
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        return None
    lo, hi = np.percentile(arr, [25, 75], method="midpoint")
    return float(lo), float(hi)


def _median(values: Sequence[float]) -> float | None:
    return float(np.median(values)) if len(values) else None


@dataclass
class CellSummary:
    cell_id: str
    arch: str
    task: str
    p: int
    eta: float
    lam: float
    n_runs: int
    n_qualifying: int
    run_ids: list[str] = field(default_factory=list)
    kappa_median: float | None = None
    kappa_iqr: tuple[float, float] | None = None
    kappa_cv: float | None = None
    V_star_median: float | None = None
    V_star_cv: float | None = None
    alpha_star_median: float | None = None
    alpha_star_cv: float | None = None
    tau_V_median: float | None = None
    tau_alpha_median: float | None = None
    tau_ratio_median: float | None = None
    V_mem_median: float | None = None
    V_star_over_V_mem: float | None = None
    delay_median: float | None = None
    grokked: int = 0

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class CellStatistics:
    cells: list[CellSummary]
    pooled_kappa_median: float | None = None
    pooled_kappa_iqr: tuple[float, float] | None = None
    pooled_kappa_cv: float | None = None
    within_cell_median_cv: float | None = None
    n_qualifying: int = 0

    def serialize(self) -> dict[str, Any]:
        return {
            "pooled": {
                "kappa_median": self.pooled_kappa_median,
                "kappa_iqr": self.pooled_kappa_iqr,
                "kappa_cv": self.pooled_kappa_cv,
                "within_cell_median_cv": self.within_cell_median_cv,
                "n_qualifying": self.n_qualifying,
            },
            "cells": {cell.cell_id: cell.serialize() for cell in self.cells},
        }


def _values(runs: Sequence[RunSummary], name: str) -> list[float]:
    return [getattr(r, name) for r in runs if getattr(r, name) is not None]


def summarize_cell(cell_id: str, runs: Sequence[RunSummary]) -> CellSummary:
    first = runs[0]
    qualifying = [r for r in runs if r.qualifies()]
    kappas = [r.kappa_ll for r in qualifying]
    V_star = _values(runs, "V_star")
    V_mem = _values(runs, "V_mem")
    alpha = _values(runs, "alpha_star")
    cell = CellSummary(
        cell_id=cell_id,
        arch=first.arch,
        task=first.task,
        p=first.p,
        eta=first.eta,
        lam=first.lam,
        n_runs=len(runs),
        n_qualifying=len(qualifying),
        run_ids=[r.run_id for r in runs],
        kappa_median=_median(kappas),
        kappa_iqr=iqr(kappas),
        kappa_cv=cv(kappas),
        V_star_median=_median(V_star),
        V_star_cv=cv(V_star),
        alpha_star_median=_median(alpha),
        alpha_star_cv=cv(alpha),
        tau_V_median=_median(_values(runs, "tau_V")),
        tau_alpha_median=_median(_values(runs, "tau_alpha")),
        tau_ratio_median=_median(_values(runs, "tau_ratio")),
        V_mem_median=_median(V_mem),
        delay_median=_median([r.delay for r in runs if r.delay is not None]),
        grokked=sum(r.grokked for r in runs),
    )
    if cell.V_star_median and cell.V_mem_median:
        cell.V_star_over_V_mem = cell.V_star_median / cell.V_mem_median
    return cell


def cell_statistics(runs: Sequence[RunSummary]) -> CellStatistics:
    """Estadísticas por celda y agregadas de κ

    'within_cell_median_cv' es la mediana de los CV de κ de las celdas que
    tienen al menos dos ejecuciones válidas.

    """
    grouped: dict[str, list[RunSummary]] = defaultdict(list)
    for run in runs:
        grouped[run.cell_id].append(run)
    cells = [summarize_cell(cell_id, members) for cell_id, members in sorted(grouped.items())]
    kappas = [r.kappa_ll for r in runs if r.qualifies()]
    within = [c.kappa_cv for c in cells if c.kappa_cv is not None]
    return CellStatistics(
        cells=cells,
        pooled_kappa_median=_median(kappas),
        pooled_kappa_iqr=iqr(kappas),
        pooled_kappa_cv=cv(kappas),
        within_cell_median_cv=_median(within),
        n_qualifying=len(kappas),
    )


# Escalado del retraso con η y λ

SCALING_PARAMS = ("lam", "eta")


@dataclass
class ScalingGroup:
    """Barrido de un hiperparámetro con el resto fijo

    'products' asocia cada valor barrido con la media de retraso·valor de sus
    ejecuciones; 'max_rel_dev' es la mayor desviación relativa respecto a la
    media de esos productos.

    """

    label: str
    values: list[float]
    products: list[float]
    n_runs: int
    max_rel_dev: float

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class DelayScaling:
    param: str
    groups: list[ScalingGroup] = field(default_factory=list)

    @property
    def max_rel_dev(self) -> float | None:
        return max((g.max_rel_dev for g in self.groups), default=None)

    def serialize(self) -> dict[str, Any]:
        return {
            "max_rel_dev": self.max_rel_dev,
            "n_groups": len(self.groups),
            "groups": {g.label: g.serialize() for g in self.groups},
        }


def delay_scaling(runs: Sequence[RunSummary], param: Literal["lam", "eta"]) -> DelayScaling:
    """Constancia de (T_grok_99 - T_mem)·param a lo largo de un barrido

    Solo cuentan las ejecuciones sin intervención, sin divergencia y con
    retraso positivo. Se agrupan por arquitectura, tarea, p y el otro
    hiperparámetro; un grupo necesita al menos dos valores distintos de
    'param'.

    """
    if param not in SCALING_PARAMS:
        raise ValueError(f"[Scaling] Parámetro no válido: {param!r}")
    other = "eta" if param == "lam" else "lam"
    groups: dict[tuple, dict[float, list[float]]] = defaultdict(lambda: defaultdict(list))
    for run in runs:
        if run.intervention != "none" or run.diverged or run.delay is None or run.delay <= 0:
            continue
        value = getattr(run, param)
        groups[(run.arch, run.task, run.p, getattr(run, other))][value].append(run.delay * value)
    scaling = DelayScaling(param)
    for (arch, task, p, fixed), by_value in sorted(groups.items()):
        if len(by_value) < 2:
            continue
        values = sorted(by_value)
        products = np.array([np.mean(by_value[v]) for v in values])
        mean = products.mean()
        scaling.groups.append(
            ScalingGroup(
                label=f"{arch}_{task}_p{p}_{other}" + f"{fixed:g}".replace(".", "p"),
                values=[float(v) for v in values],
                products=products.tolist(),
                n_runs=sum(len(by_value[v]) for v in values),
                max_rel_dev=float(np.max(np.abs(products - mean)) / mean),
            )
        )
    logger.debug("[Scaling] %s: %d grupos", param, len(scaling.groups))
    return scaling
