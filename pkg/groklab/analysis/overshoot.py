# Python 3.10.11
# Creado: 05/10/2026
"""Sobreoscilación de V tras el grokking

Después de T_grok_95, V puede caer por debajo de su meseta y volver a
crecer. Se mide la profundidad de la caída (ρ_drop = V_min / V en T95), el
factor de recrecimiento y el retraso adicional hasta T99 relativo al
retraso principal. La ley empírica que relaciona ambos es una potencia
decreciente de ρ_drop.

"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Literal, Sequence

import numpy as np

from groklab.trainer.records import RunSummary, TrajectoryLog

from .stats import PowerLawFit, power_law_fit

REGROWTH_THRESHOLD = 2.0
OVERSHOOT_BINS = (0.0, 0.3, 0.5, 0.7, 0.9, 1.1)
OVERSHOOT_LAW = (0.025, -5.51)
MIN_OVERSHOOT_RUNS = 5


@dataclass
class OvershootMetrics:
    rho_drop: float
    V_at_T95: float
    V_min_post: float
    V_max_post: float
    regrowth: float
    extra_delay_ratio: float | None = None
    flags: list[str] = field(default_factory=list)

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


def overshoot_metrics(log: TrajectoryLog, summary: RunSummary) -> OvershootMetrics:
    """Métricas de sobreoscilación sobre [T_grok_95, final]"""
    T95 = summary.T_grok_95
    if T95 is None:
        raise ValueError("[Overshoot] T_grok_95 ausente")
    V = log.V[log.step >= T95]
    V_at = float(V[0])
    low = int(np.argmin(V))
    V_min = float(V[low])
    metrics = OvershootMetrics(
        rho_drop=V_min / V_at,
        V_at_T95=V_at,
        V_min_post=V_min,
        V_max_post=float(V.max()),
        regrowth=float(V[low:].max()) / V_min,
    )
    T99, T_mem = summary.T_grok_99, summary.T_mem
    if T99 is None:
        metrics.flags.append("T_grok_99 ausente")
    elif T_mem is None or T95 <= T_mem:
        metrics.flags.append("retraso principal nulo")
    else:
        metrics.extra_delay_ratio = (T99 - T95) / (T95 - T_mem)
    return metrics


def classify_overshoot(
    metrics: OvershootMetrics, threshold: float = REGROWTH_THRESHOLD
) -> Literal["smooth", "overshoot"]:
    return "overshoot" if metrics.regrowth >= threshold else "smooth"


def overshoot_law(rho_drop: float | np.ndarray, A: float = OVERSHOOT_LAW[0], b: float = OVERSHOOT_LAW[1]):
    """Cociente de retraso adicional previsto: A·ρ_drop^b"""
    return A * np.power(rho_drop, b)


def fit_overshoot_law(
    runs: Sequence[tuple[float, float]], n_bootstrap: int = 1000, *, seed: int = 0
) -> PowerLawFit:
    """Ley de potencias del cociente de retraso adicional frente a ρ_drop"""
    if len(runs) < MIN_OVERSHOOT_RUNS:
        raise ValueError(
            f"[Overshoot] Se necesitan al menos {MIN_OVERSHOOT_RUNS} ejecuciones, hay {len(runs)}"
        )
    rho, ratio = zip(*runs)
    return power_law_fit(rho, ratio, n_bootstrap, seed=seed)


@dataclass
class OvershootBin:
    lo: float
    hi: float
    n: int
    median_ratio: float | None

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


def bin_overshoot(
    runs: Sequence[tuple[float, float]], edges: Sequence[float] = OVERSHOOT_BINS
) -> list[OvershootBin]:
    """Mediana del cociente de retraso adicional por intervalo [lo, hi) de ρ_drop"""
    rho = np.array([r for r, _ in runs], dtype=np.float64)
    ratio = np.array([x for _, x in runs], dtype=np.float64)
    bins = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        members = ratio[(rho >= lo) & (rho < hi)]
        median = float(np.median(members)) if members.size else None
        bins.append(OvershootBin(float(lo), float(hi), int(members.size), median))
    return bins


def bins_monotone(bins: Sequence[OvershootBin]) -> bool:
    """Las medianas no vacías no crecen al aumentar ρ_drop"""
    medians = [b.median_ratio for b in bins if b.median_ratio is not None]
    return all(a >= b for a, b in zip(medians, medians[1:]))
