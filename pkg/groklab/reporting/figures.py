# Python 3.10.11
# Creado: 14/10/2026
"""Datos de figuras en texto de columnas

No se dibuja nada: cada figura es un archivo con esquema en la primera
línea, cabecera y filas separadas por espacios, listo para cualquier
herramienta de gráficos.

"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from groklab.analysis import cell_statistics, measure_crossing

from .data import CampaignData
from .table import Table

logger = logging.getLogger(__name__)

FIGURE_SCHEMA = "groklab-figure/1"
COLLAPSE_POINTS = 201


def collapse_table(data: CampaignData) -> Table:
    """V_t/V_mem frente a τ = 2ηλ(t - T_mem), una columna por ejecución

    Todas las ejecuciones se interpolan sobre la misma rejilla de τ; fuera
    del tramo registrado de cada una el valor es 'nan'.

    """
    runs = [
        s
        for s in sorted(data.summaries, key=lambda s: (s.cell_id, s.seed))
        if s.T_mem is not None and s.V_mem and s.intervention == "none"
    ]
    table = Table("collapse", ["tau"] + [f"{s.cell_id}_seed{s.seed}" for s in runs])
    curves = []
    for s in runs:
        log = data.trajectory(s)
        mask = log.step >= s.T_mem
        tau = 2.0 * s.eta * s.lam * (log.step[mask] - s.T_mem)
        curves.append((tau, log.V[mask] / s.V_mem))
    if not curves:
        return table
    tau_max = max(float(tau[-1]) for tau, _ in curves)
    grid = np.linspace(0.0, tau_max, COLLAPSE_POINTS)
    columns = [np.interp(grid, tau, ratio, left=np.nan, right=np.nan) for tau, ratio in curves]
    for i, value in enumerate(grid):
        row = {"tau": float(value)}
        row.update({name: float(col[i]) for name, col in zip(table.headers[1:], columns)})
        table.append(**row)
    return table


def kappa_lambda_table(data: CampaignData) -> Table:
    headers = ["cell_id", "arch", "p", "eta", "lam", "lam_over_p", "kappa_median", "kappa_cv", "n_qualifying"]
    table = Table("kappa_lambda", headers)
    if not data.summaries:
        return table
    for cell in cell_statistics(data.summaries).cells:
        if cell.kappa_median is None:
            continue
        table.append(
            cell_id=cell.cell_id,
            arch=cell.arch,
            p=cell.p,
            eta=cell.eta,
            lam=cell.lam,
            lam_over_p=cell.lam / cell.p,
            kappa_median=cell.kappa_median,
            kappa_cv=cell.kappa_cv,
            n_qualifying=cell.n_qualifying,
        )
    return table


def phase_plane_table(data: CampaignData) -> Table:
    """Puntos (α, V) desde T_mem; 'marker' señala la fila de T_mem y la del cruce"""
    table = Table("phase_plane", ["run", "step", "alpha", "V", "marker"])
    for s in sorted(data.summaries, key=lambda s: (s.cell_id, s.seed)):
        if s.T_mem is None:
            continue
        log = data.trajectory(s)
        crossing = measure_crossing(log)
        cross_row = None
        if crossing is not None and crossing.step >= s.T_mem:
            cross_row = int(np.flatnonzero(log.step >= crossing.step)[0])
        name = f"{s.cell_id}_seed{s.seed}"
        for i in np.flatnonzero(log.step >= s.T_mem):
            step = int(log.step[i])
            marker = "mem" if step == s.T_mem else "cross" if i == cross_row else "-"
            table.append(run=name, step=step, alpha=float(log.alpha[i]), V=float(log.V[i]), marker=marker)
    return table


def overshoot_table(data: CampaignData) -> Table:
    table = Table("overshoot", ["run", "rho_drop", "extra_delay_ratio", "regrowth", "class"])
    for s in sorted(data.summaries, key=lambda s: (s.cell_id, s.seed)):
        if s.rho_drop is None:
            continue
        table.append(
            run=f"{s.cell_id}_seed{s.seed}",
            rho_drop=s.rho_drop,
            extra_delay_ratio=s.extra_delay_ratio,
            regrowth=s.regrowth,
            **{"class": s.overshoot_class or "-"},
        )
    return table


FIGURES = {
    "collapse": collapse_table,
    "kappa_lambda": kappa_lambda_table,
    "phase_plane": phase_plane_table,
    "overshoot": overshoot_table,
}


def write_figures(data: CampaignData, out_dir: Path) -> dict[str, Path]:
    """Escribe '<out_dir>/<figura>.dat' para cada figura"""
    out_dir = Path(out_dir)
    paths = {}
    for name, builder in FIGURES.items():
        table = builder(data)
        paths[name] = table.write(out_dir / f"{name}.dat", FIGURE_SCHEMA)
        logger.info("Figura '%s': %d filas", name, len(table))
    return paths
