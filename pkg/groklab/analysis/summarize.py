# Python 3.10.11
# Creado: 06/10/2026
"""Análisis por ejecución

Completa el 'RunSummary' del entrenamiento con los ajustes de la
trayectoria. Cada ajuste que no se puede hacer deja una nota en el resumen
en lugar de interrumpir el análisis.

"""

from __future__ import annotations

import logging
from dataclasses import replace

import numpy as np

from groklab.trainer.records import RunSummary, TrajectoryLog

from .fits import (
    fit_kappa_loglinear,
    fit_kosson,
    fit_timescales,
    measure_crossing,
    window_decomposition,
)
from .overshoot import classify_overshoot, overshoot_metrics

logger = logging.getLogger(__name__)


def summarize_run(log: TrajectoryLog, summary: RunSummary) -> RunSummary:
    """Devuelve una copia de 'summary' con κ, Kosson, escalas, cruce y sobreoscilación"""
    out = replace(summary, notes=list(summary.notes))

    def note(what: str, exc: Exception) -> None:
        out.notes.append(f"{what}: {exc}")
        logger.debug("[%s/seed%d] %s omitido: %s", out.cell_id, out.seed, what, exc)

    if out.V_mem is not None and out.V_post is not None:
        out.rho = float(np.log(out.V_mem / out.V_post))
    kappa = None
    if out.grokked and out.lam > 0.0:
        try:
            kappa = fit_kappa_loglinear(log, out.eta, out.lam)
            out.kappa_ll, out.kappa_r2 = kappa.kappa_ll, kappa.r_squared
        except ValueError as exc:
            note("kappa", exc)
        try:
            soft = fit_kappa_loglinear(log, out.eta, out.lam, window_rule="soft95")
            out.kappa_ll_soft95, out.kappa_r2_soft95 = soft.kappa_ll, soft.r_squared
        except ValueError as exc:
            note("kappa_soft95", exc)
        try:
            kosson = fit_kosson(log, eta=out.eta, lam=out.lam)
            out.kosson_r, out.kosson_v_inf = kosson.r_kos, kosson.v_inf
            out.kosson_kappa, out.kosson_r2 = kosson.kappa_kos, kosson.r_squared
            out.kosson_flagged = kosson.flagged
            if kappa is not None:
                out.f_window = window_decomposition(kappa, kosson)
        except ValueError as exc:
            note("kosson", exc)
    if out.T_mem is not None:
        try:
            scales = fit_timescales(log, T_mem=out.T_mem)
            out.tau_V, out.tau_alpha, out.tau_ratio = scales.tau_V, scales.tau_alpha, scales.ratio
            out.tau_alpha_flag = scales.flag
        except ValueError as exc:
            note("timescales", exc)
        crossing = measure_crossing(log)
        if crossing is not None and crossing.step >= out.T_mem:
            out.V_star, out.alpha_star = crossing.V_star, crossing.alpha_star
            out.alpha_rate = crossing.alpha_rate
    if out.T_grok_95 is not None:
        metrics = overshoot_metrics(log, out)
        out.rho_drop, out.regrowth = metrics.rho_drop, metrics.regrowth
        out.V_min_post, out.V_max_post = metrics.V_min_post, metrics.V_max_post
        out.extra_delay_ratio = metrics.extra_delay_ratio
        out.overshoot_class = classify_overshoot(metrics)
    return out
