# Python 3.10.11
# Creado: 14/10/2026
"""Informes de análisis de campaña

Cada informe se escribe como '<name>.toml' en el directorio de informes. Las
claves de estos documentos son las que referencian los archivos de
afirmaciones.

"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from typing import Any

import numpy as np

from groklab.analysis import (
    bin_overshoot,
    bins_monotone,
    bootstrap_ci,
    calibrate_C,
    cell_statistics,
    delay_scaling,
    evaluate_reference,
    fit_overshoot_law,
    linear_fit,
    load_reference_tables,
    loocv_calibration,
    power_law_fit,
    predict_alpha_C,
    ratio_stability,
    three_tier_report,
)
from groklab.analysis.stats import SCALING_PARAMS
from groklab.trainer import RunSummary

from .report import Report
from .table import Table

logger = logging.getLogger(__name__)

N_BOOTSTRAP = 2000


def _median(values: list[float]) -> float | None:
    return float(np.median(values)) if values else None


def _baseline_alpha_star(report: Report, summary: RunSummary) -> float | None:
    return _median([s.alpha_star for s in report.data.baseline(summary) if s.alpha_star is not None])


class OutcomesReport(Report):
    """Resultado de cada ejecución y recuentos por celda"""

    name = "outcomes"
    title = "Resultados por ejecución"

    def build(self) -> dict[str, Any]:
        cells = {}
        for cell_id, runs in self.data.by_cell().items():
            below = []
            for s in runs:
                alpha_star = _baseline_alpha_star(self, s)
                if s.intervention != "none" and s.alpha_final is not None and alpha_star is not None:
                    below.append(s.alpha_final < alpha_star)
            rel_std = [s.norm_rel_std for s in runs if s.norm_rel_std is not None]
            cells[cell_id] = {
                "intervention": runs[0].intervention,
                "n_runs": len(runs),
                "n_mem": sum(s.T_mem is not None for s in runs),
                "n_grokked": sum(s.grokked for s in runs),
                "n_delay_positive": sum(s.delay is not None and s.delay > 0 for s in runs),
                "n_delay_zero": sum(s.delay == 0 for s in runs),
                "n_V_mem_above_V_post": sum(
                    s.V_mem is not None and s.V_post is not None and s.V_mem > s.V_post for s in runs
                ),
                "n_V_post_above_V_mem": sum(
                    s.V_mem is not None and s.V_post is not None and s.V_post > s.V_mem for s in runs
                ),
                "n_kappa_fit_ok": sum(s.qualifies() for s in runs),
                "n_alpha_below_star": sum(below),
                "n_alpha_compared": len(below),
                "n_diverged": sum(s.diverged for s in runs),
                "max_norm_rel_std": max(rel_std) if rel_std else None,
                "regimes": sorted({s.regime for s in runs if s.regime}),
            }
        return {
            "campaign_id": self.data.campaign_id,
            "scope": self.data.scope,
            "n_runs": len(self.data.summaries),
            "n_excluded": len(self.data.excluded),
            "excluded": dict(sorted(self.data.excluded.items())),
            "cells": cells,
            "scaling": {
                param: delay_scaling(self.data.summaries, param).serialize() for param in SCALING_PARAMS
            },
        }

    def table(self) -> Table:
        table = Table(
            self.title,
            [
                "cell_id",
                "seed",
                "run_id",
                "intervention",
                "T_mem",
                "T_grok_99",
                "delay",
                "V_mem",
                "V_post",
                "kappa_ll",
                "kappa_r2",
                "alpha_final",
                "grokked",
            ],
        )
        for s in sorted(self.data.summaries, key=lambda s: (s.cell_id, s.seed)):
            table.append(
                cell_id=s.cell_id,
                seed=s.seed,
                run_id=s.run_id,
                intervention=s.intervention,
                T_mem=s.T_mem,
                T_grok_99=s.T_grok_99,
                delay=s.delay,
                V_mem=s.V_mem,
                V_post=s.V_post,
                kappa_ll=s.kappa_ll,
                kappa_r2=s.kappa_r2,
                alpha_final=s.alpha_final,
                grokked=s.grokked,
            )
        return table


class CellsReport(Report):
    name = "cells"
    title = "Estadísticas por celda"

    def build(self) -> dict[str, Any]:
        if not self.data.summaries:
            return {"pooled": {"n_qualifying": 0}, "cells": {}}
        return cell_statistics(self.data.summaries).serialize()

    def table(self) -> Table:
        headers = ["cell_id", "arch", "p", "eta", "lam", "n_runs", "n_qualifying"]
        headers += ["kappa_median", "kappa_cv", "V_star_median", "alpha_star_median", "delay_median"]
        table = Table(self.title, headers)
        for cell in self.document["cells"].values():
            table.append(**{h: cell.get(h) for h in headers})
        return table


class KappaReport(Report):
    """κ agregado con intervalo bootstrap y comparación entre ajustes"""

    name = "kappa"
    title = "Constante de contracción efectiva"

    def build(self) -> dict[str, Any]:
        qualifying = [s for s in self.data.summaries if s.qualifies()]
        kappas = [s.kappa_ll for s in qualifying]
        out: dict[str, Any] = {"n_qualifying": len(kappas), "median": _median(kappas)}
        if len(kappas) >= 2:
            out["median_ci95"] = list(bootstrap_ci(kappas, "median", N_BOOTSTRAP, seed=0))
            out["mean_ci95"] = list(bootstrap_ci(kappas, "mean", N_BOOTSTRAP, seed=0))
        soft = [s.kappa_ll_soft95 for s in qualifying if s.kappa_ll_soft95 is not None]
        out["soft95_median"] = _median(soft)
        kosson = [s.kosson_kappa for s in qualifying if s.kosson_kappa is not None]
        out["kosson_median"] = _median(kosson)
        out["kosson_flagged"] = sum(bool(s.kosson_flagged) for s in qualifying)
        out["f_window_median"] = _median([s.f_window for s in qualifying if s.f_window is not None])
        ratios = [s.tau_ratio for s in qualifying if s.tau_ratio is not None]
        out["tau_ratio_median"] = _median(ratios)
        if out["median"] and out["soft95_median"]:
            out["soft95_shift_pct"] = (out["soft95_median"] / out["median"] - 1.0) * 100.0
        return out


class TiersReport(Report):
    """Validación por niveles con calibración en la celda de referencia"""

    name = "tiers"
    title = "Predicción del retraso por niveles"

    def _predictable(self) -> list[RunSummary]:
        return [s for s in self.data.summaries if s.task == "modular"]

    def build(self) -> dict[str, Any]:
        cell = self.data.calibration_cell
        if cell is None:
            return {"status": "unavailable", "notes": ["sin celda de calibración"]}
        try:
            report = three_tier_report(self._predictable(), cell)
        except ValueError as e:
            logger.warning("Informe por niveles no disponible: %s", e)
            return {"status": "unavailable", "notes": [str(e)]}
        out = {"status": "ok", **report.serialize()}
        pooled = report.tiers.get("tier3")
        if pooled is not None:
            out["pooled"] = {
                "mape_A": pooled.mape_A,
                "mape_B": pooled.mape_B,
                "b_not_worse": pooled.mape_B <= pooled.mape_A,
            }
        out["predictions"] = [
            {
                "run_id": p.run_id,
                "cell_id": p.cell_id,
                "tier": p.tier,
                "observed": p.observed,
                "method_A": p.method_A,
                "method_B": p.method_B,
            }
            for p in report.predictions
        ]
        return out

    def table(self) -> Table:
        headers = ["cell_id", "n", "tier", "median_delay", "median_T_grok", "mape_A", "mape_B"]
        table = Table(self.title, headers)
        for row in self.document.get("cells", {}).values():
            table.append(**{h: row.get(h) for h in headers})
        return table


class CalibrationReport(Report):
    """LOOCV de la celda de calibración, estabilidad de V⋆/V_mem y calibración C"""

    name = "calibration"
    title = "Calibración"

    def build(self) -> dict[str, Any]:
        out: dict[str, Any] = {"calibration_cell": self.data.calibration_cell, "notes": []}
        cells = self.data.by_cell()
        runs = cells.get(self.data.calibration_cell or "", [])
        pairs = [s for s in runs if s.qualifies() and s.V_star is not None]
        try:
            out["loocv"] = loocv_calibration(pairs).serialize()
        except ValueError as e:
            out["notes"].append(f"loocv: {e}")
        stats = cell_statistics(self.data.summaries).cells if self.data.summaries else []
        groups: dict[str, list[float]] = defaultdict(list)
        for cell in stats:
            if cell.V_star_over_V_mem is not None:
                groups[cell.arch].append(cell.V_star_over_V_mem)
        out["ratio_stability"] = {
            arch: ratio.serialize() for arch, ratio in ratio_stability(groups).items()
        }
        rows = [
            (cell.p, math.sqrt(cell.V_mem_median), cell.alpha_star_median)
            for cell in stats
            if cell.alpha_star_median is not None and cell.V_mem_median
        ]
        if rows:
            C = calibrate_C(rows)
            out["c_calibration"] = {**C.serialize(), "cv_pct": C.cv * 100.0}
            out["c_form"] = self._c_form(stats)
        else:
            out["notes"].append("c_calibration: ninguna celda con α⋆ medido")
        return out

    def _c_form(self, stats: list) -> dict[str, Any]:
        """Predicción de α⋆ de cada celda con la C de la celda de calibración"""
        by_id = {cell.cell_id: cell for cell in stats}
        source = by_id.get(self.data.calibration_cell or "")
        if source is None or source.alpha_star_median is None or not source.V_mem_median:
            return {}
        C = math.sin(math.radians(source.alpha_star_median)) * math.sqrt(source.V_mem_median)
        out = {}
        for cell in stats:
            if cell.cell_id == source.cell_id or cell.alpha_star_median is None or not cell.V_mem_median:
                continue
            value = predict_alpha_C(C, math.sqrt(cell.V_mem_median))
            out[cell.cell_id] = {
                "predicted": value.degrees,
                "observed": cell.alpha_star_median,
                "error_deg": value.degrees - cell.alpha_star_median,
                "flag": value.flag,
            }
        return out


class AlphaReport(Report):
    """Umbral angular por celda y ángulo final de las intervenciones"""

    name = "alpha"
    title = "Umbral angular"

    def build(self) -> dict[str, Any]:
        cells = {}
        for cell_id, runs in self.data.by_cell().items():
            alpha_star = [s.alpha_star for s in runs if s.alpha_star is not None]
            entry: dict[str, Any] = {
                "n_crossings": len(alpha_star),
                "alpha_star_median": _median(alpha_star),
                "alpha_rate_median": _median([s.alpha_rate for s in runs if s.alpha_rate is not None]),
                "alpha_final_median": _median([s.alpha_final for s in runs if s.alpha_final is not None]),
            }
            if runs[0].intervention != "none":
                entry["baseline_alpha_star"] = _baseline_alpha_star(self, runs[0])
            cells[cell_id] = entry
        return {"cells": cells}


class ScalingReport(Report):
    """Dependencia en p de V⋆ y α⋆, y tabla κ frente a λ/p"""

    name = "scaling"
    title = "Escalado con p"

    def build(self) -> dict[str, Any]:
        out: dict[str, Any] = {"notes": []}
        if not self.data.summaries:
            return out
        stats = cell_statistics(self.data.summaries).cells
        reference_arch = None
        if self.data.calibration_cell:
            reference_arch = next(
                (c.arch for c in stats if c.cell_id == self.data.calibration_cell), None
            )
        base = [c for c in stats if c.task == "modular" and (reference_arch is None or c.arch == reference_arch)]
        for label, attr in (("v_star", "V_star_median"), ("alpha_star", "alpha_star_median")):
            by_p: dict[int, list[float]] = defaultdict(list)
            for cell in base:
                value = getattr(cell, attr)
                if value is not None:
                    by_p[cell.p].append(value)
            p = sorted(by_p)
            y = [float(np.median(by_p[k])) for k in p]
            try:
                power = power_law_fit(p, y, N_BOOTSTRAP, seed=0)
                out[label] = {"p": p, "values": y, "power": power.serialize()}
                out[label]["linear"] = linear_fit(p, y).serialize()
            except ValueError as e:
                out["notes"].append(f"{label}: {e}")
        out["kappa_table"] = [
            {
                "cell_id": c.cell_id,
                "arch": c.arch,
                "p": c.p,
                "eta": c.eta,
                "lam": c.lam,
                "lam_over_p": c.lam / c.p,
                "kappa_median": c.kappa_median,
                "kappa_cv": c.kappa_cv,
                "n_qualifying": c.n_qualifying,
            }
            for c in stats
            if c.kappa_median is not None
        ]
        return out

    def table(self) -> Table:
        headers = ["cell_id", "arch", "p", "eta", "lam", "lam_over_p", "kappa_median", "kappa_cv", "n_qualifying"]
        table = Table(self.title, headers)
        for row in self.document.get("kappa_table", []):
            table.append(**row)
        return table


class OvershootReport(Report):
    name = "overshoot"
    title = "Sobreoscilación de la norma"

    def pairs(self) -> list[tuple[float, float]]:
        return [
            (s.rho_drop, s.extra_delay_ratio)
            for s in self.data.summaries
            if s.rho_drop is not None and s.extra_delay_ratio is not None and s.rho_drop > 0 and s.extra_delay_ratio > 0
        ]

    def build(self) -> dict[str, Any]:
        pairs = self.pairs()
        classes = [s.overshoot_class for s in self.data.summaries if s.overshoot_class]
        out: dict[str, Any] = {
            "n_runs": len(pairs),
            "n_overshoot": classes.count("overshoot"),
            "n_smooth": classes.count("smooth"),
            "notes": [],
        }
        bins = bin_overshoot(pairs)
        out["bins"] = [b.serialize() for b in bins]
        out["binned_monotone"] = bins_monotone(bins)
        try:
            law = fit_overshoot_law(pairs, N_BOOTSTRAP, seed=0)
            out["law"] = law.serialize()
        except ValueError as e:
            out["notes"].append(f"law: {e}")
        return out

    def table(self) -> Table:
        table = Table(self.title, ["rho_drop", "extra_delay_ratio"])
        for rho, ratio in self.pairs():
            table.append(rho_drop=rho, extra_delay_ratio=ratio)
        return table


class ReferenceReport(Report):
    """Fórmulas cerradas sobre las tablas de referencia empaquetadas"""

    name = "reference"
    title = "Tablas de referencia"

    def build(self) -> dict[str, Any]:
        return evaluate_reference(load_reference_tables(), n_bootstrap=N_BOOTSTRAP, seed=0)


REPORTS: tuple[type[Report], ...] = (
    OutcomesReport,
    CellsReport,
    KappaReport,
    TiersReport,
    CalibrationReport,
    AlphaReport,
    ScalingReport,
    OvershootReport,
    ReferenceReport,
)
