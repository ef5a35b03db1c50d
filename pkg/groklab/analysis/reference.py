# Python 3.10.11
# Creado: 07/10/2026
"""Evaluación de las tablas de referencia

Aplica las fórmulas cerradas del laboratorio a valores publicados de
campañas a escala completa (empaquetados en 'groklab/data/reference.toml'):
predicciones cruzadas de la forma C, ley α⋆(p), V⋆(p) con ajuste potencial y
lineal, núcleo del método B y ley de sobreoscilación. El resultado alimenta
la auditoría de afirmaciones.

"""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Any

from groklab.util import read_versioned_toml

from .alpha import calibrate_C, predict_alpha_C
from .overshoot import OvershootBin, bins_monotone, overshoot_law
from .prediction import predict_delay_A, predict_delay_B
from .stats import linear_fit, power_law_fit

REFERENCE_SCHEMA = "groklab-reference-tables/1"


def load_reference_tables(path: Path | None = None) -> dict[str, Any]:
    """Tablas de referencia empaquetadas, o las de 'path'"""
    if path is None:
        path = Path(str(resources.files("groklab") / "data" / "reference.toml"))
    return read_versioned_toml(path, REFERENCE_SCHEMA)


def evaluate_reference(tables: dict[str, Any], *, n_bootstrap: int = 2000, seed: int = 0) -> dict[str, Any]:
    out: dict[str, Any] = {}

    cal = tables["alpha_calibration"]
    rows = list(zip(cal["p"], cal["sqrt_V_Tmem"], cal["alpha_star"]))
    C = calibrate_C(rows)
    out["c_calibration"] = {**C.serialize(), "cv_pct": C.cv * 100.0}
    by_p = {int(p): (sqrt_v, c) for (p, sqrt_v, _), (_, c) in zip(rows, C.per_cell)}
    predictions = {}
    for source, target in tables["c_form"]["pairs"]:
        value = predict_alpha_C(by_p[int(source)][1], by_p[int(target)][0])
        predictions[f"p{int(source)}_to_p{int(target)}"] = value.degrees
    out["c_form"] = predictions

    alpha_fit = power_law_fit(cal["p"], cal["alpha_star"], n_bootstrap, seed=seed)
    out["alpha_scaling"] = alpha_fit.serialize()

    vs = tables["v_star_scaling"]
    power = power_law_fit(vs["p"], vs["V_star"], n_bootstrap, seed=seed)
    line = linear_fit(vs["p"], vs["V_star"])
    out["v_star_scaling"] = {
        "power": power.serialize(),
        "b_ci95_width": power.b_ci95[1] - power.b_ci95[0] if power.b_ci95 else None,
        "linear": line.serialize(),
    }

    mb = tables["method_b"]
    B = predict_delay_B(mb["kappa_train"], mb["V_star_train"], mb["eta"], mb["lam"], mb["V_mem"])
    A = predict_delay_A(mb["kappa_train"], mb["eta"], mb["lam"], mb["V_mem"], mb["V_post"])
    out["method_b"] = {"delay": B.steps, "clipped": B.clipped}
    out["method_a"] = {"delay": A.steps, "clipped": A.clipped}

    law = tables["overshoot_law"]
    bins = [
        OvershootBin(lo, hi, n, median)
        for lo, hi, n, median in zip(law["bin_lo"], law["bin_hi"], law["bin_n"], law["bin_median"])
    ]
    out["overshoot"] = {
        "ratio_at_half": float(overshoot_law(0.5, law["A"], law["b"])),
        "law_decreasing": bool(law["b"] < 0.0),
        "binned_monotone": bins_monotone(bins),
        "law_at_bin_centres": [
            float(overshoot_law((b.lo + b.hi) / 2.0, law["A"], law["b"])) for b in bins
        ],
    }
    return out
