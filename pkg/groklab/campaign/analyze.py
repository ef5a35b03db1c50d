# Python 3.10.11
# Creado: 14/10/2026
"""Análisis, simulación y figuras sobre el directorio de una campaña

Todo se genera en un único hilo, después de que terminen las ejecuciones.
Los informes se escriben en '<campaña>/reports' y las figuras en
'<campaña>/figures'.

"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Any

import numpy as np

from groklab.core.rng import substream
from groklab.recursion import (
    BoundGrid,
    RecursionConfig,
    necessity_check,
    radial_decay_series,
    rate_preservation_check,
    simulate_kosson,
    verify_bounds,
)
from groklab.reporting import REPORTS, CampaignData, write_figures
from groklab.trainer import read_summary, read_trajectory
from groklab.trainer.records import SUMMARY_SCHEMA
from groklab.util import read_schema, read_versioned_toml, write_versioned_toml

from .runner import MANIFEST_NAME, MANIFEST_SCHEMA, SUMMARY_SUFFIX, TRAJECTORY_SUFFIX

logger = logging.getLogger(__name__)

REPORTS_DIR = "reports"
FIGURES_DIR = "figures"
BOUNDS_SCHEMA = "groklab-bounds/1"
KOSSON_DEFAULTS = {"V0": 1.0, "eta": 1e-3, "lam": 1.0, "C_dim": 1000.0}
RATE_DEFAULTS = {"dim": 64, "eta": 1e-3, "lam": 1.0, "r0": 10.0, "steps": 2000, "seed": 0}
NECESSITY_DEFAULTS = {"V_mem": 2.0, "V_post": 1.0, "eta": 1e-3, "lam": 1.0, "horizon": 5000}


def _summary_files(runs_dir: Path, manifest: dict[str, Any] | None) -> dict[str, Path]:
    if manifest is not None:
        return {run["name"]: runs_dir / f"{run['name']}{SUMMARY_SUFFIX}" for run in manifest.get("runs", [])}
    files = {}
    for path in sorted(runs_dir.glob(f"*{SUMMARY_SUFFIX}")):
        try:
            if read_schema(path) == SUMMARY_SCHEMA:
                files[path.stem] = path
        except (ValueError, UnicodeDecodeError):
            continue
    return files


def load_campaign(runs_dir: Path, calibration_cell: str | None = None) -> CampaignData:
    """Lee resúmenes y trayectorias; lo ilegible queda excluido con su motivo"""
    runs_dir = Path(runs_dir)
    if not runs_dir.is_dir():
        raise FileNotFoundError(f"No se ha encontrado el directorio de campaña '{runs_dir}'")
    manifest_path = runs_dir / MANIFEST_NAME
    manifest = read_versioned_toml(manifest_path, MANIFEST_SCHEMA) if manifest_path.exists() else None
    data = CampaignData(runs_dir)
    if manifest is not None:
        data.campaign_id = manifest.get("campaign_id", data.campaign_id)
        data.scope = manifest.get("scope", data.scope)
        data.calibration_cell = manifest.get("calibration_cell")
    if calibration_cell is not None:
        data.calibration_cell = calibration_cell
    for name, path in _summary_files(runs_dir, manifest).items():
        if not path.exists():
            data.excluded[name] = "sin resumen (ejecución no terminada)"
            continue
        try:
            summary = read_summary(path)
        except (KeyError, ValueError, TypeError) as e:
            data.excluded[name] = f"resumen ilegible: {e}"
            continue
        try:
            log = read_trajectory(runs_dir / f"{name}{TRAJECTORY_SUFFIX}")
        except FileNotFoundError:
            data.excluded[name] = "trayectoria ausente"
            continue
        except ValueError as e:
            data.excluded[name] = f"trayectoria corrupta: {e}"
            continue
        data.summaries.append(summary)
        data.trajectories[summary.run_id] = log
    for name, reason in data.excluded.items():
        logger.warning("[%s] Excluida del análisis: %s", name, reason)
    if not data.summaries and not data.excluded:
        raise ValueError(f"[Analyze] No hay resúmenes en '{runs_dir}'")
    logger.info("Campaña '%s': %d ejecuciones, %d excluidas", data.campaign_id, len(data.summaries), len(data.excluded))
    return data


def analyze_campaign(
    runs_dir: Path,
    reports_dir: Path | None = None,
    *,
    xlsx: Path | None = None,
    calibration_cell: str | None = None,
) -> dict[str, Path]:
    """Escribe todos los informes; con 'xlsx', también el libro Excel"""
    data = load_campaign(runs_dir, calibration_cell)
    reports_dir = Path(reports_dir or Path(runs_dir) / REPORTS_DIR)
    written = {}
    for report_class in REPORTS:
        report = report_class(data)
        written[report.name] = report.write(reports_dir)
        if xlsx is not None:
            report.export(Path(xlsx))
    if xlsx is not None:
        written["xlsx"] = Path(xlsx)
    return written


def simulate_bounds(grid_path: Path | None = None, reports_dir: Path | None = None) -> dict[str, Any]:
    """Verificación de cotas, punto fijo con ruido, tasa y necesidad, sin redes

    El archivo de rejilla es un TOML con las claves de 'BoundGrid' y, de
    forma opcional, tablas '[kosson]', '[rate]' y '[necessity]'.

    """
    raw = read_versioned_toml(Path(grid_path)) if grid_path is not None else {}
    kosson_cfg = {**KOSSON_DEFAULTS, **raw.pop("kosson", {})}
    rate_cfg = {**RATE_DEFAULTS, **raw.pop("rate", {})}
    necessity_cfg = {**NECESSITY_DEFAULTS, **raw.pop("necessity", {})}
    grid = BoundGrid.from_dict(raw)
    document: dict[str, Any] = {"grid": verify_bounds(grid).serialize()}
    document["kosson"] = simulate_kosson(**kosson_cfg).serialize()
    document["rate"] = _rate_check(**rate_cfg)
    document["necessity"] = _necessity(**necessity_cfg)
    if reports_dir is not None:
        write_versioned_toml(Path(reports_dir) / "bounds.toml", BOUNDS_SCHEMA, document)
    return document


def _rate_check(dim: int, eta: float, lam: float, r0: float, steps: int, seed: int) -> dict[str, Any]:
    """Separación radial que decae como (1 - ηλ)^t en una dirección que aleja de 0"""
    rng = substream(seed, "rate-check")
    theta_post = rng.normal(size=dim)
    direction = rng.normal(size=dim)
    if direction @ theta_post < 0.0:
        direction = -direction
    r = r0 * float(np.linalg.norm(theta_post))
    series = radial_decay_series(theta_post, direction, r, eta, lam, steps)
    return rate_preservation_check(series, theta_post, eta * lam).serialize()


def _necessity(V_mem: float, V_post: float, eta: float, lam: float, horizon: int) -> dict[str, Any]:
    """Ambas ramas de la dicotomía: V_mem > V_post y V_mem < V_post"""
    config = RecursionConfig(V_mem, eta, lam, horizon=horizon)
    delayed = necessity_check(V_mem, V_post, config)
    immediate = necessity_check(V_post, V_mem, config)
    return {
        "delayed": delayed.serialize(),
        "immediate": immediate.serialize(),
        "delay_expected": math.log(V_mem / V_post) / (2.0 * eta * lam),
    }


def emit_figures(runs_dir: Path, out_dir: Path | None = None) -> dict[str, Path]:
    """Escribe los datos de figuras; una campaña sin ejecuciones da tablas vacías"""
    runs_dir = Path(runs_dir)
    try:
        data = load_campaign(runs_dir)
    except ValueError:
        data = CampaignData(runs_dir)
    return write_figures(data, Path(out_dir or runs_dir / FIGURES_DIR))
