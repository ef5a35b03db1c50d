# Python 3.10.11
# Creado: 10/10/2026
"""Ejecución de campañas

Cada ejecución es una tarea independiente de una cola de trabajo con
paralelismo acotado ('jobs' procesos). Cada trabajador escribe únicamente los
archivos de su ejecución: primero la trayectoria y después el resumen, que
marca la ejecución como completa. Las ejecuciones cuyo resumen ya existe con
el mismo 'run_id' se omiten, de modo que relanzar una campaña terminada no
cambia nada y una campaña interrumpida continúa donde se quedó.
El punto de control de una ejecución solo vive mientras no tiene resumen.

"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from tqdm import tqdm

from groklab.analysis import summarize_run
from groklab.trainer import (
    RunConfig,
    checkpoint_path,
    read_summary,
    run_training,
    write_summary,
    write_trajectory,
)
from groklab.util import write_versioned_toml

from .config import CampaignConfig

logger = logging.getLogger(__name__)

MANIFEST_NAME = "campaign.toml"
MANIFEST_SCHEMA = "groklab-campaign/1"
TRAJECTORY_SUFFIX = ".traj"
SUMMARY_SUFFIX = ".toml"


def trajectory_file(out_dir: Path, config: RunConfig) -> Path:
    return Path(out_dir) / f"{config.run_name}{TRAJECTORY_SUFFIX}"


def summary_file(out_dir: Path, config: RunConfig) -> Path:
    return Path(out_dir) / f"{config.run_name}{SUMMARY_SUFFIX}"


def is_complete(out_dir: Path, config: RunConfig) -> bool:
    """El resumen existe, es legible y pertenece a esta configuración"""
    path = summary_file(out_dir, config)
    if not path.exists() or not trajectory_file(out_dir, config).exists():
        return False
    try:
        return read_summary(path).run_id == config.run_id
    except (KeyError, ValueError, TypeError):
        return False


def execute_run(config: RunConfig, out_dir: Path) -> dict[str, Any]:
    """Trabajo de una ejecución: entrenar, analizar y escribir sus archivos"""
    log, summary = run_training(config, out_dir)
    summary = summarize_run(log, summary)
    write_trajectory(log, trajectory_file(out_dir, config))
    write_summary(summary, summary_file(out_dir, config))
    # Con el resumen escrito la ejecución ya no se reanuda
    checkpoint_path(out_dir, config).unlink(missing_ok=True)
    return {
        "name": config.run_name,
        "run_id": config.run_id,
        "grokked": summary.grokked,
        "T_mem": summary.T_mem,
        "T_grok_99": summary.T_grok_99,
        "diverged": summary.diverged,
    }


@dataclass
class CampaignResult:
    campaign_id: str
    out_dir: Path
    completed: list[dict[str, Any]] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)
    failed: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failed

    def serialize(self) -> dict[str, Any]:
        return {
            "campaign_id": self.campaign_id,
            "out_dir": str(self.out_dir),
            "completed": sorted(self.completed, key=lambda r: r["name"]),
            "skipped": sorted(self.skipped),
            "failed": dict(sorted(self.failed.items())),
        }


def write_manifest(campaign: CampaignConfig, out_dir: Path) -> Path:
    data = campaign.serialize()
    data["runs"] = [
        {"name": c.run_name, "run_id": c.run_id, "cell_id": c.cell_id, "seed": c.seed}
        for c in campaign.runs()
    ]
    return write_versioned_toml(Path(out_dir) / MANIFEST_NAME, MANIFEST_SCHEMA, data)


def run_campaign(
    campaign: CampaignConfig,
    out_dir: Path | None = None,
    jobs: int | None = None,
    *,
    progress: bool = True,
) -> CampaignResult:
    """Lanza todas las ejecuciones pendientes de la campaña

    Los fallos de una ejecución se registran y no detienen al resto; los
    archivos de las ejecuciones terminadas se conservan.

    """
    out_dir = Path(out_dir or campaign.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    jobs = jobs or campaign.jobs
    write_manifest(campaign, out_dir)
    result = CampaignResult(campaign.campaign_id, out_dir)
    pending = []
    for config in campaign.runs():
        if is_complete(out_dir, config):
            logger.info("[%s] Completa, se omite", config.run_name)
            result.skipped.append(config.run_name)
        else:
            pending.append(config)
    if not pending:
        logger.info("Campaña '%s' ya completa (%d ejecuciones)", campaign.campaign_id, len(result.skipped))
        return result
    logger.info(
        "Campaña '%s': %d ejecuciones pendientes con %d trabajadores",
        campaign.campaign_id,
        len(pending),
        jobs,
    )
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = {pool.submit(execute_run, config, out_dir): config for config in pending}
        for future in tqdm(
            as_completed(futures),
            total=len(futures),
            desc=campaign.campaign_id,
            unit="run",
            disable=not progress,
        ):
            config = futures[future]
            try:
                result.completed.append(future.result())
            except Exception as e:
                logger.error("[%s] Ejecución fallida: %s", config.run_name, e)
                result.failed[config.run_name] = f"{type(e).__name__}: {e}"
    return result
