# Python 3.10.11
# Creado: 13/10/2026
"""Datos de campaña que consumen los informes"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path

from groklab.trainer import RunSummary, TrajectoryLog


@dataclass
class CampaignData:
    """Ejecuciones retenidas de una campaña, con sus trayectorias

    'excluded' guarda, por nombre de ejecución, el motivo de su exclusión
    (trayectoria ausente o corrupta, resumen ilegible).

    """

    runs_dir: Path
    summaries: list[RunSummary] = field(default_factory=list)
    trajectories: dict[str, TrajectoryLog] = field(default_factory=dict)
    excluded: dict[str, str] = field(default_factory=dict)
    campaign_id: str = "campaign"
    scope: str = "desk"
    calibration_cell: str | None = None

    def by_cell(self) -> dict[str, list[RunSummary]]:
        grouped: dict[str, list[RunSummary]] = defaultdict(list)
        for summary in self.summaries:
            grouped[summary.cell_id].append(summary)
        return dict(sorted(grouped.items()))

    def trajectory(self, summary: RunSummary) -> TrajectoryLog:
        return self.trajectories[summary.run_id]

    def baseline(self, summary: RunSummary) -> list[RunSummary]:
        """Ejecuciones sin intervención con la misma arquitectura, p, η y λ"""
        return [
            s
            for s in self.summaries
            if s.intervention == "none"
            and s.arch == summary.arch
            and s.task == summary.task
            and s.p == summary.p
            and s.eta == summary.eta
            and s.lam == summary.lam
        ]
