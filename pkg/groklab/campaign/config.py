# Python 3.10.11
# Creado: 10/10/2026
"""Configuración de campañas

Una campaña es un archivo TOML con unas claves generales, una tabla
'[defaults]' con valores comunes de 'RunConfig' y una lista '[[cells]]' de
celdas. Cada celda indica su identificador, su lista explícita de semillas y
las claves de 'RunConfig' que cambian respecto a los valores comunes:

    campaign_id = "desk"
    scope = "desk"
    jobs = 4
    out_dir = "runs/desk"
    calibration_cell = "f1_p23"

    [defaults]
    arch = "transformer1"
    embed_dim = 64

    [[cells]]
    cell_id = "f1_p23"
    seeds = [0, 1, 2]
    p = 23

"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, ClassVar, Literal

from groklab.trainer import RunConfig
from groklab.util import read_versioned_toml

CELL_ID_PATTERN = re.compile(r"^[A-Za-z0-9_-]+$")


@dataclass
class CellConfig:
    """Plantilla de 'RunConfig' y semillas de una celda"""

    cell_id: str
    seeds: list[int]
    template: dict[str, Any] = field(default_factory=dict)

    def runs(self) -> list[RunConfig]:
        return [
            RunConfig.from_dict({**self.template, "cell_id": self.cell_id, "seed": seed})
            for seed in self.seeds
        ]


@dataclass
class CampaignConfig:
    """Campaña de ejecuciones independientes

    'runs()' expande las celdas en la lista ordenada de 'RunConfig'. El orden
    es el del archivo (celda a celda, semilla a semilla) y no depende del
    grado de paralelismo.

    """

    KEYS: ClassVar[tuple[str, ...]] = (
        "schema",
        "campaign_id",
        "scope",
        "jobs",
        "out_dir",
        "calibration_cell",
        "defaults",
        "cells",
    )

    campaign_id: str
    cells: list[CellConfig]
    jobs: int = 1
    out_dir: Path = Path("runs")
    scope: Literal["desk", "full"] = "desk"
    calibration_cell: str | None = None
    source: Path | None = None

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError(f"[Campaign] '{self.campaign_id}': no cells")
        if self.jobs < 1:
            raise ValueError(f"[Campaign] 'jobs' debe ser >= 1, no {self.jobs}")
        if self.scope not in ("desk", "full"):
            raise ValueError(f"[Campaign] Ámbito desconocido: {self.scope!r}")
        ids = [cell.cell_id for cell in self.cells]
        repeated = sorted({i for i in ids if ids.count(i) > 1})
        if repeated:
            raise ValueError(f"[Campaign] Celdas repetidas: {', '.join(repeated)}")
        if self.calibration_cell is not None and self.calibration_cell not in ids:
            raise KeyError(f"[Campaign] La celda de calibración '{self.calibration_cell}' no existe")

    @classmethod
    def from_dict(cls, data: dict[str, Any], source: Path | None = None) -> CampaignConfig:
        unknown = set(data) - set(cls.KEYS)
        if unknown:
            raise KeyError(f"[Campaign] Claves desconocidas: {', '.join(sorted(unknown))}")
        defaults = dict(data.get("defaults", {}))
        for forbidden in ("cell_id", "seed"):
            if forbidden in defaults:
                raise KeyError(f"[Campaign] '{forbidden}' no puede aparecer en [defaults]")
        cells = [_parse_cell(raw, defaults) for raw in data.get("cells", [])]
        return cls(
            campaign_id=str(data.get("campaign_id", source.stem if source else "campaign")),
            cells=cells,
            jobs=int(data.get("jobs", 1)),
            out_dir=Path(data.get("out_dir", "runs")),
            scope=data.get("scope", "desk"),
            calibration_cell=data.get("calibration_cell"),
            source=source,
        )

    @classmethod
    def from_toml(cls, path: Path) -> CampaignConfig:
        """Lee la campaña; los errores de sintaxis indican línea y columna"""
        path = Path(path)
        return cls.from_dict(read_versioned_toml(path), source=path)

    def runs(self) -> list[RunConfig]:
        configs = [config for cell in self.cells for config in cell.runs()]
        names = [config.run_name for config in configs]
        if len(set(names)) != len(names):
            raise ValueError("[Campaign] Hay semillas repetidas dentro de una celda")
        return configs

    def serialize(self) -> dict[str, Any]:
        return {
            "campaign_id": self.campaign_id,
            "scope": self.scope,
            "calibration_cell": self.calibration_cell,
            "cells": [cell.cell_id for cell in self.cells],
        }


def _parse_cell(raw: dict[str, Any], defaults: dict[str, Any]) -> CellConfig:
    cell_id = raw.get("cell_id")
    if not cell_id:
        raise KeyError("[Campaign] Hay una celda sin 'cell_id'")
    if not CELL_ID_PATTERN.match(cell_id):
        raise ValueError(f"[Campaign] Identificador de celda no válido: {cell_id!r}")
    seeds = raw.get("seeds")
    if not seeds or not all(isinstance(s, int) and s >= 0 for s in seeds):
        raise ValueError(f"[Campaign] La celda '{cell_id}' debe listar sus semillas explícitamente")
    if "seed" in raw:
        raise KeyError(f"[Campaign] La celda '{cell_id}' usa 'seed'; se espera la lista 'seeds'")
    template = {**defaults, **{k: v for k, v in raw.items() if k not in ("cell_id", "seeds")}}
    unknown = set(template) - RunConfig.field_names()
    if unknown:
        raise KeyError(
            f"[Campaign] Claves desconocidas en la celda '{cell_id}': {', '.join(sorted(unknown))}"
        )
    cell = CellConfig(cell_id, list(seeds), template)
    # Valida la plantilla ya al leer el archivo
    cell.runs()
    return cell
