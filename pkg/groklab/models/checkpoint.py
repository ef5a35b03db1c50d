# Python 3.10.11
# Creado: 26/09/2026
"""Puntos de control en formato npz

El archivo guarda la cadena de esquema, la especificación del modelo, el mapa
de parámetros, θ y el estado completo del optimizador. Cualquier otro estado
(filas registradas, referencia angular, eventos) viaja en 'extra' como
arrays con prefijo 'extra.'. La ida y vuelta es exacta bit a bit.

"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any

import numpy as np
import toml

from groklab.optim.optimizers import OptimizerState

from .architectures import get_architecture
from .spec import ModelSpec, ModelState

SCHEMA = "groklab-checkpoint/1"


def save_checkpoint(
    path: Path,
    state: ModelState,
    opt: OptimizerState,
    extra: dict[str, Any] | None = None,
) -> Path:
    """Escribe el punto de control de forma atómica"""
    path = Path(path)
    arrays: dict[str, Any] = {
        "schema": np.array(SCHEMA),
        "spec": np.array(toml.dumps(state.spec.serialize())),
        "layout_names": np.array(state.layout.names),
        "theta": state.params,
        "opt.hparams": np.array(toml.dumps(opt.hparams())),
        "opt.m": opt.m,
        "opt.v": opt.v,
        "opt.t": np.array(opt.t, dtype=np.int64),
    }
    for key, value in (extra or {}).items():
        arrays[f"extra.{key}"] = np.asarray(value)
    tmp = path.with_name(f".{path.name}.{os.getpid()}.tmp")
    with open(tmp, "wb") as fh:
        np.savez(fh, **arrays)
    os.replace(tmp, path)
    return path


def load_checkpoint(path: Path) -> tuple[ModelState, OptimizerState, dict[str, np.ndarray]]:
    """Lee un punto de control: (estado, optimizador, extra)"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"[Checkpoint] No existe el archivo {path}")
    with np.load(path, allow_pickle=False) as data:
        schema = str(data["schema"])
        if schema != SCHEMA:
            raise ValueError(f"[Checkpoint] Esquema '{schema}' no soportado en {path}")
        spec = ModelSpec(**toml.loads(str(data["spec"])))
        layout = get_architecture(spec).layout()
        if layout.names != [str(name) for name in data["layout_names"]]:
            raise ValueError(f"[Checkpoint] El mapa de parámetros de {path} no coincide")
        state = ModelState(spec, layout, data["theta"].copy())
        opt = OptimizerState.from_hparams(
            toml.loads(str(data["opt.hparams"])),
            m=data["opt.m"].copy(),
            v=data["opt.v"].copy(),
            t=int(data["opt.t"]),
        )
        extra = {
            key.removeprefix("extra."): data[key].copy()
            for key in data.files
            if key.startswith("extra.")
        }
    return state, opt, extra
