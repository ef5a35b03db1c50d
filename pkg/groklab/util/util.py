# Python 3.10.11
# Creado: 28/06/2024
"""Utilidades varias para archivos versionados

Todos los archivos que escribe el laboratorio llevan en su primera línea una
cadena de esquema ("# groklab-trajectory/1", o 'schema = "..."' en los TOML),
y se escriben de forma atómica: primero en un temporal junto al destino y
luego se reemplaza, de modo que un trabajador interrumpido nunca deja un
archivo a medias.

"""

from __future__ import annotations

import math
import os
from pathlib import Path
from typing import Any, Iterable

import numpy as np
import toml


def atomic_write_text(path: Path, text: str) -> Path:
    """Escribe 'text' en 'path' a través de un temporal en el mismo directorio"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f".{path.name}.{os.getpid()}.tmp")
    tmp.write_text(text, encoding="utf-8")
    tmp.replace(path)
    return path


def write_versioned_text(path: Path, schema: str, lines: Iterable[str]) -> Path:
    """Escribe un archivo de texto cuya primera línea es '# <schema>'"""
    body = "\n".join(lines)
    text = f"# {schema}\n{body}\n" if body else f"# {schema}\n"
    return atomic_write_text(path, text)


def read_schema(path: Path) -> str:
    """Devuelve la cadena de esquema de la primera línea de 'path'"""
    with open(path, encoding="utf-8") as f:
        first = f.readline().strip()
    if first.startswith("#"):
        return first.lstrip("#").strip()
    if first.startswith("schema"):
        return first.split("=", 1)[1].strip().strip('"')
    raise ValueError(f"[Schema] El archivo '{path}' no declara esquema en su primera línea")


def _prune(value: Any) -> Any:
    """Prepara 'value' para TOML: sin None ni flotantes no finitos, y sin
    escalares numpy

    """
    if isinstance(value, dict):
        pruned = {k: _prune(v) for k, v in value.items()}
        return {k: v for k, v in pruned.items() if v is not None}
    if isinstance(value, (list, tuple)):
        return [v for v in (_prune(v) for v in value) if v is not None]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_versioned_toml(path: Path, schema: str, data: dict[str, Any]) -> Path:
    """Escribe 'data' como TOML con 'schema' como primera clave"""
    document = {"schema": schema}
    document.update(_prune(data))
    return atomic_write_text(path, toml.dumps(document))


def read_versioned_toml(path: Path, schema_prefix: str | None = None) -> dict[str, Any]:
    """Lee un TOML versionado, comprobando opcionalmente su familia de esquema"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"No se ha encontrado el archivo '{path}'")
    try:
        data = toml.load(path)
    except toml.TomlDecodeError as e:
        raise ValueError(
            f"[TOML] Error de sintaxis en '{path}' (línea {e.lineno}, columna {e.colno}): {e.msg}"
        ) from e
    schema = data.get("schema")
    if schema_prefix is not None and not str(schema).startswith(schema_prefix):
        raise ValueError(
            f"[Schema] '{path}' tiene esquema {schema!r}, se esperaba '{schema_prefix}/*'"
        )
    return data
