# Python 3.10.11
# Creado: 15/10/2026
"""Utilidades exclusivas para el cliente de groklab"""

from __future__ import annotations

from pathlib import Path
from typing import Any


def validate_path(path: str | Path) -> Path:
    """Verifica que 'path' es una ruta existente

    Si 'path' está vacío o no existe, lanzará una excepción. Convierte 'path'
    a un objeto 'Path' si no lo es ya.

    """
    if not path:
        raise ValueError("Se ha pasado una ruta vacía a 'validate_path'")
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"No se ha encontrado la ruta '{path}'")
    return path


def fmt(value: Any) -> str:
    """Valor legible en consola"""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "sí" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)
