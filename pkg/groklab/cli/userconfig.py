# Python 3.10.11
# Creado: 15/10/2026
"""Controlador sencillo para la configuración de usuario

La configuración de usuario de groklab es un archivo TOML opcional con
valores por defecto para la línea de comandos, por ejemplo:

    [defaults]
    runs_dir = "runs/desk"
    jobs = 4
    grid_path = "campaigns/grid.toml"

Este módulo presenta la clase 'UserConfig', que permite cargar dicha
configuración y extraer la información pertinente.

"""

from __future__ import annotations

from pathlib import Path
from typing import Any

import toml


class UserConfig:
    """Controlador para la configuración de usuario

    Presenta el método 'get', que devuelve el valor de una clave especificada,
    lanzando un error en caso de no encontrarla. Castea automáticamente los
    datos en función de la terminación de la clave.

    El constructor recibe la ruta del archivo de configuración, que debe tener
    formato TOML. Sin ruta, la configuración está vacía.

    """

    def __init__(self, path: Path | None = None) -> None:
        self.path = Path(path) if path else None
        if self.path is None:
            self.config: dict[str, Any] = {}
            return
        if not self.path.is_file():
            raise FileNotFoundError(f"No se ha encontrado la configuración de usuario '{self.path}'")
        try:
            self.config = toml.load(self.path)
        except toml.TomlDecodeError as e:
            raise ValueError(
                f"[UserConfig] Error de sintaxis en '{self.path}' (línea {e.lineno}, columna {e.colno})"
            ) from e

    def get(self, key: str, *, safe: bool = True) -> Any:
        """Devuelve el valor de la clave 'key', en cualquier sección del
        archivo de configuración

        Si la clave no se encuentra, o se encuentra pero está vacía, se
        lanzará la excepción pertinente. Esto se puede evitar indicando
        'safe=False', en cuyo caso se devolverá 'None'.

        Las claves terminadas en '_dir' o '_path' serán convertidas a objetos
        'Path' automáticamente.

        """
        res = None
        for field, value in self.config.items():
            if isinstance(value, dict):
                if key in value:
                    res = value[key]
                    break
            elif field == key:
                res = value
                break
        else:
            if safe:
                raise KeyError(f"No se ha encontrado la clave '{key}' en la configuración de usuario")
            return None
        if res is None or res == "" or res == [] or res == {}:
            if safe:
                raise ValueError(f"La clave '{key}' aparece vacía en la configuración de usuario")
            return None
        if key.endswith("_dir") or key.endswith("_path"):
            return Path(res)
        return res
