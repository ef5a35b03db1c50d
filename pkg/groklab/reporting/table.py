# Python 3.10.11
# Creado: 13/10/2026
"""Tablas planas exportables a hoja de cálculo, texto en columnas y consola

Presenta la clase 'Table', que gestiona una lista de filas 'RowValuesDict'
con las columnas fijadas por la cabecera.

"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any, Iterable, Iterator

from openpyxl.utils import get_column_letter
from openpyxl.worksheet.worksheet import Worksheet

from groklab.util import write_versioned_text


class RowValuesDict(dict):
    """Valores de una fila de la tabla

    Sólo admite claves que sean columnas de la tabla. Por defecto, los valores
    son None.

    """

    def __init__(self, keys: Iterable[str]) -> None:
        self._keys = list(keys)
        super().__init__({key: None for key in self._keys})

    def __setitem__(self, key: str, value: Any) -> None:
        if key not in self._keys:
            raise KeyError(f"[Table] La columna '{key}' no existe")
        super().__setitem__(key, value)

    def update(self, values: dict[str, Any]) -> None:  # type: ignore[override]
        for key, value in values.items():
            self[key] = value


def _text(value: Any) -> str:
    if value is None:
        return "nan"
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return "nan" if math.isnan(value) else f"{value:.10g}"
    return str(value)


class Table:
    """Tabla plana de filas con columnas identificadas

    El constructor recibe el título de la tabla y la lista de columnas.

    """

    def __init__(self, title: str, headers: Iterable[str]) -> None:
        self.title = title
        self.headers = list(headers)
        self.rows: list[RowValuesDict] = []

    def append(self, **values: Any) -> RowValuesDict:
        row = RowValuesDict(self.headers)
        row.update(values)
        self.rows.append(row)
        return row

    def __iter__(self) -> Iterator[RowValuesDict]:
        yield from self.rows

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> list[Any]:
        if name not in self.headers:
            raise KeyError(f"[Table] La columna '{name}' no existe")
        return [row[name] for row in self.rows]

    # exportación

    def lines(self) -> list[str]:
        """Cabecera y filas separadas por espacios; los valores ausentes son 'nan'"""
        out = [" ".join(self.headers)]
        out.extend(" ".join(_text(row[h]) for h in self.headers) for row in self.rows)
        return out

    def write(self, path: Path, schema: str) -> Path:
        return write_versioned_text(Path(path), schema, self.lines())

    def build(self, sheet: Worksheet) -> None:
        """Escribe la tabla en una hoja openpyxl: título, cabecera y filas"""
        sheet.cell(row=1, column=1, value=self.title)
        for j, header in enumerate(self.headers, start=1):
            sheet.cell(row=2, column=j, value=header)
            sheet.column_dimensions[get_column_letter(j)].width = max(12, len(header) + 2)
        for i, row in enumerate(self.rows, start=3):
            for j, header in enumerate(self.headers, start=1):
                value = row[header]
                if isinstance(value, float) and not math.isfinite(value):
                    value = None
                elif isinstance(value, (list, tuple, dict)):
                    value = str(value)
                sheet.cell(row=i, column=j, value=value)

    def show(self) -> str:
        """Representación de consola con columnas alineadas"""
        cells = [self.headers] + [
            [_text(row[h]) if not isinstance(row[h], str) else row[h] for h in self.headers]
            for row in self.rows
        ]
        widths = [max(len(r[j]) for r in cells) for j in range(len(self.headers))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)

    def __str__(self) -> str:
        return f"Table({self.title}, {len(self.rows)} rows, {len(self.headers)} columns)"
