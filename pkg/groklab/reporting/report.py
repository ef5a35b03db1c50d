# Python 3.10.11
# Creado: 13/10/2026
"""Clase base y herramientas básicas para la preparación de informes

Presenta la clase 'Report', de la que debe heredar cualquier otra clase que
quiera ser usada como generador de informes.

"""

from __future__ import annotations

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

import openpyxl

from groklab.util import write_versioned_toml

from .data import CampaignData
from .table import Table


class Report(ABC):
    """Clase base para la generación de informes

    Un informe recibe los datos de una campaña ('CampaignData') y genera un
    documento TOML versionado con los resultados de un análisis. Su esquema
    es 'groklab-<name>/1' y se escribe en '<directorio>/<name>.toml', de modo
    que la auditoría de afirmaciones lo encuentra por su nombre.

    Todo informe debe poseer un nombre identificador ('name'), y,
    opcionalmente, un título ('title'), una descripción ('description') y un
    nombre para la hoja Excel en la que se muestren sus datos
    ('sheet_name'). Si no se indican estos últimos, se infieren a partir del
    nombre.

    Las clases hijas deberán implementar el método 'build', que devuelve el
    documento como diccionario. Opcionalmente pueden implementar 'table', que
    devuelve la vista en filas del informe; sólo los informes con tabla se
    exportan a Excel. La hoja se prepara con 'prepare', que crea el archivo
    si no existe y crea o limpia la hoja indicada, y se guarda con 'save'.

    """

    name: str

    def __init__(self, data: CampaignData) -> None:
        self.data = data
        if not hasattr(self, "name"):
            raise AttributeError("[Report] El informe debe tener un nombre")
        if not hasattr(self, "title"):
            self.title = self.name
        if not hasattr(self, "description"):
            self.description = ""
        if not hasattr(self, "sheet_name"):
            self.sheet_name = self.name.lower().replace(" ", "_")
        self._document: dict[str, Any] | None = None

    @property
    def schema(self) -> str:
        return f"groklab-{self.name}/1"

    @property
    def document(self) -> dict[str, Any]:
        if self._document is None:
            self._document = self.build()
        return self._document

    @abstractmethod
    def build(self) -> dict[str, Any]:
        """Genera el contenido del informe

        Debe ser implementado por las clases hijas.

        """
        pass

    def table(self) -> Table | None:
        return None

    def write(self, directory: Path) -> Path:
        """Escribe el documento en '<directory>/<name>.toml'"""
        return write_versioned_toml(Path(directory) / f"{self.name}.toml", self.schema, self.document)

    # Excel

    def prepare(self, path: Path, sheet_id: int | str | None = None) -> None:
        """Prepara la hoja Excel donde se escribirá el informe

        Si el archivo no existe, lo crea. Si 'sheet_id' es un entero, buscará
        la hoja con dicho índice, o la última si es mayor. Si es un nombre,
        buscará la hoja con dicho nombre, o la creará si no existe. Si es
        None, usará el nombre que indique el atributo 'sheet_name'.

        La hoja, en formato OpenPyXL, se guardará en el atributo 'sheet'. Todo
        su contenido será eliminado si ya existía.

        """
        path = Path(path)
        if not path.exists():
            path.parent.mkdir(parents=True, exist_ok=True)
            wb = openpyxl.Workbook()
            wb.active.title = self.sheet_name
            wb.save(path)
            wb.close()
        self.excel_path = path
        wb = openpyxl.load_workbook(path)
        sheet_id = self.sheet_name if sheet_id is None else sheet_id
        if isinstance(sheet_id, str):
            if sheet_id not in wb.sheetnames:
                wb.create_sheet(title=sheet_id)
            self.sheet = wb[sheet_id]
        else:
            self.sheet = wb.worksheets[min(sheet_id, len(wb.sheetnames) - 1)]
        if self.sheet.max_row:
            self.sheet.delete_rows(1, self.sheet.max_row)
        self._wb = wb

    def save(self) -> Path:
        """Guarda el archivo Excel con el informe generado"""
        self._wb.save(self.excel_path)
        self._wb.close()
        return self.excel_path

    def export(self, path: Path, sheet_id: int | str | None = None) -> Path | None:
        """Vuelca la tabla del informe en una hoja Excel; None si no tiene tabla"""
        table = self.table()
        if table is None:
            return None
        self.prepare(path, sheet_id)
        table.build(self.sheet)
        return self.save()

    def __str__(self) -> str:
        return f"Report({self.name}, {self.title!r}, {self.description!r}, {self.sheet_name!r})"
