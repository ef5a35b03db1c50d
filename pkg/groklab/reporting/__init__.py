# Python 3.10.11
# Creado: 13/10/2026
"""Módulo de generación de informes"""

from .data import CampaignData
from .figures import FIGURE_SCHEMA, FIGURES, write_figures
from .report import Report
from .reports import REPORTS
from .table import Table

__all__ = ["CampaignData", "FIGURES", "FIGURE_SCHEMA", "REPORTS", "Report", "Table", "write_figures"]
