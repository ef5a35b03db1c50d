# Python 3.10.11
# Creado: 10/10/2026
"""Campañas

Configuración de campañas, cola de ejecuciones en paralelo, análisis y
figuras sobre el directorio de resultados y auditoría de afirmaciones.

"""

from .analyze import analyze_campaign, emit_figures, load_campaign, simulate_bounds
from .claims import Claim, ClaimResult, ClaimsFile, VerifyReport, lookup, verify
from .config import CampaignConfig, CellConfig
from .runner import (
    CampaignResult,
    execute_run,
    is_complete,
    run_campaign,
    summary_file,
    trajectory_file,
)

__all__ = [
    "CampaignConfig",
    "CampaignResult",
    "CellConfig",
    "Claim",
    "ClaimResult",
    "ClaimsFile",
    "VerifyReport",
    "analyze_campaign",
    "emit_figures",
    "execute_run",
    "is_complete",
    "load_campaign",
    "lookup",
    "run_campaign",
    "simulate_bounds",
    "summary_file",
    "trajectory_file",
    "verify",
]
