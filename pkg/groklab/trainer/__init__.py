# Python 3.10.11
# Creado: 28/09/2026
"""Motor de experimentos

Bucle de entrenamiento a lote completo, registro de trayectorias, detección
de eventos (T_mem, T_grok, meseta de V) e intervenciones causales.

"""

from .config import RunConfig
from .events import (
    classify_regime,
    detect_T_grok,
    detect_T_mem,
    detect_v_post_plateau,
    find_plateau,
)
from .interventions import apply_intervention, project_norm
from .records import (
    RunSummary,
    TrajectoryLog,
    read_summary,
    read_trajectory,
    write_summary,
    write_trajectory,
)
from .trainer import TrainingRun, checkpoint_path, resume_training, run_training

__all__ = [
    "RunConfig",
    "RunSummary",
    "TrainingRun",
    "TrajectoryLog",
    "apply_intervention",
    "checkpoint_path",
    "classify_regime",
    "detect_T_grok",
    "detect_T_mem",
    "detect_v_post_plateau",
    "find_plateau",
    "project_norm",
    "read_summary",
    "read_trajectory",
    "resume_training",
    "run_training",
    "write_summary",
    "write_trajectory",
]
