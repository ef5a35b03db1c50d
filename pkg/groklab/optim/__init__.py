# Python 3.10.11
# Creado: 27/09/2026
"""Optimizadores: AdamW y SGD con decaimiento de pesos"""

from .optimizers import OptimizerState, adamw_step, optimizer_step, sgd_wd_step

__all__ = ["OptimizerState", "adamw_step", "optimizer_step", "sgd_wd_step"]
