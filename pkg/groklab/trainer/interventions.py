# Python 3.10.11
# Creado: 29/09/2026
"""Intervenciones causales disparadas en T_mem

    - 'rescale': θ <- factor·θ una sola vez; los momentos no se tocan.
    - 'norm_freeze': tras cada paso, θ <- θ·sqrt(V_ref / ||θ||²).
    - 'wd_freeze': λ <- 0 en el optimizador vivo.

"""

from __future__ import annotations

import logging

import numpy as np

from groklab.models.spec import ModelState
from groklab.optim.optimizers import OptimizerState

logger = logging.getLogger(__name__)


def project_norm(state: ModelState, V_ref: float) -> None:
    """Reescala θ en el sitio para que ||θ||² = V_ref"""
    V = float(state.params @ state.params)
    if V <= 0.0:
        raise ValueError("[Intervention] No se puede proyectar un θ nulo")
    state.params *= np.sqrt(V_ref / V)


def apply_intervention(
    state: ModelState,
    opt: OptimizerState,
    kind: str,
    *,
    factor: float = 0.9,
    V_ref: float | None = None,
) -> None:
    """Aplica la intervención 'kind' en el sitio

    Para 'norm_freeze' esta función sólo hace la primera proyección; el bucle
    de entrenamiento la repite tras cada paso del optimizador.

    """
    if kind == "none":
        return
    if kind == "rescale":
        state.params *= factor
    elif kind == "norm_freeze":
        if V_ref is None:
            V_ref = float(state.params @ state.params)
        project_norm(state, V_ref)
    elif kind == "wd_freeze":
        opt.set_weight_decay(0.0)
    else:
        raise ValueError(f"[Intervention] Intervención desconocida: {kind!r}")
    logger.info("Intervención '%s' aplicada en t=%d", kind, opt.t)
