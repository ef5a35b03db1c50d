# Python 3.10.11
# Creado: 24/09/2026
"""Modelos

Las cuatro arquitecturas con gradientes derivados a mano, los observables
del espacio de parámetros y los puntos de control.

"""

from .architectures import (
    backprop,
    forward,
    get_architecture,
    init_model,
    loss_and_grad,
    parameter_count,
)
from .checkpoint import load_checkpoint, save_checkpoint
from .observables import (
    MarginReport,
    angle_to_reference,
    cos_to_reference,
    feature_norm_sup,
    margins,
    margins_from_logits,
    ntk_feature_norm_sup,
    param_norm_sq,
    true_logit_gradient,
)
from .spec import Layout, ModelSpec, ModelState

__all__ = [
    "Layout",
    "MarginReport",
    "ModelSpec",
    "ModelState",
    "angle_to_reference",
    "backprop",
    "cos_to_reference",
    "feature_norm_sup",
    "forward",
    "get_architecture",
    "init_model",
    "load_checkpoint",
    "loss_and_grad",
    "margins",
    "margins_from_logits",
    "ntk_feature_norm_sup",
    "param_norm_sq",
    "parameter_count",
    "save_checkpoint",
    "true_logit_gradient",
]
