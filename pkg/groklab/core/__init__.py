# Python 3.10.11
# Creado: 21/09/2026
"""Núcleo matemático

Generadores aleatorios deterministas, primitivas de redes neuronales
(softmax, entropía cruzada, LayerNorm), ajuste lineal por mínimos cuadrados y
gradiente por diferencias finitas.

"""

from .errors import DivergenceError
from .fitting import LineFit, least_squares_line
from .gradcheck import finite_diff_gradient
from .nn import (
    EPS_LN,
    accuracy,
    cross_entropy_loss,
    layer_norm,
    layer_norm_backward,
    softmax,
)
from .rng import RngState, seeded_rng, substream

__all__ = [
    "DivergenceError",
    "EPS_LN",
    "LineFit",
    "RngState",
    "accuracy",
    "cross_entropy_loss",
    "finite_diff_gradient",
    "layer_norm",
    "layer_norm_backward",
    "least_squares_line",
    "seeded_rng",
    "softmax",
    "substream",
]
