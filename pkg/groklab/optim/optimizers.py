# Python 3.10.11
# Creado: 27/09/2026
"""Optimizadores con decaimiento de pesos desacoplado

    - AdamW: θ' = (1 - ηλ)θ - η·m̂/(sqrt(v̂) + ε), con momentos corregidos
      por sesgo 1/(1 - βᵗ).
    - SGD con decaimiento: θ' = (1 - ηλ)θ - η·∇L(θ).

El decaimiento se aplica a todos los parámetros. Las funciones de paso
devuelven un θ nuevo y actualizan en el sitio los momentos y el contador
del estado.

"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, ClassVar, Literal

import numpy as np

from groklab.core.errors import DivergenceError

Kind = Literal["adamw", "sgd_wd"]


@dataclass
class OptimizerState:
    """Estado inspeccionable del optimizador"""

    KINDS: ClassVar[tuple[str, ...]] = ("adamw", "sgd_wd")
    DEFAULT_BETA1: ClassVar[float] = 0.9
    DEFAULT_BETA2: ClassVar[float] = 0.999
    DEFAULT_EPS: ClassVar[float] = 1e-8

    kind: Kind
    eta: float
    lam: float
    num_params: int
    beta1: float = DEFAULT_BETA1
    beta2: float = DEFAULT_BETA2
    eps: float = DEFAULT_EPS
    m: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]
    v: np.ndarray = field(default=None, repr=False)  # type: ignore[assignment]
    t: int = 0

    def __post_init__(self) -> None:
        if self.kind not in self.KINDS:
            raise ValueError(f"[Optimizer] Tipo desconocido: {self.kind!r}")
        if self.eta <= 0.0 or self.lam < 0.0:
            raise ValueError("[Optimizer] Se requiere η > 0 y λ >= 0")
        if self.eta * self.lam >= 1.0:
            raise ValueError(f"[Optimizer] ηλ = {self.eta * self.lam:g} debe ser < 1")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ValueError("[Optimizer] β₁ y β₂ deben estar en [0, 1)")
        if self.m is None:
            self.m = np.zeros(self.num_params)
        if self.v is None:
            self.v = np.zeros(self.num_params)
        if self.m.shape != (self.num_params,) or self.v.shape != (self.num_params,):
            raise ValueError("[Optimizer] Los momentos no tienen la forma de θ")

    @property
    def decay(self) -> float:
        return 1.0 - self.eta * self.lam

    def set_weight_decay(self, lam: float) -> None:
        """Cambia λ en el sitio (intervención de supresión del decaimiento)"""
        if lam < 0.0 or self.eta * lam >= 1.0:
            raise ValueError(f"[Optimizer] λ = {lam:g} no válido para η = {self.eta:g}")
        self.lam = lam

    def hparams(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "eta": self.eta,
            "lam": self.lam,
            "num_params": self.num_params,
            "beta1": self.beta1,
            "beta2": self.beta2,
            "eps": self.eps,
        }

    @classmethod
    def from_hparams(
        cls, hparams: dict[str, Any], *, m: np.ndarray, v: np.ndarray, t: int
    ) -> OptimizerState:
        return cls(**hparams, m=m, v=v, t=t)

    def copy(self) -> OptimizerState:
        return OptimizerState.from_hparams(
            self.hparams(), m=self.m.copy(), v=self.v.copy(), t=self.t
        )


def _check(theta: np.ndarray, grad: np.ndarray, opt: OptimizerState, kind: str) -> None:
    if opt.kind != kind:
        raise ValueError(f"[Optimizer] Se esperaba un estado '{kind}', hay '{opt.kind}'")
    if theta.shape != grad.shape or theta.shape != (opt.num_params,):
        raise ValueError("[Optimizer] θ, gradiente y momentos deben tener la misma forma")
    if not np.all(np.isfinite(grad)):
        raise DivergenceError("[Optimizer] Gradiente no finito", step=opt.t)


def adamw_step(theta: np.ndarray, grad: np.ndarray, opt: OptimizerState) -> np.ndarray:
    """Un paso de AdamW; devuelve θ'"""
    _check(theta, grad, opt, "adamw")
    opt.t += 1
    opt.m = opt.beta1 * opt.m + (1.0 - opt.beta1) * grad
    opt.v = opt.beta2 * opt.v + (1.0 - opt.beta2) * grad * grad
    m_hat = opt.m / (1.0 - opt.beta1**opt.t)
    v_hat = opt.v / (1.0 - opt.beta2**opt.t)
    return opt.decay * theta - opt.eta * m_hat / (np.sqrt(v_hat) + opt.eps)


def sgd_wd_step(theta: np.ndarray, grad: np.ndarray, opt: OptimizerState) -> np.ndarray:
    """Un paso de SGD con decaimiento; devuelve θ'"""
    _check(theta, grad, opt, "sgd_wd")
    opt.t += 1
    return opt.decay * theta - opt.eta * grad


def optimizer_step(theta: np.ndarray, grad: np.ndarray, opt: OptimizerState) -> np.ndarray:
    if opt.kind == "adamw":
        return adamw_step(theta, grad, opt)
    return sgd_wd_step(theta, grad, opt)
