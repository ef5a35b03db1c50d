# Python 3.10.11
# Creado: 24/09/2026
"""Especificación de arquitectura, mapa de parámetros y estado del modelo

Todos los parámetros de un modelo viven en un único vector plano θ (float64).
El 'Layout' asigna a cada tensor con nombre su desplazamiento y forma dentro
de θ, de modo que las vistas por nombre y el vector plano comparten memoria.

"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Any, ClassVar, Literal

import numpy as np

Arch = Literal["transformer1", "transformer2_paper", "transformer2_alt", "mlp"]


@dataclass(frozen=True)
class ModelSpec:
    """Descripción de una arquitectura

    'vocab_size' y 'seq_len' describen la entrada (p y 2 en aritmética
    modular; 2 y n en paridad). 'hidden_dim' sólo lo usa el MLP y 'readout'
    sólo transformer1 ('mean' o 'last'). Si 'homogeneity_degree_k' no se
    indica, se toma el de la tabla 'HOMOGENEITY'.

    """

    ARCHS: ClassVar[tuple[str, ...]] = (
        "transformer1",
        "transformer2_paper",
        "transformer2_alt",
        "mlp",
    )
    HOMOGENEITY: ClassVar[dict[str, int]] = {
        "transformer1": 1,
        "transformer2_alt": 1,
        "transformer2_paper": 2,
        "mlp": 4,
    }

    arch: Arch
    num_classes: int
    vocab_size: int | None = None
    seq_len: int = 2
    embed_dim: int = 128
    heads: int = 4
    ff_dim: int = 512
    hidden_dim: int = 512
    init_std: float = 0.02
    readout: Literal["mean", "last"] = "mean"
    homogeneity_degree_k: int | None = None

    def __post_init__(self) -> None:
        if self.arch not in self.ARCHS:
            raise ValueError(f"[ModelSpec] Arquitectura desconocida: {self.arch!r}")
        if self.embed_dim % self.heads != 0:
            raise ValueError(
                f"[ModelSpec] embed_dim ({self.embed_dim}) debe ser divisible entre heads ({self.heads})"
            )
        if self.readout not in ("mean", "last"):
            raise ValueError(f"[ModelSpec] Lectura desconocida: {self.readout!r}")
        if self.num_classes < 2 or self.seq_len < 1:
            raise ValueError("[ModelSpec] num_classes >= 2 y seq_len >= 1")
        if self.vocab_size is None:
            object.__setattr__(self, "vocab_size", self.num_classes)
        if self.homogeneity_degree_k is None:
            object.__setattr__(self, "homogeneity_degree_k", self.HOMOGENEITY[self.arch])

    @property
    def head_dim(self) -> int:
        return self.embed_dim // self.heads

    def serialize(self) -> dict[str, Any]:
        return {
            "arch": self.arch,
            "num_classes": self.num_classes,
            "vocab_size": self.vocab_size,
            "seq_len": self.seq_len,
            "embed_dim": self.embed_dim,
            "heads": self.heads,
            "ff_dim": self.ff_dim,
            "hidden_dim": self.hidden_dim,
            "init_std": self.init_std,
            "readout": self.readout,
            "homogeneity_degree_k": self.homogeneity_degree_k,
        }


@dataclass
class Layout:
    """Mapa nombre -> (desplazamiento, forma) dentro del vector plano"""

    entries: list[tuple[str, tuple[int, ...]]]
    offsets: dict[str, int] = field(init=False)
    size: int = field(init=False)

    def __post_init__(self) -> None:
        self.offsets = {}
        offset = 0
        for name, shape in self.entries:
            if name in self.offsets:
                raise ValueError(f"[Layout] Nombre de parámetro repetido: {name!r}")
            self.offsets[name] = offset
            offset += prod(shape)
        self.size = offset

    @property
    def names(self) -> list[str]:
        return [name for name, _ in self.entries]

    def shape(self, name: str) -> tuple[int, ...]:
        return dict(self.entries)[name]

    def unflatten(self, theta: np.ndarray) -> dict[str, np.ndarray]:
        """Vistas con nombre sobre 'theta' (comparten memoria)"""
        if theta.shape != (self.size,):
            raise ValueError(
                f"[Layout] Se esperaba un vector de {self.size} parámetros, hay {theta.shape}"
            )
        return {
            name: theta[self.offsets[name] : self.offsets[name] + prod(shape)].reshape(shape)
            for name, shape in self.entries
        }

    def flatten(self, tensors: dict[str, np.ndarray]) -> np.ndarray:
        """Vector plano a partir de tensores con nombre, en el orden del mapa"""
        return np.concatenate(
            [np.asarray(tensors[name], dtype=np.float64).ravel() for name in self.names]
        )

    def serialize(self) -> dict[str, Any]:
        return {name: list(shape) for name, shape in self.entries}


@dataclass
class ModelState:
    """Parámetros θ de un modelo junto con su especificación y su mapa"""

    spec: ModelSpec
    layout: Layout
    params: np.ndarray

    def __post_init__(self) -> None:
        self.params = np.ascontiguousarray(self.params, dtype=np.float64)
        if self.params.shape != (self.layout.size,):
            raise ValueError(
                f"[ModelState] θ tiene forma {self.params.shape}, el mapa exige ({self.layout.size},)"
            )

    @property
    def num_params(self) -> int:
        return self.layout.size

    def tensors(self) -> dict[str, np.ndarray]:
        return self.layout.unflatten(self.params)

    def with_params(self, params: np.ndarray) -> ModelState:
        """Copia del estado con otro vector θ"""
        return ModelState(self.spec, self.layout, np.array(params, dtype=np.float64))

    def copy(self) -> ModelState:
        return self.with_params(self.params)
