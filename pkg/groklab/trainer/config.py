# Python 3.10.11
# Creado: 28/09/2026
"""Configuración de una ejecución de entrenamiento

Un 'RunConfig' describe por completo una ejecución: tarea, arquitectura,
optimizador, semilla, presupuesto, calendario de registro e intervención.
Su identificador ('run_id') es el hash de su forma canónica, de modo que dos
configuraciones idénticas comparten archivos y no se repiten.

"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, fields
from typing import Any, ClassVar, Literal

from groklab.models.spec import ModelSpec
from groklab.optim.optimizers import OptimizerState
from groklab.tasks.datasets import Dataset, gen_modular, gen_sparse_parity

Intervention = Literal["none", "rescale", "norm_freeze", "wd_freeze"]


@dataclass(frozen=True)
class RunConfig:
    """Configuración inmutable de una ejecución"""

    INTERVENTIONS: ClassVar[tuple[str, ...]] = ("none", "rescale", "norm_freeze", "wd_freeze")
    TASKS: ClassVar[tuple[str, ...]] = ("modular", "parity")
    LOSS_MEM: ClassVar[float] = 0.01
    PLATEAU_WINDOW: ClassVar[int] = 30
    PLATEAU_REL_STD: ClassVar[float] = 0.01
    PLATEAU_MIN_ELAPSED: ClassVar[int] = 1500
    TAIL_POINTS: ClassVar[int] = 10
    EARLY_STOP_AFTER: ClassVar[int] = 2000

    cell_id: str = "cell"
    task: Literal["modular", "parity"] = "modular"
    op: Literal["add", "mult"] = "add"
    p: int = 97
    parity_n: int = 20
    parity_k: int = 3
    parity_samples: int = 4096
    arch: str = "transformer1"
    embed_dim: int = ModelSpec.embed_dim
    heads: int = ModelSpec.heads
    ff_dim: int = ModelSpec.ff_dim
    hidden_dim: int = ModelSpec.hidden_dim
    init_std: float = ModelSpec.init_std
    readout: Literal["mean", "last"] = "mean"
    optimizer: Literal["adamw", "sgd_wd"] = "adamw"
    eta: float = 1e-3
    lam: float = 1.0
    beta1: float = OptimizerState.DEFAULT_BETA1
    beta2: float = OptimizerState.DEFAULT_BETA2
    eps: float = OptimizerState.DEFAULT_EPS
    seed: int = 42
    max_steps: int = 20000
    log_every: int = 20
    intervention: Intervention = "none"
    rescale_factor: float = 0.9
    acc_mem: float = 0.99
    acc_grok: float = 0.99
    acc_grok_soft: float = 0.95
    early_stop: bool = True
    checkpoint_every: int = 0

    def __post_init__(self) -> None:
        if self.task not in self.TASKS:
            raise ValueError(f"[RunConfig] Tarea desconocida: {self.task!r}")
        if self.intervention not in self.INTERVENTIONS:
            raise ValueError(f"[RunConfig] Intervención desconocida: {self.intervention!r}")
        if self.log_every < 1:
            raise ValueError("[RunConfig] 'log_every' debe ser >= 1")
        if self.max_steps < 1 or self.max_steps % self.log_every != 0:
            raise ValueError(
                f"[RunConfig] 'max_steps' ({self.max_steps}) debe ser múltiplo de "
                f"'log_every' ({self.log_every})"
            )
        if self.checkpoint_every < 0:
            raise ValueError("[RunConfig] 'checkpoint_every' debe ser >= 0")
        if self.eta * self.lam >= 1.0:
            raise ValueError(f"[RunConfig] ηλ = {self.eta * self.lam:g} debe ser < 1")
        if not 0.0 < self.rescale_factor:
            raise ValueError("[RunConfig] 'rescale_factor' debe ser positivo")
        # La especificación del modelo valida el resto
        self.model_spec()

    @classmethod
    def field_names(cls) -> set[str]:
        return {f.name for f in fields(cls)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunConfig:
        unknown = set(data) - cls.field_names()
        if unknown:
            raise KeyError(f"[RunConfig] Claves desconocidas: {', '.join(sorted(unknown))}")
        return cls(**data)

    def serialize(self) -> dict[str, Any]:
        return asdict(self)

    @property
    def run_id(self) -> str:
        canonical = json.dumps(self.serialize(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]

    @property
    def run_name(self) -> str:
        return f"{self.cell_id}_seed{self.seed}"

    @property
    def chance_level(self) -> float:
        return 1.0 / self.num_classes

    @property
    def num_classes(self) -> int:
        return self.p if self.task == "modular" else 2

    def model_spec(self) -> ModelSpec:
        if self.task == "modular":
            vocab, seq = self.p, 2
        else:
            vocab, seq = 2, self.parity_n
        return ModelSpec(
            arch=self.arch,  # type: ignore[arg-type]
            num_classes=self.num_classes,
            vocab_size=vocab,
            seq_len=seq,
            embed_dim=self.embed_dim,
            heads=self.heads,
            ff_dim=self.ff_dim,
            hidden_dim=self.hidden_dim,
            init_std=self.init_std,
            readout=self.readout,
        )

    def optimizer_state(self, num_params: int) -> OptimizerState:
        return OptimizerState(
            kind=self.optimizer,
            eta=self.eta,
            lam=self.lam,
            num_params=num_params,
            beta1=self.beta1,
            beta2=self.beta2,
            eps=self.eps,
        )

    def datasets(self) -> tuple[Dataset, Dataset]:
        if self.task == "modular":
            return gen_modular(self.p, self.op, self.seed)
        return gen_sparse_parity(self.parity_n, self.parity_k, self.parity_samples, self.seed)
