# Python 3.10.11
# Creado: 30/09/2026
"""Bucle de entrenamiento a lote completo

Cada paso calcula la pérdida y el gradiente sobre todo el conjunto de
entrenamiento y aplica el optimizador. Cada 'log_every' pasos (y en el paso
0) se evalúan ambos conjuntos y se añade una fila a la trayectoria. En la
primera fila con train_acc >= 0.99 se toma θ como referencia angular y se
dispara la intervención configurada.

El estado completo del bucle cabe en un punto de control, y reanudar desde
él reproduce la ejecución ininterrumpida.

"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

import numpy as np
import toml

from groklab.core.errors import DivergenceError
from groklab.core.nn import accuracy, cross_entropy_loss
from groklab.models.architectures import forward, init_model, loss_and_grad
from groklab.models.checkpoint import load_checkpoint, save_checkpoint
from groklab.models.observables import angle_to_reference, cos_to_reference, param_norm_sq
from groklab.models.spec import ModelState
from groklab.optim.optimizers import OptimizerState, optimizer_step
from groklab.tasks.datasets import Dataset

from .config import RunConfig
from .events import (
    classify_regime,
    detect_T_grok,
    detect_T_mem,
    detect_v_post_plateau,
    find_plateau,
)
from .interventions import apply_intervention, project_norm
from .records import RunSummary, TrajectoryLog

logger = logging.getLogger(__name__)

CHECKPOINT_SUFFIX = ".ckpt.npz"
_ABSENT = -1


def checkpoint_path(run_dir: Path, config: RunConfig) -> Path:
    return Path(run_dir) / f"{config.run_name}{CHECKPOINT_SUFFIX}"


def _opt(value: int | None) -> int:
    return _ABSENT if value is None else value


def _unopt(value: Any) -> int | None:
    value = int(value)
    return None if value == _ABSENT else value


class TrainingRun:
    """Estado vivo de una ejecución"""

    def __init__(
        self,
        config: RunConfig,
        state: ModelState,
        opt: OptimizerState,
        run_dir: Path | None = None,
    ):
        self.config = config
        self.state = state
        self.opt = opt
        self.run_dir = Path(run_dir) if run_dir is not None else None
        self.train, self.val = config.datasets()
        self.log = TrajectoryLog()
        self.step = 0
        self.ref: np.ndarray | None = None
        self.T_mem: int | None = None
        self.T_grok: int | None = None
        self.intervention_step: int | None = None
        self.V_ref: float | None = None
        self.plateau_end: int | None = None
        self.early_stopped = False
        self.diverged_step: int | None = None

    @classmethod
    def fresh(cls, config: RunConfig, run_dir: Path | None = None) -> TrainingRun:
        state = init_model(config.model_spec(), config.seed)
        return cls(config, state, config.optimizer_state(state.num_params), run_dir)

    @property
    def frozen_norm(self) -> bool:
        return self.config.intervention == "norm_freeze" and self.V_ref is not None

    def evaluate(self, data: Dataset) -> tuple[float, float]:
        logits = forward(self.state, data.inputs)
        loss, _ = cross_entropy_loss(logits, data.labels)
        return float(accuracy(logits, data.labels)), float(loss)

    def record(self) -> None:
        """Evalúa y registra la fila del paso actual"""
        train_acc, train_loss = self.evaluate(self.train)
        val_acc, val_loss = self.evaluate(self.val)
        V = param_norm_sq(self.state)
        if not (np.isfinite(V) and np.isfinite(train_loss) and np.isfinite(val_loss)):
            raise DivergenceError("[Trainer] Valores no finitos en la evaluación", step=self.step)
        fire = self.ref is None and train_acc >= self.config.acc_mem
        if fire:
            self.ref = self.state.params.copy()
            self.T_mem = self.step
            cos = 1.0
        elif self.ref is not None:
            cos = cos_to_reference(self.state, self.ref)
        else:
            cos = float("nan")
        self.log.append(
            self.step, V, train_acc, val_acc, train_loss, val_loss, self.opt.lam, cos
        )
        if fire:
            logger.info("[%s] Memorización en t=%d (V=%.6g)", self.config.run_name, self.step, V)
            self.intervene(V)
        if self.T_mem is not None and self.T_grok is None and val_acc >= self.config.acc_grok:
            self.T_grok = self.step
            logger.info("[%s] Grokking en t=%d", self.config.run_name, self.step)

    def intervene(self, V: float) -> None:
        kind = self.config.intervention
        if kind == "none":
            return
        self.intervention_step = self.step
        if kind == "norm_freeze":
            self.V_ref = V
        apply_intervention(
            self.state, self.opt, kind, factor=self.config.rescale_factor, V_ref=self.V_ref
        )

    def should_stop(self) -> bool:
        if not self.config.early_stop or self.T_grok is None:
            return False
        if self.plateau_end is None:
            start = find_plateau(self.log, self.T_grok)
            if start is None:
                return False
            end = start + RunConfig.PLATEAU_WINDOW - 1
            self.plateau_end = int(self.log.step[end])
        return self.step >= self.plateau_end + RunConfig.EARLY_STOP_AFTER

    def advance(self) -> None:
        _, grad = loss_and_grad(self.state, self.train, step=self.step)
        self.state.params = optimizer_step(self.state.params, grad, self.opt)
        if self.frozen_norm:
            project_norm(self.state, self.V_ref)  # type: ignore[arg-type]
        self.step += 1

    def run(self, halt_at: int | None = None) -> TrainingRun:
        """Entrena hasta el presupuesto, la parada temprana o 'halt_at'"""
        config = self.config
        try:
            if not len(self.log):
                self.record()
            while self.step < config.max_steps:
                if self.step % config.log_every == 0 and self.should_stop():
                    self.early_stopped = True
                    logger.info("[%s] Parada temprana en t=%d", config.run_name, self.step)
                    break
                if halt_at is not None and self.step >= halt_at:
                    return self
                self.advance()
                if self.step % config.log_every == 0:
                    self.record()
                    self.maybe_checkpoint()
        except DivergenceError as exc:
            self.diverged_step = exc.step if exc.step is not None else self.step
            logger.warning("[%s] Divergencia en t=%d: %s", config.run_name, self.diverged_step, exc)
        return self

    # Puntos de control

    def maybe_checkpoint(self) -> None:
        every = self.config.checkpoint_every
        if self.run_dir is None or every <= 0 or len(self.log) % every != 0:
            return
        self.save(checkpoint_path(self.run_dir, self.config))

    def save(self, path: Path) -> Path:
        extra = {
            "config": np.array(toml.dumps(self.config.serialize())),
            "rows": self.log.array,
            "ref": self.ref if self.ref is not None else np.zeros(0),
            "events": np.array(
                [
                    self.step,
                    _opt(self.T_mem),
                    _opt(self.T_grok),
                    _opt(self.intervention_step),
                    _opt(self.plateau_end),
                ],
                dtype=np.int64,
            ),
            "V_ref": np.array(np.nan if self.V_ref is None else self.V_ref),
        }
        logger.debug("[%s] Punto de control en t=%d", self.config.run_name, self.step)
        return save_checkpoint(path, self.state, self.opt, extra)

    @classmethod
    def restore(cls, path: Path, run_dir: Path | None = None) -> TrainingRun:
        state, opt, extra = load_checkpoint(path)
        config = RunConfig.from_dict(toml.loads(str(extra["config"])))
        run = cls(config, state, opt, run_dir if run_dir is not None else Path(path).parent)
        run.log = TrajectoryLog.from_array(extra["rows"])
        run.ref = extra["ref"].copy() if extra["ref"].size else None
        step, T_mem, T_grok, intervention_step, plateau_end = extra["events"].tolist()
        run.step = int(step)
        run.T_mem, run.T_grok = _unopt(T_mem), _unopt(T_grok)
        run.intervention_step, run.plateau_end = _unopt(intervention_step), _unopt(plateau_end)
        V_ref = float(extra["V_ref"])
        run.V_ref = None if np.isnan(V_ref) else V_ref
        logger.info("[%s] Reanudando desde t=%d", config.run_name, run.step)
        return run

    # Resumen

    def summary(self) -> RunSummary:
        config, log = self.config, self.log
        T_mem = detect_T_mem(log, acc_threshold=config.acc_mem)
        T_grok_99 = detect_T_grok(log, config.acc_grok, not_before=T_mem) if T_mem is not None else None
        T_grok_95 = (
            detect_T_grok(log, config.acc_grok_soft, not_before=T_mem) if T_mem is not None else None
        )
        summary = RunSummary(
            run_id=config.run_id,
            cell_id=config.cell_id,
            seed=config.seed,
            arch=config.arch,
            task=config.task,
            p=config.p if config.task == "modular" else config.parity_n,
            eta=config.eta,
            lam=config.lam,
            steps_run=self.step,
            T_mem=T_mem,
            T_mem_loss=detect_T_mem(log, "loss"),
            T_grok_99=T_grok_99,
            T_grok_95=T_grok_95,
            V_final=float(log.V[-1]) if len(log) else None,
            grokked=T_grok_99 is not None,
            early_stopped=self.early_stopped,
            diverged=self.diverged_step is not None,
            diverged_step=self.diverged_step,
            intervention=config.intervention,
            intervention_step=self.intervention_step,
            regime=classify_regime(log, T_mem) if len(log) else None,
        )
        if T_mem is not None:
            summary.V_mem = float(log.V[log.index_of(T_mem)])
            if self.ref is not None:
                summary.alpha_final = angle_to_reference(self.state, self.ref)
        if T_grok_99 is not None:
            summary.V_post, summary.V_post_method = detect_v_post_plateau(log, T_grok_99)
        if config.intervention == "norm_freeze" and T_mem is not None:
            V = log.V[log.step > T_mem]
            if V.size:
                summary.norm_rel_std = float(np.std(V) / np.mean(V))
                summary.norm_max_rel_dev = float(np.max(np.abs(V - self.V_ref)) / self.V_ref)
        return summary


def run_training(
    config: RunConfig,
    run_dir: Path | None = None,
    *,
    halt_at: int | None = None,
) -> tuple[TrajectoryLog, RunSummary]:
    """Entrena una ejecución completa y devuelve (trayectoria, resumen)

    Si 'run_dir' contiene un punto de control de esta misma configuración se
    reanuda desde él. 'halt_at' detiene el bucle antes de terminar, dejando
    el último punto de control en disco.

    """
    path = checkpoint_path(run_dir, config) if run_dir is not None else None
    if path is not None and path.exists():
        run = TrainingRun.restore(path, run_dir)
        if run.config != config:
            logger.warning("[%s] Punto de control de otra configuración, se ignora", config.run_name)
            run = TrainingRun.fresh(config, run_dir)
    else:
        run = TrainingRun.fresh(config, run_dir)
    logger.info("[%s] Entrenando %s (%d parámetros)", config.run_name, config.arch, run.state.num_params)
    run.run(halt_at)
    return run.log, run.summary()


def resume_training(
    run_dir: Path, config: RunConfig | None = None, *, halt_at: int | None = None
) -> tuple[TrajectoryLog, RunSummary]:
    """Reanuda desde el punto de control más reciente de 'run_dir'"""
    run_dir = Path(run_dir)
    if config is not None:
        path = checkpoint_path(run_dir, config)
        if not path.exists():
            raise FileNotFoundError(f"[Trainer] No hay punto de control en {path}")
    else:
        candidates = sorted(run_dir.glob(f"*{CHECKPOINT_SUFFIX}"), key=lambda p: p.stat().st_mtime)
        if not candidates:
            raise FileNotFoundError(f"[Trainer] No hay puntos de control en {run_dir}")
        path = candidates[-1]
    run = TrainingRun.restore(path, run_dir)
    run.run(halt_at)
    return run.log, run.summary()
