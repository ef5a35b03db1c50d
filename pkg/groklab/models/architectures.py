# Python 3.10.11
# Creado: 25/09/2026
"""Arquitecturas: transformers de una y dos capas y perceptrón multicapa

Cada arquitectura sabe construir su 'Layout', inicializar θ y recorrer la
red hacia delante y hacia atrás. Las cuatro variantes son:

    - 'transformer1': una capa post-norm con sesgos, embebido de posición
      y lectura 'mean' o 'last'.
    - 'transformer2_paper': dos capas sin sesgos ni LayerNorm, con
      embebido de posición y cabeza sin sesgo.
    - 'transformer2_alt': dos capas post-norm con sesgos, sin embebido de
      posición, LayerNorm final, cabeza con sesgo e inicialización Xavier.
    - 'mlp': embebidos concatenados y dos capas ocultas ReLU con sesgos.

"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Any, ClassVar

import numpy as np

from groklab.core.errors import DivergenceError
from groklab.core.nn import cross_entropy_loss
from groklab.core.rng import substream
from groklab.tasks.datasets import Dataset

from . import layers
from .spec import Layout, ModelSpec, ModelState

logger = logging.getLogger(__name__)

Params = dict[str, np.ndarray]


class Architecture(ABC):
    """Interfaz común a las arquitecturas"""

    XAVIER: ClassVar[bool] = False

    def __init__(self, spec: ModelSpec):
        self.spec = spec

    @abstractmethod
    def entries(self) -> list[tuple[str, tuple[int, ...]]]:
        """Lista ordenada (nombre, forma) de los parámetros"""

    @abstractmethod
    def forward(self, params: Params, tokens: np.ndarray) -> tuple[np.ndarray, Any]:
        """Devuelve (logits, cinta) para la vuelta"""

    @abstractmethod
    def backward(self, params: Params, tape: Any, dlogits: np.ndarray, grads: Params) -> None:
        """Acumula en 'grads' el gradiente de los parámetros"""

    def layout(self) -> Layout:
        return Layout(self.entries())

    def initial_tensor(self, name: str, shape: tuple[int, ...], rng: Any) -> np.ndarray:
        leaf = name.rsplit(".", 1)[-1]
        if leaf in ("bias", "beta"):
            return np.zeros(shape)
        if leaf == "gamma":
            return np.ones(shape)
        if self.XAVIER and len(shape) == 2:
            bound = np.sqrt(6.0 / (shape[0] + shape[1]))
            return (2.0 * rng.uniform(shape) - 1.0) * bound
        return rng.normal(0.0, self.spec.init_std, shape)


class TransformerStack(Architecture):
    """Transformer de codificador con un número fijo de bloques"""

    NUM_BLOCKS: ClassVar[int] = 1
    BIAS: ClassVar[bool] = True
    NORM: ClassVar[bool] = True
    POSITION: ClassVar[bool] = True
    FINAL_NORM: ClassVar[bool] = False
    HEAD_BIAS: ClassVar[bool] = True

    def block_entries(self, prefix: str) -> list[tuple[str, tuple[int, ...]]]:
        d, f = self.spec.embed_dim, self.spec.ff_dim
        shapes: list[tuple[str, tuple[int, ...]]] = [
            (f"{prefix}.attn.in_proj.weight", (d, 3 * d)),
            (f"{prefix}.attn.in_proj.bias", (3 * d,)),
            (f"{prefix}.attn.out_proj.weight", (d, d)),
            (f"{prefix}.attn.out_proj.bias", (d,)),
            (f"{prefix}.norm1.gamma", (d,)),
            (f"{prefix}.norm1.beta", (d,)),
            (f"{prefix}.ff.linear1.weight", (d, f)),
            (f"{prefix}.ff.linear1.bias", (f,)),
            (f"{prefix}.ff.linear2.weight", (f, d)),
            (f"{prefix}.ff.linear2.bias", (d,)),
            (f"{prefix}.norm2.gamma", (d,)),
            (f"{prefix}.norm2.beta", (d,)),
        ]
        return [
            (name, shape)
            for name, shape in shapes
            if (self.BIAS or not name.endswith(".bias"))
            and (self.NORM or ".norm" not in name)
        ]

    def entries(self) -> list[tuple[str, tuple[int, ...]]]:
        spec = self.spec
        out: list[tuple[str, tuple[int, ...]]] = [
            ("embed.token", (spec.vocab_size, spec.embed_dim))
        ]
        if self.POSITION:
            out.append(("embed.pos", (spec.seq_len, spec.embed_dim)))
        for i in range(self.NUM_BLOCKS):
            out.extend(self.block_entries(f"block{i}"))
        if self.FINAL_NORM:
            out += [("final_norm.gamma", (spec.embed_dim,)), ("final_norm.beta", (spec.embed_dim,))]
        out.append(("head.weight", (spec.embed_dim, spec.num_classes)))
        if self.HEAD_BIAS:
            out.append(("head.bias", (spec.num_classes,)))
        return out

    @property
    def readout(self) -> str:
        return self.spec.readout

    def forward(self, params: Params, tokens: np.ndarray) -> tuple[np.ndarray, Any]:
        tape: dict[str, Any] = {"tokens": tokens, "blocks": []}
        x = layers.embed_forward(params, tokens, self.POSITION)
        for i in range(self.NUM_BLOCKS):
            x, cache = layers.block_forward(
                params, f"block{i}", x, self.spec.heads, self.BIAS, self.NORM
            )
            tape["blocks"].append(cache)
        if self.FINAL_NORM:
            x, tape["final_norm"] = layers.norm_forward(params, "final_norm", x)
        tape["seq"] = x.shape
        pooled = x.mean(axis=1) if self.readout == "mean" else x[:, -1]
        tape["pooled"] = pooled
        logits = layers.linear_forward(
            pooled, params["head.weight"], params["head.bias"] if self.HEAD_BIAS else None
        )
        return logits, tape

    def backward(self, params: Params, tape: Any, dlogits: np.ndarray, grads: Params) -> None:
        dpooled = layers.linear_backward(
            dlogits, tape["pooled"], params["head.weight"], grads, "head", self.HEAD_BIAS
        )
        batch, seq, dim = tape["seq"]
        if self.readout == "mean":
            dx = np.broadcast_to(dpooled[:, None, :] / seq, (batch, seq, dim)).copy()
        else:
            dx = np.zeros((batch, seq, dim))
            dx[:, -1] = dpooled
        if self.FINAL_NORM:
            dx = layers.norm_backward(dx, "final_norm", tape["final_norm"], grads)
        for i in reversed(range(self.NUM_BLOCKS)):
            dx = layers.block_backward(
                dx,
                params,
                f"block{i}",
                tape["blocks"][i],
                self.spec.heads,
                self.BIAS,
                self.NORM,
                grads,
            )
        layers.embed_backward(dx, tape["tokens"], grads, self.POSITION)


class Transformer1(TransformerStack):
    pass


class Transformer2Paper(TransformerStack):
    NUM_BLOCKS = 2
    BIAS = False
    NORM = False
    HEAD_BIAS = False

    @property
    def readout(self) -> str:
        return "mean"


class Transformer2Alt(TransformerStack):
    NUM_BLOCKS = 2
    POSITION = False
    FINAL_NORM = True
    XAVIER = True

    @property
    def readout(self) -> str:
        return "mean"


class MLP(Architecture):
    """Perceptrón con dos capas ocultas sobre los embebidos concatenados"""

    def entries(self) -> list[tuple[str, tuple[int, ...]]]:
        spec = self.spec
        width = spec.seq_len * spec.embed_dim
        return [
            ("embed.token", (spec.vocab_size, spec.embed_dim)),
            ("mlp.linear1.weight", (width, spec.hidden_dim)),
            ("mlp.linear1.bias", (spec.hidden_dim,)),
            ("mlp.linear2.weight", (spec.hidden_dim, spec.hidden_dim)),
            ("mlp.linear2.bias", (spec.hidden_dim,)),
            ("head.weight", (spec.hidden_dim, spec.num_classes)),
            ("head.bias", (spec.num_classes,)),
        ]

    def forward(self, params: Params, tokens: np.ndarray) -> tuple[np.ndarray, Any]:
        emb = params["embed.token"][tokens].reshape(tokens.shape[0], -1)
        pre1 = layers.linear_forward(emb, params["mlp.linear1.weight"], params["mlp.linear1.bias"])
        h1 = np.maximum(pre1, 0.0)
        pre2 = layers.linear_forward(h1, params["mlp.linear2.weight"], params["mlp.linear2.bias"])
        h2 = np.maximum(pre2, 0.0)
        logits = layers.linear_forward(h2, params["head.weight"], params["head.bias"])
        return logits, {"tokens": tokens, "emb": emb, "pre1": pre1, "h1": h1, "pre2": pre2, "h2": h2}

    def backward(self, params: Params, tape: Any, dlogits: np.ndarray, grads: Params) -> None:
        dh2 = layers.linear_backward(dlogits, tape["h2"], params["head.weight"], grads, "head", True)
        dpre2 = dh2 * (tape["pre2"] > 0.0)
        dh1 = layers.linear_backward(
            dpre2, tape["h1"], params["mlp.linear2.weight"], grads, "mlp.linear2", True
        )
        dpre1 = dh1 * (tape["pre1"] > 0.0)
        demb = layers.linear_backward(
            dpre1, tape["emb"], params["mlp.linear1.weight"], grads, "mlp.linear1", True
        )
        tokens = tape["tokens"]
        dim = self.spec.embed_dim
        np.add.at(grads["embed.token"], tokens.ravel(), demb.reshape(-1, dim))


ARCHITECTURES: dict[str, type[Architecture]] = {
    "transformer1": Transformer1,
    "transformer2_paper": Transformer2Paper,
    "transformer2_alt": Transformer2Alt,
    "mlp": MLP,
}


def get_architecture(spec: ModelSpec) -> Architecture:
    try:
        return ARCHITECTURES[spec.arch](spec)
    except KeyError:
        raise ValueError(f"[Models] Arquitectura desconocida: {spec.arch!r}") from None


def parameter_count(spec: ModelSpec) -> int:
    """Número total de parámetros entrenables"""
    return get_architecture(spec).layout().size


def init_model(spec: ModelSpec, seed: int) -> ModelState:
    """Inicializa θ de forma determinista a partir de la semilla

    Los tensores se generan en el orden del 'Layout' con una subcorriente
    propia, independiente de la de datos.

    """
    arch = get_architecture(spec)
    layout = arch.layout()
    rng = substream(seed, "init")
    tensors = {name: arch.initial_tensor(name, shape, rng) for name, shape in layout.entries}
    logger.debug("Modelo %s inicializado con %d parámetros", spec.arch, layout.size)
    return ModelState(spec, layout, layout.flatten(tensors))


def _tokens(state: ModelState, inputs: np.ndarray) -> np.ndarray:
    tokens = np.asarray(inputs, dtype=np.int64)
    if tokens.ndim != 2 or tokens.shape[1] != state.spec.seq_len:
        raise ValueError(
            f"[Models] Entrada de forma {tokens.shape}, se esperaba (n, {state.spec.seq_len})"
        )
    if tokens.size and (tokens.min() < 0 or tokens.max() >= state.spec.vocab_size):
        raise ValueError(f"[Models] Token fuera del vocabulario [0, {state.spec.vocab_size})")
    return tokens


def forward(state: ModelState, inputs: np.ndarray) -> np.ndarray:
    """Logits de forma (n, num_classes)"""
    arch = get_architecture(state.spec)
    logits, _ = arch.forward(state.tensors(), _tokens(state, inputs))
    return logits


def backprop(state: ModelState, inputs: np.ndarray, dlogits_fn: Any) -> tuple[Any, np.ndarray]:
    """Ida y vuelta genéricas

    'dlogits_fn' recibe los logits y devuelve (valor, dlogits). Devuelve el
    valor y el gradiente plano respecto a θ.

    """
    arch = get_architecture(state.spec)
    params = state.tensors()
    logits, tape = arch.forward(params, _tokens(state, inputs))
    value, dlogits = dlogits_fn(logits)
    grad = np.zeros_like(state.params)
    arch.backward(params, tape, dlogits, state.layout.unflatten(grad))
    return value, grad


def loss_and_grad(
    state: ModelState, batch: Dataset, *, step: int | None = None
) -> tuple[float, np.ndarray]:
    """Entropía cruzada media sobre 'batch' y su gradiente respecto a θ

    Lanza 'DivergenceError' si la pérdida o el gradiente no son finitos.

    """
    loss, grad = backprop(
        state, batch.inputs, lambda logits: cross_entropy_loss(logits, batch.labels)
    )
    if not np.isfinite(loss) or not np.all(np.isfinite(grad)):
        raise DivergenceError("[Models] Pérdida o gradiente no finitos", step=step)
    return loss, grad
