# Python 3.10.11
# Creado: 23/09/2026
"""Conjuntos de datos para aritmética modular y paridad dispersa

Aritmética modular: el dominio completo de p² pares (a, b) se baraja con el
subflujo "data" de la semilla y los primeros ⌊0.4·p²⌋ forman el conjunto de
entrenamiento; el resto, el de validación. Cada ejemplo es la secuencia de
tokens [a, b] (posiciones 0 y 1).

Paridad dispersa: 'num_samples' vectores de n bits uniformes, etiqueta igual
al XOR de un subconjunto fijo S de k bits (sorteado una sola vez con el
subflujo "parity-subset"), mitad entrenamiento y mitad validación. Los bits
son tokens de un vocabulario de tamaño 2.

"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal

import numpy as np

from groklab.core import substream
from groklab.util import write_versioned_text

TRAIN_FRACTION_NUM, TRAIN_FRACTION_DEN = 4, 10
DATASET_SCHEMA = "groklab-dataset/1"


@dataclass(frozen=True, eq=False)
class Dataset:
    """Conjunto de ejemplos tokenizados e inmutable

    'inputs' tiene forma (n, seq_len) con enteros menores que 'vocab_size';
    'labels' forma (n,) con enteros menores que 'num_classes'. 'meta' guarda
    la descripción de la tarea (p y operación, o n, k y el subconjunto S).

    """

    inputs: np.ndarray
    labels: np.ndarray
    num_classes: int
    vocab_size: int
    split_tag: Literal["train", "val"]
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        inputs = np.ascontiguousarray(self.inputs, dtype=np.int64)
        labels = np.ascontiguousarray(self.labels, dtype=np.int64)
        if inputs.ndim != 2 or labels.shape != (inputs.shape[0],):
            raise ValueError("[Dataset] Formas incompatibles entre entradas y etiquetas")
        inputs.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return self.labels.shape[0]

    @property
    def seq_len(self) -> int:
        return self.inputs.shape[1]

    def subset(self, indices: np.ndarray) -> Dataset:
        """Devuelve una porción del conjunto con la misma descripción"""
        return Dataset(
            self.inputs[indices],
            self.labels[indices],
            self.num_classes,
            self.vocab_size,
            self.split_tag,
            dict(self.meta),
        )


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def train_size(p: int) -> int:
    """⌊0.4·p²⌋ calculado con aritmética entera"""
    return (TRAIN_FRACTION_NUM * p * p) // TRAIN_FRACTION_DEN


def gen_modular(
    p: int, op: Literal["add", "mult"], seed: int
) -> tuple[Dataset, Dataset]:
    """Genera la partición entrenamiento/validación de (a op b) mod p"""
    if p < 5 or not is_prime(p):
        raise ValueError(f"[Tasks] p debe ser un primo mayor o igual que 5: {p}")
    if op not in ("add", "mult"):
        raise ValueError(f"[Tasks] Operación modular desconocida: {op!r}")
    a, b = np.divmod(np.arange(p * p, dtype=np.int64), p)
    labels = (a + b) % p if op == "add" else (a * b) % p
    inputs = np.stack([a, b], axis=1)
    order = substream(seed, "data").permutation(p * p)
    cut = train_size(p)
    meta = {"task": "modular", "op": op, "p": p, "seed": seed}
    train = Dataset(inputs[order[:cut]], labels[order[:cut]], p, p, "train", meta)
    val = Dataset(inputs[order[cut:]], labels[order[cut:]], p, p, "val", dict(meta))
    return train, val


def gen_sparse_parity(
    n: int, k: int, num_samples: int, seed: int
) -> tuple[Dataset, Dataset]:
    """Genera la partición 50/50 de paridad dispersa (n bits, k relevantes)"""
    if not 1 <= k <= n:
        raise ValueError(f"[Tasks] Se requiere 1 <= k <= n (k={k}, n={n})")
    if num_samples < 2:
        raise ValueError(f"[Tasks] Se necesitan al menos 2 muestras: {num_samples}")
    subset = np.sort(substream(seed, "parity-subset").choice(n, k, replace=False))
    bits = substream(seed, "data").integers(0, 2, size=(num_samples, n))
    labels = bits[:, subset].sum(axis=1) % 2
    cut = num_samples // 2
    meta = {
        "task": "parity",
        "n": n,
        "k": k,
        "subset": [int(i) for i in subset],
        "seed": seed,
    }
    train = Dataset(bits[:cut], labels[:cut], 2, 2, "train", meta)
    val = Dataset(bits[cut:], labels[cut:], 2, 2, "val", dict(meta))
    return train, val


def dump_dataset(dataset: Dataset, path: Path) -> Path:
    """Vuelca el conjunto como texto de auditoría, un ejemplo por línea

    Modular: "a b label". Paridad: la cadena de bits seguida de la etiqueta.

    """
    if dataset.meta.get("task") == "parity":
        lines = [
            "".join(str(int(bit)) for bit in row) + f" {int(label)}"
            for row, label in zip(dataset.inputs, dataset.labels)
        ]
    else:
        lines = [
            " ".join(str(int(token)) for token in row) + f" {int(label)}"
            for row, label in zip(dataset.inputs, dataset.labels)
        ]
    return write_versioned_text(path, DATASET_SCHEMA, lines)
