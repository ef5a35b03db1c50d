# Python 3.10.11
# Creado: 21/09/2026
"""Generadores aleatorios deterministas

Todo el azar del laboratorio sale de generadores Philox (basados en contador,
64 bits) construidos a partir de un 'SeedSequence'. Cada propósito (datos,
inicialización, bootstrap...) tiene su propio subflujo, identificado por una
tupla de etiquetas, de forma que añadir sorteos en un propósito nunca altera
los de otro.

"""

from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Any

import numpy as np


def _label_key(label: int | str) -> int:
    """Convierte una etiqueta en un entero estable entre plataformas

    El tipo forma parte de la clave, así que 5 y "5" dan subflujos distintos.

    """
    if isinstance(label, int) and label < 0:
        raise ValueError(f"[RNG] Etiqueta negativa no admitida: {label}")
    return zlib.crc32(f"{type(label).__name__}:{label}".encode("utf-8"))



@dataclass
class RngState:
    """Generador con semilla conocida

    'seed' es la semilla raíz y 'labels' la ruta del subflujo. El generador
    numpy subyacente está en 'generator'; nunca se comparte entre tareas
    concurrentes.

    """

    seed: int
    labels: tuple[int | str, ...] = ()
    generator: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.seed < 0:
            raise ValueError(f"[RNG] La semilla debe ser no negativa: {self.seed}")
        spawn_key = tuple(_label_key(label) for label in self.labels)
        sequence = np.random.SeedSequence(self.seed, spawn_key=spawn_key)
        self.generator = np.random.Generator(np.random.Philox(sequence))

    @property
    def state(self) -> dict[str, Any]:
        """Estado interno del contador"""
        return self.generator.bit_generator.state

    def uniform(self, size: int | tuple[int, ...] | None = None) -> np.ndarray:
        """Sorteos uniformes en [0, 1)"""
        return self.generator.random(size)

    def normal(
        self, loc: float = 0.0, scale: float = 1.0, size: Any = None
    ) -> np.ndarray:
        return self.generator.normal(loc, scale, size)

    def integers(self, low: int, high: int | None = None, size: Any = None) -> Any:
        return self.generator.integers(low, high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        """Barajado de Fisher-Yates de range(n)"""
        return self.generator.permutation(n)

    def choice(self, n: int, size: int, *, replace: bool = True) -> np.ndarray:
        return self.generator.choice(n, size=size, replace=replace)


def seeded_rng(seed: int) -> RngState:
    """Flujo raíz para la semilla 'seed'"""
    return RngState(seed)


def substream(seed: int, *labels: int | str) -> RngState:
    """Subflujo independiente de la semilla 'seed' para las etiquetas dadas

    Por ejemplo, 'substream(42, "data")' baraja los datos y
    'substream(42, "init")' inicializa el modelo de la misma ejecución.

    """
    return RngState(seed, tuple(labels))
