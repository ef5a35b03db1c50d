# Python 3.10.11
# Creado: 21/09/2026
"""Excepciones propias del laboratorio"""


class DivergenceError(ValueError):
    """Pérdida o gradiente no finitos durante el entrenamiento

    Guarda el paso en el que se detectó ('step'), para que el bucle de
    entrenamiento pueda marcar la ejecución como divergida.

    """

    def __init__(self, message: str, step: int | None = None) -> None:
        super().__init__(message)
        self.step = step
