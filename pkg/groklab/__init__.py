# Python 3.10.11
# Creado: 21/09/2026
"""groklab: Laboratorio para la predicción cuantitativa del retraso de grokking."""

from .api import GrokLab

__version__ = "0.1.0"
__author__ = "Ángel Moreno Prieto"
__all__ = ["GrokLab"]
