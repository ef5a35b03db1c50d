# Python 3.10.11
# Creado: 15/10/2026
"""Cliente básico para groklab"""

from .cli import GrokLabCLI

__all__ = ["GrokLabCLI"]
