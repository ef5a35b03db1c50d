# Python 3.10.11
# Creado: 23/09/2026
"""Generación determinista de tareas algorítmicas"""

from .datasets import (
    Dataset,
    dump_dataset,
    gen_modular,
    gen_sparse_parity,
    is_prime,
    train_size,
)

__all__ = [
    "Dataset",
    "dump_dataset",
    "gen_modular",
    "gen_sparse_parity",
    "is_prime",
    "train_size",
]
