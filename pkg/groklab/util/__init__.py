# Python 3.10.11
# Creado: 15/07/2024
"""Utilidades generales"""

from .util import (
    atomic_write_text,
    read_schema,
    read_versioned_toml,
    write_versioned_text,
    write_versioned_toml,
)

__all__ = [
    "atomic_write_text",
    "read_schema",
    "read_versioned_toml",
    "write_versioned_text",
    "write_versioned_toml",
]
