# Python 3.10.11
# Creado: 28/09/2026
"""Registros de una ejecución: trayectoria y resumen

La trayectoria es texto en columnas (esquema en la primera línea, cabecera
con los nombres de columna y una fila por paso registrado, con '%.17g' para
que los flotantes vuelvan bit a bit). El resumen es un documento TOML cuyas
claves son los campos de 'RunSummary'; los valores ausentes se omiten.

"""

from __future__ import annotations

import io
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any, ClassVar

import numpy as np

from groklab.util import read_versioned_toml, write_versioned_text, write_versioned_toml

TRAJECTORY_SCHEMA = "groklab-trajectory/1"
SUMMARY_SCHEMA = "groklab-summary/1"


@dataclass
class TrajectoryLog:
    """Filas registradas de una ejecución

    El coseno con la referencia vale NaN antes de T_mem. Los pasos son
    estrictamente crecientes y V es siempre positivo.

    """

    COLUMNS: ClassVar[tuple[str, ...]] = (
        "step",
        "V",
        "train_acc",
        "val_acc",
        "train_loss",
        "val_loss",
        "wd_coeff",
        "cos_to_ref",
    )

    rows: list[tuple[float, ...]] = field(default_factory=list)
    _array: np.ndarray | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        rows, self.rows = self.rows, []
        for row in rows:
            self.append(*row)

    def append(
        self,
        step: float,
        V: float,
        train_acc: float,
        val_acc: float,
        train_loss: float,
        val_loss: float,
        wd_coeff: float,
        cos_to_ref: float = float("nan"),
    ) -> None:
        if self.rows and step <= self.rows[-1][0]:
            raise ValueError(
                f"[Trajectory] Paso {step} no es mayor que el anterior ({self.rows[-1][0]})"
            )
        if not V > 0.0:
            raise ValueError(f"[Trajectory] V debe ser positivo en el paso {step}: {V}")
        self.rows.append(
            tuple(
                float(x)
                for x in (step, V, train_acc, val_acc, train_loss, val_loss, wd_coeff, cos_to_ref)
            )
        )
        self._array = None

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def array(self) -> np.ndarray:
        if self._array is None:
            self._array = np.array(self.rows, dtype=np.float64).reshape(-1, len(self.COLUMNS))
        return self._array

    def column(self, name: str) -> np.ndarray:
        try:
            return self.array[:, self.COLUMNS.index(name)]
        except ValueError:
            raise KeyError(f"[Trajectory] Columna desconocida: {name!r}") from None

    @property
    def step(self) -> np.ndarray:
        return self.column("step")

    @property
    def V(self) -> np.ndarray:
        return self.column("V")

    @property
    def train_acc(self) -> np.ndarray:
        return self.column("train_acc")

    @property
    def val_acc(self) -> np.ndarray:
        return self.column("val_acc")

    @property
    def train_loss(self) -> np.ndarray:
        return self.column("train_loss")

    @property
    def wd_coeff(self) -> np.ndarray:
        return self.column("wd_coeff")

    @property
    def cos_to_ref(self) -> np.ndarray:
        return self.column("cos_to_ref")

    @property
    def alpha(self) -> np.ndarray:
        """α_t en grados (NaN antes de T_mem)"""
        return np.degrees(np.arccos(np.clip(self.cos_to_ref, -1.0, 1.0)))

    def index_of(self, step: float) -> int:
        """Índice de la fila con ese paso exacto"""
        hits = np.flatnonzero(self.step == step)
        if not hits.size:
            raise KeyError(f"[Trajectory] No hay fila registrada en el paso {step}")
        return int(hits[0])

    def window(self, start: float, end: float) -> np.ndarray:
        """Máscara de filas con start <= paso <= end"""
        return (self.step >= start) & (self.step <= end)

    @classmethod
    def from_array(cls, array: np.ndarray) -> TrajectoryLog:
        return cls([tuple(row) for row in np.atleast_2d(array)])


@dataclass
class RunSummary:
    """Resumen de una ejecución

    Los campos de eventos (T_*) y de norma (V_*) son None si no se alcanzan.
    La segunda mitad la rellena el análisis por ejecución.

    """

    run_id: str
    cell_id: str
    seed: int
    arch: str
    task: str
    p: int
    eta: float
    lam: float
    steps_run: int = 0
    T_mem: int | None = None
    T_mem_loss: int | None = None
    T_grok_99: int | None = None
    T_grok_95: int | None = None
    V_mem: float | None = None
    V_post: float | None = None
    V_post_method: str | None = None
    V_final: float | None = None
    grokked: bool = False
    alpha_final: float | None = None
    early_stopped: bool = False
    diverged: bool = False
    diverged_step: int | None = None
    intervention: str = "none"
    intervention_step: int | None = None
    norm_rel_std: float | None = None
    norm_max_rel_dev: float | None = None
    regime: str | None = None
    # Análisis
    kappa_ll: float | None = None
    kappa_r2: float | None = None
    kappa_ll_soft95: float | None = None
    kappa_r2_soft95: float | None = None
    kosson_r: float | None = None
    kosson_v_inf: float | None = None
    kosson_kappa: float | None = None
    kosson_r2: float | None = None
    kosson_flagged: bool | None = None
    f_window: float | None = None
    tau_V: float | None = None
    tau_alpha: float | None = None
    tau_ratio: float | None = None
    tau_alpha_flag: str | None = None
    V_star: float | None = None
    alpha_star: float | None = None
    alpha_rate: float | None = None
    rho: float | None = None
    rho_drop: float | None = None
    V_min_post: float | None = None
    V_max_post: float | None = None
    regrowth: float | None = None
    extra_delay_ratio: float | None = None
    overshoot_class: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def delay(self) -> int | None:
        """T_grok_99 - T_mem"""
        if self.T_mem is None or self.T_grok_99 is None:
            return None
        return self.T_grok_99 - self.T_mem

    @property
    def delay_95(self) -> int | None:
        if self.T_mem is None or self.T_grok_95 is None:
            return None
        return self.T_grok_95 - self.T_mem

    def qualifies(self, r_squared: float = 0.9) -> bool:
        """La ejecución entra en las estadísticas de κ"""
        return (
            self.grokked
            and self.kappa_ll is not None
            and self.kappa_r2 is not None
            and self.kappa_r2 > r_squared
        )

    def serialize(self) -> dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> RunSummary:
        known = {f.name for f in fields(cls)}
        return cls(**{key: value for key, value in data.items() if key in known})


def write_trajectory(log: TrajectoryLog, path: Path) -> Path:
    """Escribe la trayectoria en texto de columnas"""
    buffer = io.StringIO()
    np.savetxt(buffer, log.array, fmt="%.17g")
    lines = [" ".join(TrajectoryLog.COLUMNS)] + buffer.getvalue().splitlines()
    return write_versioned_text(Path(path), TRAJECTORY_SCHEMA, lines)


def read_trajectory(path: Path) -> TrajectoryLog:
    """Lee una trayectoria; cualquier corrupción se notifica como ValueError"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"[Trajectory] No existe el archivo {path}")
    with open(path, encoding="utf-8") as fh:
        schema = fh.readline().strip().lstrip("#").strip()
        header = fh.readline().split()
        body = fh.read()
    if schema != TRAJECTORY_SCHEMA:
        raise ValueError(f"[Trajectory] Esquema '{schema}' no soportado en {path}")
    if tuple(header) != TrajectoryLog.COLUMNS:
        raise ValueError(f"[Trajectory] Cabecera inesperada en {path}: {header}")
    try:
        array = np.loadtxt(io.StringIO(body), dtype=np.float64, ndmin=2)
    except ValueError as exc:
        raise ValueError(f"[Trajectory] Archivo corrupto {path}: {exc}") from None
    if array.size and array.shape[1] != len(TrajectoryLog.COLUMNS):
        raise ValueError(f"[Trajectory] Número de columnas incorrecto en {path}")
    return TrajectoryLog.from_array(array) if array.size else TrajectoryLog()


def write_summary(summary: RunSummary, path: Path) -> Path:
    return write_versioned_toml(Path(path), SUMMARY_SCHEMA, summary.serialize())


def read_summary(path: Path) -> RunSummary:
    data = read_versioned_toml(Path(path), SUMMARY_SCHEMA)
    data.pop("schema", None)
    try:
        return RunSummary.from_dict(data)
    except TypeError as exc:
        raise ValueError(f"[Summary] Resumen incompleto en {path}: {exc}") from None
