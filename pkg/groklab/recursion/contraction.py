# Python 3.10.11
# Creado: 08/10/2026
"""Recursión de contracción de la norma

V_{t+1} = (1 - ηλ)²·V_t + R_t, con |R_t| <= b·V_t y
b = 2·c1·η²λ + c1²·η⁴λ². El resto se elige según una política:

    - 'zero': R_t = 0.
    - 'max_positive' / 'max_negative': R_t = ±b·V_t, los extremos de la cota.
    - 'random_sign': R_t = u·b·V_t con u uniforme en [-1, 1).

Como el resto es proporcional a V_t, la serie completa es un producto
acumulado de multiplicadores por paso.

"""

from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Any, ClassVar, Literal, Sequence

import numpy as np

from groklab.core.rng import substream

logger = logging.getLogger(__name__)

Policy = Literal["zero", "max_positive", "max_negative", "random_sign"]


@dataclass(frozen=True)
class RecursionConfig:
    POLICIES: ClassVar[tuple[str, ...]] = ("zero", "max_positive", "max_negative", "random_sign")

    V0: float
    eta: float
    lam: float
    c1: float = 0.0
    policy: Policy = "zero"
    horizon: int = 10_000
    seed: int = 0

    def __post_init__(self) -> None:
        if self.V0 <= 0.0:
            raise ValueError("[Recursion] V0 debe ser positivo")
        if self.eta <= 0.0 or self.lam <= 0.0:
            raise ValueError("[Recursion] η y λ deben ser positivos")
        if self.eta * self.lam >= 1.0:
            raise ValueError(f"[Recursion] ηλ = {self.eta * self.lam:g} debe ser < 1")
        if not 0.0 <= self.c1 < 1.0:
            raise ValueError(f"[Recursion] c1 debe estar en [0, 1): {self.c1}")
        if self.policy not in self.POLICIES:
            raise ValueError(f"[Recursion] Política de resto desconocida: {self.policy!r}")
        if self.horizon < 0:
            raise ValueError("[Recursion] El horizonte no puede ser negativo")

    @property
    def contraction(self) -> float:
        return (1.0 - self.eta * self.lam) ** 2

    @property
    def remainder_bound(self) -> float:
        """b tal que |R_t| <= b·V_t"""
        e, l, c = self.eta, self.lam, self.c1
        return 2.0 * c * e * e * l + c * c * e**4 * l * l


def remainder_signs(config: RecursionConfig) -> np.ndarray:
    """Fracción con signo de la cota que usa cada paso"""
    T = config.horizon
    if config.policy == "zero":
        return np.zeros(T)
    if config.policy == "max_positive":
        return np.ones(T)
    if config.policy == "max_negative":
        return -np.ones(T)
    return 2.0 * substream(config.seed, "remainder").uniform(T) - 1.0


def simulate_contraction(config: RecursionConfig) -> np.ndarray:
    """Serie V_0..V_T de la recursión"""
    steps = config.contraction + remainder_signs(config) * config.remainder_bound
    return config.V0 * np.concatenate([[1.0], np.cumprod(steps)])


def crossing_time(series: Sequence[float], V_target: float) -> int | None:
    """Primer índice con V <= V_target, o None"""
    V = np.asarray(series, dtype=np.float64)
    if V_target > V[0]:
        raise ValueError("[Recursion] V_target no puede superar V0")
    hits = np.flatnonzero(V <= V_target)
    return int(hits[0]) if hits.size else None


def ideal_crossing(V0: float, V_target: float, eta: float, lam: float) -> float:
    """ln(V0 / V_target)/(2ηλ)"""
    return math.log(V0 / V_target) / (2.0 * eta * lam)


@dataclass
class NecessityVerdict:
    delay: int | None
    max_V: float
    holds: bool
    certified_no_delay: bool

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


def necessity_check(V_mem: float, V_post: float, config: RecursionConfig) -> NecessityVerdict:
    """Simula desde V_mem y comprueba la dicotomía

    Si V_mem <= V_post la serie nunca supera V_post y no hay retraso. Si
    V_mem > V_post el retraso es el tiempo de cruce de V_post.

    """
    sim = simulate_contraction(
        RecursionConfig(V_mem, config.eta, config.lam, config.c1, config.policy, config.horizon, config.seed)
    )
    max_V = float(sim.max())
    if V_mem <= V_post:
        no_delay = max_V <= V_post
        return NecessityVerdict(0, max_V, no_delay, no_delay)
    delay = crossing_time(sim, V_post)
    return NecessityVerdict(delay, max_V, delay is not None and delay > 0, False)


@dataclass
class BoundGrid:
    """Rejilla de verificación de cotas"""

    etas: list[float] = field(default_factory=lambda: [1e-4, 1e-3, 1e-2])
    lams: list[float] = field(default_factory=lambda: [0.1, 1.0])
    c1s: list[float] = field(default_factory=lambda: [0.0, 0.5, 0.9])
    policies: list[str] = field(default_factory=lambda: list(RecursionConfig.POLICIES))
    V0: float = 1e4
    target_log_drop: float = 2.0
    K_max: float = 10.0
    seed: int = 0

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> BoundGrid:
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known - {"schema"}
        if unknown:
            raise KeyError(f"[BoundGrid] Claves desconocidas: {', '.join(sorted(unknown))}")
        grid = cls(**{k: v for k, v in data.items() if k in known})
        for eta, lam in itertools.product(grid.etas, grid.lams):
            if eta * lam >= 1.0:
                raise ValueError(f"[BoundGrid] ηλ = {eta * lam:g} debe ser < 1 (η={eta}, λ={lam})")
        return grid

    def points(self) -> list[tuple[float, float, float, str]]:
        return list(itertools.product(self.etas, self.lams, self.c1s, self.policies))


@dataclass
class BoundPoint:
    eta: float
    lam: float
    c1: float
    policy: str
    crossing: int
    ideal: float
    rel_dev: float
    K: float


@dataclass
class BoundReport:
    points: list[BoundPoint]
    K_fit: float
    K_max: float
    passed: bool
    inverse_spread_c0: float | None
    inverse_spread_cmax: float | None
    runtime_s: float

    def serialize(self) -> dict[str, Any]:
        return {
            "n_points": len(self.points),
            "K_fit": self.K_fit,
            "K_max": self.K_max,
            "passed": self.passed,
            "inverse_spread_c0": self.inverse_spread_c0,
            "inverse_spread_cmax": self.inverse_spread_cmax,
            "runtime_s": self.runtime_s,
            "points": [asdict(p) for p in self.points],
        }


def _spread(values: list[float]) -> float | None:
    if not values:
        return None
    arr = np.asarray(values)
    return float((arr.max() - arr.min()) / arr.mean())


def verify_bounds(grid: BoundGrid | None = None) -> BoundReport:
    """Comprueba las cotas superior e inferior del tiempo de cruce en la rejilla

    Para cada punto se mide T(V0·e^-d) y se compara con ln(V0/V_target)/(2ηλ);
    K es la mayor desviación relativa dividida por η. También se mide la
    dispersión relativa de T·ηλ con c1 = 0 y con el mayor c1 de la rejilla.

    """
    grid = grid or BoundGrid()
    start = time.perf_counter()
    target = grid.V0 * math.exp(-grid.target_log_drop)
    points = []
    for eta, lam, c1, policy in grid.points():
        ideal = ideal_crossing(grid.V0, target, eta, lam)
        config = RecursionConfig(grid.V0, eta, lam, c1, policy, math.ceil(1.2 * ideal) + 10, grid.seed)  # type: ignore[arg-type]
        T = crossing_time(simulate_contraction(config), target)
        if T is None:
            raise ValueError(f"[Bounds] Sin cruce en η={eta}, λ={lam}, c1={c1}, {policy}")
        rel = T / ideal - 1.0
        points.append(BoundPoint(eta, lam, c1, policy, T, ideal, rel, abs(rel) / eta))
    K_fit = max(p.K for p in points)
    c_top = max(grid.c1s)
    report = BoundReport(
        points=points,
        K_fit=K_fit,
        K_max=grid.K_max,
        passed=K_fit <= grid.K_max,
        inverse_spread_c0=_spread([p.crossing * p.eta * p.lam for p in points if p.c1 == 0.0]),
        inverse_spread_cmax=_spread([p.crossing * p.eta * p.lam for p in points if p.c1 == c_top]),
        runtime_s=time.perf_counter() - start,
    )
    logger.info("Cotas verificadas en %d puntos: K = %.3g (%.2f s)", len(points), K_fit, report.runtime_s)
    return report
