# Python 3.10.11
# Creado: 02/10/2026
"""Ajustes sobre trayectorias

    - κ_LL: recta por mínimos cuadrados de log V_t en la ventana posterior a
      la memorización, normalizada por la tasa limpia 2ηλ.
    - Forma de Kosson: V_t = V_inf + A·exp(-r·(t - t0)), con barrido
      logarítmico en r, resolución lineal cerrada de (V_inf, A) y refinado
      acotado alrededor del mejor punto.
    - Escalas de tiempo τ_V (de la recta) y τ_α (saturación exponencial de
      α_t hacia su valor final).
    - Cruce de val_acc por un umbral, interpolado linealmente.

"""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass
from typing import Any, Callable, Literal

import numpy as np
from scipy.optimize import minimize_scalar

from groklab.core.fitting import LineFit, least_squares_line
from groklab.trainer.events import detect_T_grok, detect_T_mem
from groklab.trainer.records import TrajectoryLog

logger = logging.getLogger(__name__)

MIN_KAPPA_POINTS = 5
MIN_KOSSON_POINTS = 8
SCAN_POINTS = 240
# Rango del barrido en unidades de r·(duración de la ventana)
SCAN_RANGE = (1e-2, 1e2)
FLAT_TOLERANCE = 1e-9
NO_MOTION_DEGREES = 1.0


@dataclass
class KappaFit:
    kappa_ll: float
    slope: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    eta: float
    lam: float
    n_points: int
    rule: str = "standard"

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class KossonFit:
    v_inf: float
    amplitude: float
    r_kos: float
    r_squared: float
    t0: float
    window: tuple[float, float]
    n_points: int
    kappa_kos: float | None = None
    flagged: bool = False
    flag: str | None = None

    def predict(self, t: np.ndarray) -> np.ndarray:
        return self.v_inf + self.amplitude * np.exp(-self.r_kos * (np.asarray(t) - self.t0))

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class Timescales:
    tau_V: float | None
    tau_alpha: float | None
    ratio: float | None
    alpha_final: float | None = None
    flag: str | None = None

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


@dataclass
class Crossing:
    step: float
    V_star: float
    alpha_star: float | None
    alpha_rate: float | None = None
    interpolated: bool = True

    def serialize(self) -> dict[str, Any]:
        return asdict(self)


def default_window(
    log: TrajectoryLog,
    window_rule: Literal["standard", "soft95"] = "standard",
    margin: float = 100,
) -> tuple[float, float]:
    """[T_mem + margin, T_grok - margin], con T_grok al 99% o al 95%"""
    T_mem = detect_T_mem(log)
    if T_mem is None:
        raise ValueError("[KappaFit] No hay memorización: la ventana no está definida")
    if window_rule not in ("standard", "soft95"):
        raise ValueError(f"[KappaFit] Regla de ventana desconocida: {window_rule!r}")
    threshold = 0.99 if window_rule == "standard" else 0.95
    T_grok = detect_T_grok(log, threshold, not_before=T_mem)
    if T_grok is None:
        raise ValueError(f"[KappaFit] No hay grokking al {threshold:.0%}: la ventana no está definida")
    return T_mem + margin, T_grok - margin


def fit_kappa_series(
    t: np.ndarray, V: np.ndarray, eta: float, lam: float
) -> tuple[LineFit, float]:
    """Recta de log V frente a t y κ_LL = |pendiente|/(2ηλ)"""
    if eta <= 0.0 or lam <= 0.0:
        raise ValueError("[KappaFit] κ_LL exige η > 0 y λ > 0")
    V = np.asarray(V, dtype=np.float64)
    if np.any(V <= 0.0):
        raise ValueError("[KappaFit] V debe ser positivo")
    line = least_squares_line(np.asarray(t, dtype=np.float64), np.log(V))
    return line, abs(line.slope) / (2.0 * eta * lam)


def fit_kappa_loglinear(
    log: TrajectoryLog,
    eta: float,
    lam: float,
    *,
    window_rule: Literal["standard", "soft95"] = "standard",
    margin: float = 100,
    window: tuple[float, float] | None = None,
) -> KappaFit:
    """κ_LL en la ventana posterior a la memorización"""
    if window is None:
        window = default_window(log, window_rule, margin)
    mask = log.window(*window)
    n = int(mask.sum())
    if n < MIN_KAPPA_POINTS:
        raise ValueError(
            f"[KappaFit] Ventana [{window[0]:g}, {window[1]:g}] demasiado corta: "
            f"{n} puntos (mínimo {MIN_KAPPA_POINTS})"
        )
    line, kappa = fit_kappa_series(log.step[mask], log.V[mask], eta, lam)
    return KappaFit(
        kappa_ll=kappa,
        slope=line.slope,
        intercept=line.intercept,
        r_squared=line.r_squared,
        window=(float(window[0]), float(window[1])),
        eta=eta,
        lam=lam,
        n_points=n,
        rule=window_rule,
    )


def scan_and_refine(
    objective: Callable[[float], float], span: float
) -> tuple[float, float, str | None]:
    """Minimiza 'objective(r)' con barrido logarítmico y refinado acotado

    Devuelve (r, objetivo, aviso). El aviso es 'flat' si el objetivo apenas
    varía en el barrido y 'edge' si el mínimo cae en un extremo.

    """
    grid = np.geomspace(SCAN_RANGE[0] / span, SCAN_RANGE[1] / span, SCAN_POINTS)
    values = np.array([objective(r) for r in grid])
    best = int(np.nanargmin(values))
    top = np.nanmax(values)
    if top <= 0.0 or (top - values[best]) <= FLAT_TOLERANCE * top:
        return float(grid[best]), float(values[best]), "flat"
    if best in (0, len(grid) - 1):
        return float(grid[best]), float(values[best]), "edge"
    lo, hi = grid[best - 1], grid[best + 1]
    result = minimize_scalar(
        objective, bounds=(lo, hi), method="bounded", options={"xatol": grid[best] * 1e-10}
    )
    if result.fun <= values[best]:
        return float(result.x), float(result.fun), None
    return float(grid[best]), float(values[best]), None


def _kosson_linear(tau: np.ndarray, V: np.ndarray, r: float) -> tuple[float, float, float]:
    """(V_inf, A, SSE) óptimos para una tasa r fija, con V_inf >= 0"""
    e = np.exp(-r * tau)
    X = np.column_stack([np.ones_like(tau), e])
    (v_inf, amp), *_ = np.linalg.lstsq(X, V, rcond=None)
    if v_inf < 0.0:
        v_inf = 0.0
        amp = float(e @ V / (e @ e))
    resid = V - v_inf - amp * e
    return float(v_inf), float(amp), float(resid @ resid)


def fit_kosson_series(
    t: np.ndarray,
    V: np.ndarray,
    eta: float | None = None,
    lam: float | None = None,
) -> KossonFit:
    """Ajuste V_t = V_inf + A·exp(-r·(t - t0)) sobre una serie"""
    t = np.asarray(t, dtype=np.float64)
    V = np.asarray(V, dtype=np.float64)
    n = len(t)
    if n < MIN_KOSSON_POINTS:
        raise ValueError(
            f"[KossonFit] Serie demasiado corta: {n} puntos (mínimo {MIN_KOSSON_POINTS})"
        )
    t0 = float(t[0])
    tau = t - t0
    span = float(tau[-1])
    if span <= 0.0:
        raise ValueError("[KossonFit] Abscisa degenerada")
    r, sse, flag = scan_and_refine(lambda r: _kosson_linear(tau, V, r)[2], span)
    v_inf, amp, sse = _kosson_linear(tau, V, r)
    sst = float(np.sum((V - V.mean()) ** 2))
    r_squared = max(0.0, 1.0 - sse / sst) if sst > 0.0 else 0.0
    if flag is not None:
        logger.warning("Ajuste de Kosson marcado (%s) en [%g, %g]", flag, t[0], t[-1])
    kappa = r / (2.0 * eta * lam) if eta and lam else None
    return KossonFit(
        v_inf=v_inf,
        amplitude=amp,
        r_kos=r,
        r_squared=r_squared,
        t0=t0,
        window=(t0, float(t[-1])),
        n_points=n,
        kappa_kos=kappa,
        flagged=flag is not None,
        flag=flag,
    )


def fit_kosson(
    log: TrajectoryLog,
    window: tuple[float, float] | None = None,
    *,
    eta: float | None = None,
    lam: float | None = None,
    margin: float = 100,
) -> KossonFit:
    """Forma de Kosson en la misma ventana que κ_LL"""
    if window is None:
        window = default_window(log, "standard", margin)
    mask = log.window(*window)
    return fit_kosson_series(log.step[mask], log.V[mask], eta, lam)


def window_decomposition(kappa: KappaFit, kosson: KossonFit) -> float:
    """f_window = κ_LL / κ_kos"""
    if kosson.kappa_kos is None or kosson.kappa_kos <= 0.0:
        raise ValueError("[KossonFit] κ_kos no disponible para la descomposición")
    return kappa.kappa_ll / kosson.kappa_kos


def _saturation_linear(tau: np.ndarray, alpha: np.ndarray, r: float) -> tuple[float, float]:
    e = 1.0 - np.exp(-r * tau)
    amp = float(e @ alpha / (e @ e))
    resid = alpha - amp * e
    return amp, float(resid @ resid)


def fit_alpha_saturation(t: np.ndarray, alpha: np.ndarray) -> tuple[float, float, str | None]:
    """α(t') = α_final·(1 - exp(-t'/τ)) con t' desde el primer punto

    Devuelve (τ_α, α_final, aviso). El aviso 'no angular motion' indica que α
    no se mueve más de un grado entre el primer y el último cuarto.

    """
    t = np.asarray(t, dtype=np.float64)
    alpha = np.asarray(alpha, dtype=np.float64)
    if len(t) < MIN_KOSSON_POINTS:
        raise ValueError(
            f"[Timescales] Serie angular demasiado corta: {len(t)} puntos (mínimo {MIN_KOSSON_POINTS})"
        )
    quarter = max(1, len(alpha) // 4)
    rise = np.median(alpha[-quarter:]) - np.median(alpha[:quarter])
    if rise < NO_MOTION_DEGREES:
        return float("nan"), float(np.median(alpha[-quarter:])), "no angular motion"
    tau = t - t[0]
    r, _, flag = scan_and_refine(lambda r: _saturation_linear(tau, alpha, r)[1], float(tau[-1]))
    amp, _ = _saturation_linear(tau, alpha, r)
    return 1.0 / r, amp, flag


def fit_timescales(
    log: TrajectoryLog,
    *,
    T_mem: int | None = None,
    window: tuple[float, float] | None = None,
) -> Timescales:
    """τ_V, τ_α y su cociente sobre la fase posterior a la memorización"""
    if T_mem is None:
        T_mem = detect_T_mem(log)
    if T_mem is None:
        raise ValueError("[Timescales] No hay memorización")
    post = log.step >= T_mem
    if window is None:
        try:
            window = default_window(log)
        except ValueError:
            window = (float(T_mem), float(log.step[-1]))
    mask = log.window(*window)
    if mask.sum() < MIN_KAPPA_POINTS:
        raise ValueError(f"[Timescales] Ventana demasiado corta: {int(mask.sum())} puntos")
    line = least_squares_line(log.step[mask], np.log(log.V[mask]))
    tau_V = 1.0 / abs(line.slope) if line.slope != 0.0 else None
    alpha = log.alpha[post]
    if np.any(np.isnan(alpha)):
        raise ValueError("[Timescales] Falta la columna del coseno tras T_mem")
    tau_alpha, alpha_final, flag = fit_alpha_saturation(log.step[post], alpha)
    if flag == "no angular motion":
        return Timescales(tau_V, None, None, alpha_final, flag)
    ratio = tau_V / tau_alpha if tau_V is not None else None
    return Timescales(tau_V, tau_alpha, ratio, alpha_final, flag)


def measure_crossing(log: TrajectoryLog, val_threshold: float = 0.5) -> Crossing | None:
    """V y α en el cruce de val_acc por el umbral, interpolados linealmente"""
    val = log.val_acc
    hits = np.flatnonzero(val >= val_threshold)
    if not hits.size:
        return None
    i = int(hits[0])
    alpha = log.alpha
    rate = None
    if i > 0 and not np.isnan(alpha[i - 1]) and not np.isnan(alpha[i]):
        rate = float((alpha[i] - alpha[i - 1]) / (log.step[i] - log.step[i - 1]))
    if i == 0 or val[i] == val_threshold:
        a = None if np.isnan(alpha[i]) else float(alpha[i])
        return Crossing(float(log.step[i]), float(log.V[i]), a, rate, interpolated=False)
    w = (val_threshold - val[i - 1]) / (val[i] - val[i - 1])

    def lerp(y: np.ndarray) -> float:
        return float(y[i - 1] + w * (y[i] - y[i - 1]))

    a = lerp(alpha)
    return Crossing(
        lerp(log.step), lerp(log.V), None if np.isnan(a) else a, rate, interpolated=True
    )
