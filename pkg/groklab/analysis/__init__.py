# Python 3.10.11
# Creado: 02/10/2026
"""Análisis

Ajustes de trayectorias, predicción del retraso y su validación por niveles,
umbral angular, estadística de campaña y sobreoscilación.

"""

from .alpha import (
    AlphaStarEstimate,
    AlphaStarModel,
    ArcsinValue,
    CCalibration,
    alpha_distance_sq,
    alpha_star_from_constants,
    calibrate_C,
    predict_alpha_C,
    q_delta,
    quantile_margin,
)
from .fits import (
    Crossing,
    KappaFit,
    KossonFit,
    Timescales,
    default_window,
    fit_alpha_saturation,
    fit_kappa_loglinear,
    fit_kappa_series,
    fit_kosson,
    fit_kosson_series,
    fit_timescales,
    measure_crossing,
    window_decomposition,
)
from .overshoot import (
    OvershootBin,
    OvershootMetrics,
    bin_overshoot,
    bins_monotone,
    classify_overshoot,
    fit_overshoot_law,
    overshoot_law,
    overshoot_metrics,
)
from .prediction import (
    Calibration,
    DelayPrediction,
    LoocvResult,
    RatioStats,
    TierReport,
    calibrate,
    loocv_calibration,
    mape,
    predict_delay_A,
    predict_delay_B,
    ratio_stability,
    signed_error,
    three_tier_report,
)
from .reference import evaluate_reference, load_reference_tables
from .stats import (
    CellStatistics,
    CellSummary,
    DelayScaling,
    PowerLawFit,
    ScalingGroup,
    bootstrap_ci,
    cell_statistics,
    cv,
    delay_scaling,
    iqr,
    linear_fit,
    power_law_fit,
)
from .summarize import summarize_run

__all__ = [
    "AlphaStarEstimate",
    "AlphaStarModel",
    "ArcsinValue",
    "CCalibration",
    "Calibration",
    "CellStatistics",
    "CellSummary",
    "Crossing",
    "DelayPrediction",
    "DelayScaling",
    "KappaFit",
    "KossonFit",
    "LoocvResult",
    "OvershootBin",
    "OvershootMetrics",
    "PowerLawFit",
    "RatioStats",
    "ScalingGroup",
    "TierReport",
    "Timescales",
    "alpha_distance_sq",
    "alpha_star_from_constants",
    "bin_overshoot",
    "bins_monotone",
    "bootstrap_ci",
    "calibrate",
    "calibrate_C",
    "cell_statistics",
    "classify_overshoot",
    "cv",
    "default_window",
    "delay_scaling",
    "evaluate_reference",
    "fit_alpha_saturation",
    "fit_kappa_loglinear",
    "fit_kappa_series",
    "fit_kosson",
    "fit_kosson_series",
    "fit_overshoot_law",
    "fit_timescales",
    "iqr",
    "linear_fit",
    "load_reference_tables",
    "loocv_calibration",
    "mape",
    "measure_crossing",
    "overshoot_law",
    "overshoot_metrics",
    "power_law_fit",
    "predict_alpha_C",
    "predict_delay_A",
    "predict_delay_B",
    "q_delta",
    "quantile_margin",
    "ratio_stability",
    "signed_error",
    "summarize_run",
    "three_tier_report",
    "window_decomposition",
]
