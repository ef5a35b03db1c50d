# Python 3.10.11
# Creado: 18/10/2026
"""Test de los ajustes, la predicción y la estadística de campaña"""
import os
import sys

GROKLAB_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__) + "/groklab"))
sys.path.append(os.path.dirname(GROKLAB_DIR))


import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groklab.analysis import (
    AlphaStarModel,
    alpha_distance_sq,
    alpha_star_from_constants,
    bin_overshoot,
    bins_monotone,
    bootstrap_ci,
    calibrate,
    calibrate_C,
    cell_statistics,
    classify_overshoot,
    cv,
    delay_scaling,
    evaluate_reference,
    fit_alpha_saturation,
    fit_kappa_loglinear,
    fit_kosson_series,
    fit_overshoot_law,
    fit_timescales,
    iqr,
    load_reference_tables,
    loocv_calibration,
    mape,
    measure_crossing,
    overshoot_law,
    overshoot_metrics,
    power_law_fit,
    predict_alpha_C,
    predict_delay_A,
    predict_delay_B,
    q_delta,
    quantile_margin,
    ratio_stability,
    signed_error,
    summarize_run,
    three_tier_report,
)
from groklab.trainer import RunSummary, TrajectoryLog, detect_T_grok

ETA, LAM, KAPPA = 1e-3, 1.0, 0.25
RATE = 2.0 * KAPPA * ETA * LAM


def decay_log(n=300, every=20, mem_row=10, grok_rows=(100, 118), tau_alpha=500.0):
    """Trayectoria sintética: V decae a la tasa limpia desde T_mem y α satura"""
    log = TrajectoryLog()
    T_mem = mem_row * every
    for i in range(n):
        t = i * every
        train_acc = 1.0 if i >= mem_row else 0.5
        val_acc = float(np.interp(i, grok_rows, (0.1, 1.0)))
        V = 1000.0 * math.exp(-RATE * max(t - T_mem, 0))
        if t >= T_mem:
            alpha = 40.0 * (1.0 - math.exp(-(t - T_mem) / tau_alpha))
            cos = math.cos(math.radians(alpha))
        else:
            cos = float("nan")
        log.append(t, V, train_acc, val_acc, 1.0 - train_acc, 1.0 - val_acc, LAM, cos)
    return log


def summary_for(log, **fields):
    T_mem = 200
    values = dict(
        T_mem=T_mem,
        T_grok_99=detect_T_grok(log, 0.99, not_before=T_mem),
        T_grok_95=detect_T_grok(log, 0.95, not_before=T_mem),
        V_mem=1000.0,
        grokked=True,
    )
    values.update(fields)
    return RunSummary("run", "cell", 0, "transformer1", "modular", 97, ETA, LAM, **values)


# Ajustes


def test_kappa_recovers_clean_rate():
    fit = fit_kappa_loglinear(decay_log(), ETA, LAM)
    assert fit.kappa_ll == pytest.approx(KAPPA, rel=1e-9)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.window[0] == 300.0


def test_kappa_window_too_short():
    with pytest.raises(ValueError, match="demasiado corta"):
        fit_kappa_loglinear(decay_log(), ETA, LAM, window=(300.0, 340.0))
    with pytest.raises(ValueError):
        fit_kappa_loglinear(decay_log(), ETA, 0.0)


def test_kosson_recovers_parameters():
    t = np.arange(0.0, 2001.0, 20.0)
    V = 50.0 + 200.0 * np.exp(-0.002 * t)
    fit = fit_kosson_series(t, V, ETA, LAM)
    assert fit.r_kos == pytest.approx(0.002, rel=1e-4)
    assert fit.v_inf == pytest.approx(50.0, abs=1e-3)
    assert fit.amplitude == pytest.approx(200.0, rel=1e-4)
    assert fit.kappa_kos == pytest.approx(1.0, rel=1e-4)
    assert not fit.flagged


def test_kosson_too_short():
    with pytest.raises(ValueError):
        fit_kosson_series(np.arange(5.0), np.ones(5))


def test_alpha_saturation():
    t = np.arange(0.0, 4001.0, 20.0)
    tau, final, flag = fit_alpha_saturation(t, 40.0 * (1.0 - np.exp(-t / 500.0)))
    assert tau == pytest.approx(500.0, rel=1e-4)
    assert final == pytest.approx(40.0, rel=1e-4)
    assert flag is None
    tau, final, flag = fit_alpha_saturation(t, np.full(t.size, 10.0))
    assert flag == "no angular motion"
    assert math.isnan(tau)


def test_timescales_ratio():
    scales = fit_timescales(decay_log())
    assert scales.tau_V == pytest.approx(1.0 / RATE, rel=1e-6)
    assert scales.tau_alpha == pytest.approx(500.0, rel=1e-3)
    assert scales.ratio == pytest.approx(4.0, rel=1e-3)


def test_crossing_is_interpolated():
    log = TrajectoryLog()
    for i, (val, V, alpha) in enumerate(zip([0.0, 0.2, 0.4, 0.6, 0.8], [10, 9, 8, 7, 6], [0, 10, 20, 30, 40])):
        log.append(20 * i, V, 1.0, val, 0.0, 1.0, 1.0, math.cos(math.radians(alpha)))
    crossing = measure_crossing(log, 0.5)
    assert crossing.interpolated
    assert crossing.step == pytest.approx(50.0)
    assert crossing.V_star == pytest.approx(7.5)
    assert crossing.alpha_star == pytest.approx(25.0, abs=1e-9)
    assert crossing.alpha_rate == pytest.approx(0.5, abs=1e-9)
    assert measure_crossing(log, 0.9) is None


def test_summarize_run_fills_fits():
    log = decay_log()
    out = summarize_run(log, summary_for(log, V_post=500.0))
    assert out.kappa_ll == pytest.approx(KAPPA, rel=1e-9)
    assert out.kosson_kappa == pytest.approx(KAPPA, rel=1e-4)
    assert out.f_window == pytest.approx(1.0, rel=1e-4)
    assert out.rho == pytest.approx(math.log(2.0))
    assert out.V_star == pytest.approx(1000.0 * math.exp(-RATE * 1960), rel=1e-3)
    assert out.overshoot_class == "smooth"
    assert out.tau_ratio == pytest.approx(4.0, rel=1e-3)


def test_summarize_run_records_notes():
    log = decay_log()
    summary = summary_for(log, V_post=500.0)
    summary.lam = 0.0
    out = summarize_run(log, summary)
    assert out.kappa_ll is None
    assert out is not summary


# Predicción


def test_method_b_reference_value():
    prediction = predict_delay_B(0.252, 2501.0, 1e-3, 1.0, 11800.0)
    assert prediction.steps == pytest.approx(3078.2, abs=1.0)
    assert not prediction.clipped
    assert predict_delay_A(0.252, 1e-3, 1.0, 11800.0, 472.0).steps == pytest.approx(6386.7, abs=1.0)


@settings(max_examples=100, deadline=None)
@given(
    kappa=st.floats(0.01, 2.0),
    eta=st.floats(1e-5, 1e-2),
    lam=st.floats(0.01, 10.0),
    V_star=st.floats(1.0, 1e4),
    ratio=st.floats(1.01, 100.0),
    c=st.floats(0.1, 10.0),
)
def test_method_b_inversely_linear(kappa, eta, lam, V_star, ratio, c):
    V_mem = V_star * ratio
    steps = predict_delay_B(kappa, V_star, eta, lam, V_mem).steps
    assert steps > 0.0
    assert predict_delay_B(c * kappa, V_star, eta, lam, V_mem).steps == pytest.approx(steps / c)
    assert predict_delay_B(kappa, V_star, c * eta, lam, V_mem).steps == pytest.approx(steps / c)
    assert predict_delay_B(kappa, V_star, eta, c * lam, V_mem).steps == pytest.approx(steps / c)



def test_negative_prediction_is_clipped():
    prediction = predict_delay_B(0.25, 2000.0, 1e-3, 1.0, 1000.0)
    assert prediction == (0.0, True)
    with pytest.raises(ValueError):
        predict_delay_B(0.0, 2000.0, 1e-3, 1.0, 1000.0)


def test_mape_and_signed_error():
    assert mape([110.0, 90.0], [100.0, 100.0]) == pytest.approx(10.0)
    assert signed_error([110.0, 90.0], [100.0, 100.0]) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        mape([1.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        mape([1.0], [0.0])


def tier_summary(cell_id, seed, arch="transformer1", p=97, V_mem=100.0 * math.exp(0.5)):
    return RunSummary(
        f"{cell_id}-{seed}",
        cell_id,
        seed,
        arch,
        "modular",
        p,
        ETA,
        LAM,
        T_mem=200,
        T_grok_99=1200,
        V_mem=V_mem,
        V_post=50.0,
        grokked=True,
        kappa_ll=KAPPA,
        kappa_r2=0.99,
        V_star=100.0,
    )


def test_three_tier_report():
    summaries = [tier_summary("cal", s) for s in range(3)]
    summaries += [tier_summary("same", s) for s in range(2)]
    summaries += [tier_summary("other_arch", s, arch="mlp") for s in range(2)]
    summaries += [tier_summary("other_p", s, p=113) for s in range(2)]
    report = three_tier_report(summaries, "cal")
    assert report.calibration.kappa_train == KAPPA
    assert report.calibration.V_star_train == 100.0
    assert [report.tiers[t].n for t in ("tier1", "tier2", "tier3")] == [2, 4, 6]
    assert report.tiers["tier3"].mape_B < 1e-6
    assert {row.cell_id: row.tier for row in report.cells} == {
        "other_arch": "tier2",
        "other_p": "tier3",
        "same": "tier1",
    }


def test_calibration_needs_three_runs():
    with pytest.raises(ValueError, match="mínimo 3"):
        calibrate([tier_summary("cal", 0), tier_summary("cal", 1)], "cal")


def test_loocv():
    result = loocv_calibration([(0.2, 100.0), (0.25, 110.0), (0.3, 120.0)])
    assert result.full == (0.25, 110.0)
    assert result.v_star_variation_pct == pytest.approx(10.0 / 110.0 * 100.0)
    assert result.kappa_variation_pct == pytest.approx(20.0)
    with pytest.raises(ValueError):
        loocv_calibration([(0.2, 100.0)])


def test_ratio_stability_skips_single_cells():
    stats = ratio_stability({"transformer1": [0.2, 0.22], "mlp": [0.3]})
    assert list(stats) == ["transformer1"]
    assert stats["transformer1"].mean == pytest.approx(0.21)
    assert stats["transformer1"].cv == pytest.approx(0.01 / 0.21)


# Umbral angular


def test_c_calibration_reference():
    tables = load_reference_tables()["alpha_calibration"]
    C = calibrate_C(list(zip(tables["p"], tables["sqrt_V_Tmem"], tables["alpha_star"])))
    assert C.mean == pytest.approx(82.83, abs=0.05)
    assert C.cv * 100.0 == pytest.approx(1.66, abs=0.05)
    C89 = C.per_cell[2][1]
    assert predict_alpha_C(C89, 111.2).degrees == pytest.approx(47.14, abs=0.05)


def test_arcsin_flags():
    estimate = alpha_star_from_constants(AlphaStarModel(M_q=1.0, G_eff=1.0, C=1.0), 4.0)
    assert estimate.bound.degrees == pytest.approx(30.0)
    assert estimate.c_form.degrees == pytest.approx(30.0)
    halved = alpha_star_from_constants(AlphaStarModel(M_q=1.0, G_eff=1.0, factor=2), 4.0)
    assert halved.bound.argument == pytest.approx(0.25)
    assert predict_alpha_C(3.0, 2.0).flag == "unreachable"
    assert predict_alpha_C(3.0, 2.0).degrees == pytest.approx(90.0)
    negative = alpha_star_from_constants(AlphaStarModel(M_q=1.0, G_eff=1.0, eps_lin=1.0), 4.0)
    assert negative.bound.flag == "negative"
    assert negative.bound.degrees == 0.0


def test_quantile_margin():
    margins = [-0.1, -0.5, -0.3, 0.2]
    assert quantile_margin(margins, 0.5) == pytest.approx(0.3)
    assert quantile_margin(margins, 1.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        quantile_margin([0.1, 0.2], 0.5)
    with pytest.raises(ValueError):
        quantile_margin(margins, 0.0)


def test_q_delta_and_distance():
    assert q_delta(0.01, 0.99) == pytest.approx(0.98 / 0.99)
    with pytest.raises(ValueError):
        q_delta(0.5, 0.4)
    assert alpha_distance_sq(1.0, 1.0, 90.0) == pytest.approx(2.0)
    assert alpha_distance_sq(4.0, 4.0, 0.0) == pytest.approx(0.0, abs=1e-12)


# Estadística


def test_power_law_exact():
    x = np.array([53.0, 67.0, 89.0, 97.0, 113.0])
    fit = power_law_fit(x, 2.0 * x**1.5, n_bootstrap=500, seed=1)
    assert fit.A == pytest.approx(2.0, rel=1e-9)
    assert fit.b == pytest.approx(1.5, rel=1e-9)
    assert fit.b_ci95 == pytest.approx((1.5, 1.5), rel=1e-9)
    assert fit.n_bootstrap + fit.discarded == 500


def test_power_law_errors():
    with pytest.raises(ValueError):
        power_law_fit([1.0, 2.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        power_law_fit([1.0, 2.0, -3.0], [1.0, 2.0, 3.0])


def test_bootstrap_ci():
    assert bootstrap_ci([2.0, 2.0, 2.0]) == (2.0, 2.0)
    samples = np.linspace(0.0, 1.0, 30)
    lo, hi = bootstrap_ci(samples, "median", 2000, seed=3)
    assert lo < 0.5 < hi
    assert bootstrap_ci(samples, n_resamples=500, seed=4) == bootstrap_ci(samples, n_resamples=500, seed=4)
    with pytest.raises(ValueError):
        bootstrap_ci([1.0])


def test_cv_and_iqr():
    assert cv([1.0]) is None
    assert cv([2.0, 2.0]) == 0.0
    assert iqr([1.0, 2.0, 3.0, 4.0]) == (1.5, 3.5)
    assert iqr([]) is None


def test_cell_statistics():
    runs = []
    for seed, kappa in enumerate([0.2, 0.25, 0.3]):
        run = tier_summary("a", seed)
        run.kappa_ll = kappa
        runs.append(run)
    failed = tier_summary("b", 0)
    failed.grokked = False
    stats = cell_statistics(runs + [failed])
    assert stats.n_qualifying == 3
    assert stats.pooled_kappa_median == pytest.approx(0.25)
    cells = {cell.cell_id: cell for cell in stats.cells}
    assert cells["a"].n_qualifying == 3
    assert cells["b"].kappa_median is None
    assert cells["a"].delay_median == 1000.0
    document = stats.serialize()
    assert set(document) == {"pooled", "cells"}


def sweep_run(cell_id, seed, delay, lam=LAM, eta=ETA, **fields):
    run = tier_summary(cell_id, seed, **fields)
    run.lam, run.eta = lam, eta
    run.T_grok_99 = run.T_mem + delay
    return run


def test_delay_scaling_within_tolerance():
    runs = [sweep_run("lam0p5", s, 2000, lam=0.5) for s in range(2)]
    runs += [sweep_run("ref", s, 1000) for s in range(2)]
    runs += [sweep_run("lam2", 0, 600, lam=2.0)]
    scaling = delay_scaling(runs, "lam")
    [group] = scaling.groups
    assert group.values == [0.5, 1.0, 2.0]
    assert group.products == pytest.approx([1000.0, 1000.0, 1200.0])
    assert group.n_runs == 5
    assert scaling.max_rel_dev == pytest.approx((1200.0 - 3200.0 / 3) / (3200.0 / 3))
    assert scaling.max_rel_dev < 0.35
    # Ningún grupo barre η
    assert delay_scaling(runs, "eta").max_rel_dev is None


def test_delay_scaling_detects_broken_product():
    runs = [sweep_run("eta5em4", 0, 2000, eta=5e-4)]
    runs += [sweep_run("ref", 0, 1000)]
    runs += [sweep_run("eta2em3", 0, 900, eta=2e-3)]
    scaling = delay_scaling(runs, "eta")
    assert scaling.groups[0].products == pytest.approx([1.0, 1.0, 1.8])
    assert scaling.max_rel_dev == pytest.approx((1.8 - 3.8 / 3) / (3.8 / 3))
    assert scaling.max_rel_dev > 0.35
    document = scaling.serialize()
    assert document["n_groups"] == 1
    assert list(document["groups"]) == ["transformer1_modular_p97_lam1"]


def test_delay_scaling_filters_runs():
    frozen = sweep_run("frozen", 0, 5000, lam=2.0)
    frozen.intervention = "norm_freeze"
    diverged = sweep_run("lam2", 1, 5000, lam=2.0)
    diverged.diverged = True
    runs = [sweep_run("ref", 0, 1000), sweep_run("lam2", 0, 500, lam=2.0), frozen, diverged]
    # Otro p forma un grupo aparte con un único valor de λ
    runs += [sweep_run("other_p", 0, 3000, p=113)]
    scaling = delay_scaling(runs, "lam")
    assert [g.label for g in scaling.groups] == ["transformer1_modular_p97_eta0p001"]
    assert scaling.max_rel_dev == pytest.approx(0.0)
    with pytest.raises(ValueError):
        delay_scaling(runs, "kappa")



# Sobreoscilación


def test_overshoot_law_reference():
    assert overshoot_law(0.5) == pytest.approx(1.139, abs=0.005)
    rho = np.array([0.2, 0.4, 0.6, 0.8, 1.0])
    fit = fit_overshoot_law(list(zip(rho, overshoot_law(rho))), n_bootstrap=0)
    assert fit.b == pytest.approx(-5.51, rel=1e-9)
    assert fit.A == pytest.approx(0.025, rel=1e-9)
    with pytest.raises(ValueError):
        fit_overshoot_law([(0.5, 1.0)] * 4)


def test_overshoot_metrics():
    log = TrajectoryLog()
    for i, V in enumerate([20.0, 10.0, 6.0, 4.0, 9.0, 12.0]):
        log.append(100 * i, V, 1.0, 1.0, 0.0, 0.0, 1.0)
    summary = RunSummary("r", "c", 0, "mlp", "modular", 97, ETA, LAM, T_mem=0, T_grok_95=100, T_grok_99=400)
    metrics = overshoot_metrics(log, summary)
    assert metrics.rho_drop == pytest.approx(0.4)
    assert metrics.regrowth == pytest.approx(3.0)
    assert metrics.extra_delay_ratio == pytest.approx(3.0)
    assert classify_overshoot(metrics) == "overshoot"


def test_overshoot_bins():
    runs = [(0.1, 10.0), (0.2, 14.0), (0.4, 5.0), (0.95, 0.1)]
    bins = bin_overshoot(runs)
    assert [b.n for b in bins] == [2, 1, 0, 0, 1]
    assert bins[0].median_ratio == 12.0
    assert bins[2].median_ratio is None
    assert bins_monotone(bins)
    assert not bins_monotone(bin_overshoot([(0.1, 1.0), (0.95, 2.0)]))


# Tablas de referencia


def test_reference_evaluation():
    out = evaluate_reference(load_reference_tables(), n_bootstrap=200)
    assert out["c_calibration"]["mean"] == pytest.approx(82.83, abs=0.05)
    assert out["c_form"]["p89_to_p97"] == pytest.approx(47.14, abs=0.05)
    assert out["c_form"]["p53_to_p113"] == pytest.approx(43.50, abs=0.05)
    assert out["alpha_scaling"]["b"] == pytest.approx(-0.707, abs=0.01)
    assert out["alpha_scaling"]["r_squared"] > 0.98
    assert out["v_star_scaling"]["power"]["b"] == pytest.approx(1.37, abs=0.02)
    assert out["method_b"]["delay"] == pytest.approx(3078.2, abs=1.0)
    assert out["overshoot"]["law_decreasing"]
    assert out["overshoot"]["binned_monotone"]
