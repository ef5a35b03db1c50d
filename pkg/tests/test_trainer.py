# Python 3.10.11
# Creado: 18/10/2026
"""Test del motor de experimentos"""
import os
import sys

GROKLAB_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__) + "/groklab"))
sys.path.append(os.path.dirname(GROKLAB_DIR))


import numpy as np
import pytest

from groklab.analysis import summarize_run
from groklab.core import DivergenceError
from groklab.models import ModelSpec, init_model
from groklab.optim import OptimizerState
from groklab.trainer import (
    RunConfig,
    RunSummary,
    TrajectoryLog,
    apply_intervention,
    checkpoint_path,
    classify_regime,
    detect_T_grok,
    detect_T_mem,
    detect_v_post_plateau,
    find_plateau,
    read_summary,
    read_trajectory,
    resume_training,
    run_training,
    write_summary,
    write_trajectory,
)

TINY = dict(
    p=11,
    embed_dim=8,
    heads=2,
    ff_dim=16,
    max_steps=60,
    log_every=10,
    early_stop=False,
    seed=3,
)


def synthetic_log(steps, V, train_acc, val_acc, lam=1.0):
    log = TrajectoryLog()
    for t, v, tr, va in zip(steps, V, train_acc, val_acc):
        log.append(t, v, tr, va, 1.0 - tr, 1.0 - va, lam)
    return log


def grokking_log(n=200, every=20, mem_row=10, grok_row=60, plateau_row=150):
    steps = np.arange(n) * every
    train_acc = np.where(np.arange(n) >= mem_row, 1.0, 0.5)
    val_acc = np.where(np.arange(n) >= grok_row, 1.0, 0.1)
    V = np.where(np.arange(n) < plateau_row, 100.0 - 0.5 * np.arange(n), 10.0)
    return synthetic_log(steps, V, train_acc, val_acc)


# Configuración


def test_run_config_from_dict():
    config = RunConfig.from_dict({"cell_id": "a", "seed": 1, "p": 23})
    assert config.run_name == "a_seed1"
    assert config.model_spec().vocab_size == 23
    with pytest.raises(KeyError):
        RunConfig.from_dict({"learning_rate": 1e-3})


def test_run_id_is_content_hash():
    a = RunConfig(seed=1)
    assert a.run_id == RunConfig(seed=1).run_id
    assert a.run_id != RunConfig(seed=2).run_id
    assert len(a.run_id) == 16


def test_run_config_errors():
    with pytest.raises(ValueError):
        RunConfig(max_steps=105, log_every=20)
    with pytest.raises(ValueError):
        RunConfig(eta=1.0, lam=1.0)
    with pytest.raises(ValueError):
        RunConfig(intervention="freeze")
    with pytest.raises(ValueError):
        RunConfig(embed_dim=10, heads=4)


def test_parity_model_spec():
    spec = RunConfig(task="parity", arch="mlp", parity_n=10).model_spec()
    assert (spec.vocab_size, spec.seq_len, spec.num_classes) == (2, 10, 2)


# Registros


def test_trajectory_rejects_bad_rows():
    log = TrajectoryLog()
    log.append(0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        log.append(0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        log.append(20, 0.0, 0.0, 0.0, 1.0, 1.0, 1.0)
    with pytest.raises(KeyError):
        log.column("kappa")


def test_trajectory_file_round_trip(tmp_path):
    log = grokking_log(n=20, grok_row=15)
    log.rows[-1] = log.rows[-1][:-1] + (0.5,)
    log = TrajectoryLog(list(log.rows))
    path = write_trajectory(log, tmp_path / "run.traj")
    assert path.read_text(encoding="utf-8").startswith("# groklab-trajectory/1\n")
    loaded = read_trajectory(path)
    assert np.array_equal(loaded.array, log.array, equal_nan=True)


def test_corrupt_trajectory(tmp_path):
    path = write_trajectory(grokking_log(n=5), tmp_path / "run.traj")
    with open(path, "a", encoding="utf-8") as fh:
        fh.write("1 2 3\n")
    with pytest.raises(ValueError):
        read_trajectory(path)
    with pytest.raises(FileNotFoundError):
        read_trajectory(tmp_path / "nada.traj")


def test_summary_round_trip(tmp_path):
    summary = RunSummary("abc", "cell", 0, "transformer1", "modular", 23, 1e-3, 1.0)
    summary.T_mem, summary.T_grok_99, summary.T_grok_95 = 200, 1000, 800
    summary.notes.append("prueba")
    path = write_summary(summary, tmp_path / "run.toml")
    loaded = read_summary(path)
    assert loaded == summary
    assert loaded.delay == 800
    assert loaded.delay_95 == 600
    assert loaded.kappa_ll is None


# Eventos


def test_event_detection():
    log = grokking_log()
    assert detect_T_mem(log) == 200
    assert detect_T_grok(log) == 1200
    assert detect_T_grok(log, not_before=1400) == 1400
    assert detect_T_grok(grokking_log(grok_row=199)) == 3980
    with pytest.raises(ValueError):
        detect_T_mem(log, mode="kappa")


def test_T_mem_by_loss():
    log = synthetic_log([0, 20, 40], [3.0, 2.0, 1.0], [0.5, 0.98, 0.999], [0.0, 0.0, 0.0])
    assert detect_T_mem(log, "loss") == 40


def test_plateau_found_after_min_elapsed():
    log = grokking_log()
    start = find_plateau(log, 1200)
    assert start == 150
    V_post, method = detect_v_post_plateau(log, 1200)
    assert method == "plateau"
    assert V_post == pytest.approx(10.0)


def test_plateau_tail_fallback():
    n = 120
    steps = np.arange(n) * 20
    V = 100.0 * np.exp(-steps / 300.0) + 1e-3
    log = synthetic_log(steps, V, np.ones(n), np.ones(n))
    V_post, method = detect_v_post_plateau(log, 0)
    assert method == "tail_fallback"
    assert V_post == pytest.approx(np.mean(V[-10:]))


def test_v_post_needs_grokking():
    log = synthetic_log([0, 20, 40], [1.0, 1.0, 1.0], [1.0, 1.0, 1.0], [0.0, 0.0, 0.0])
    with pytest.raises(ValueError):
        detect_v_post_plateau(log)


def test_regimes():
    assert classify_regime(grokking_log()) == "predictable"
    n = 100
    steps = np.arange(n) * 20
    shrinking = synthetic_log(steps, 10.0 - 0.05 * np.arange(n), np.full(n, 0.2), np.zeros(n))
    assert classify_regime(shrinking) == "wd_dominant"
    growing = synthetic_log(steps, 1.0 + 0.05 * np.arange(n), np.full(n, 0.2), np.zeros(n))
    assert classify_regime(growing) == "insufficient"


# Intervenciones


def small_state():
    state = init_model(ModelSpec("transformer1", 7, embed_dim=8, heads=2, ff_dim=16), seed=0)
    return state, OptimizerState("adamw", eta=1e-3, lam=1.0, num_params=state.num_params)


def test_rescale_intervention():
    state, opt = small_state()
    V0 = float(state.params @ state.params)
    apply_intervention(state, opt, "rescale", factor=0.9)
    assert float(state.params @ state.params) == pytest.approx(0.81 * V0, rel=1e-12)


def test_norm_freeze_intervention():
    state, opt = small_state()
    apply_intervention(state, opt, "norm_freeze", V_ref=2.0)
    assert float(state.params @ state.params) == pytest.approx(2.0, rel=1e-12)


def test_wd_freeze_intervention():
    state, opt = small_state()
    apply_intervention(state, opt, "wd_freeze")
    assert opt.lam == 0.0
    with pytest.raises(ValueError):
        apply_intervention(state, opt, "shrink")


# Bucle de entrenamiento


def test_training_log_schedule():
    config = RunConfig(**TINY)
    log, summary = run_training(config)
    assert log.step.tolist() == [0, 10, 20, 30, 40, 50, 60]
    assert np.all(log.wd_coeff == 1.0)
    assert summary.steps_run == 60
    assert summary.run_id == config.run_id
    if summary.T_mem is None:
        assert np.all(np.isnan(log.cos_to_ref))


def test_training_is_deterministic():
    config = RunConfig(**TINY)
    a, _ = run_training(config)
    b, _ = run_training(config)
    assert np.array_equal(a.array, b.array, equal_nan=True)


def test_resume_reproduces_uninterrupted_run(tmp_path):
    config = RunConfig(**TINY, checkpoint_every=1)
    partial, _ = run_training(config, tmp_path, halt_at=30)
    assert partial.step.tolist() == [0, 10, 20, 30]
    assert checkpoint_path(tmp_path, config).exists()

    resumed, summary = resume_training(tmp_path, config)
    full, _ = run_training(config)
    assert np.array_equal(resumed.array, full.array, equal_nan=True)
    assert summary.steps_run == 60


def test_resume_without_checkpoint(tmp_path):
    with pytest.raises(FileNotFoundError):
        resume_training(tmp_path)


def test_norm_freeze_keeps_norm_constant():
    config = RunConfig(**TINY, intervention="norm_freeze", acc_mem=0.0)
    log, summary = run_training(config)
    assert summary.T_mem == 0
    assert summary.intervention_step == 0
    assert np.allclose(log.V, log.V[0], rtol=1e-10)
    assert summary.norm_rel_std < 1e-10


def test_wd_freeze_sets_decay_to_zero():
    config = RunConfig(**TINY, intervention="wd_freeze", acc_mem=0.0)
    log, summary = run_training(config)
    assert log.wd_coeff[0] == 1.0
    assert np.all(log.wd_coeff[1:] == 0.0)
    assert summary.intervention == "wd_freeze"


def test_reference_fixed_at_memorization():
    config = RunConfig(**TINY, acc_mem=0.0)
    log, summary = run_training(config)
    assert log.cos_to_ref[0] == 1.0
    assert np.all(log.cos_to_ref[1:] < 1.0)
    assert summary.alpha_final > 0.0


def test_divergence_is_recorded(monkeypatch):
    from groklab.trainer import trainer

    real = trainer.loss_and_grad

    def exploding(state, batch, *, step=None):
        if step is not None and step >= 25:
            raise DivergenceError("pérdida no finita", step=step)
        return real(state, batch, step=step)

    monkeypatch.setattr(trainer, "loss_and_grad", exploding)
    log, summary = run_training(RunConfig(**TINY))
    assert summary.diverged
    assert summary.diverged_step == 25
    assert log.step.tolist() == [0, 10, 20]


@pytest.mark.slow
def test_desk_run_groks():
    config = RunConfig(
        cell_id="f1_p23", p=23, embed_dim=64, heads=4, ff_dim=256, seed=0, max_steps=20000
    )
    log, summary = run_training(config)
    summary = summarize_run(log, summary)
    assert not summary.diverged
    assert summary.T_mem is not None
    assert summary.grokked
    assert summary.T_grok_99 > summary.T_mem
    assert summary.kappa_r2 > 0.9
    assert summary.V_mem > summary.V_post

