# Python 3.10.11
# Creado: 17/10/2026
"""Test de las arquitecturas, observables y puntos de control"""
import os
import sys

GROKLAB_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__) + "/groklab"))
sys.path.append(os.path.dirname(GROKLAB_DIR))


import numpy as np
import pytest

from groklab.core import cross_entropy_loss, finite_diff_gradient, seeded_rng
from groklab.models import (
    ModelSpec,
    angle_to_reference,
    cos_to_reference,
    forward,
    init_model,
    load_checkpoint,
    loss_and_grad,
    margins,
    ntk_feature_norm_sup,
    param_norm_sq,
    parameter_count,
    save_checkpoint,
    true_logit_gradient,
)
from groklab.optim import OptimizerState, adamw_step
from groklab.tasks import gen_modular

SMALL = dict(num_classes=7, embed_dim=8, heads=2, ff_dim=16, hidden_dim=12, init_std=0.3)


def small_batch():
    train, _ = gen_modular(7, "add", seed=0)
    return train.subset(np.arange(6))


def sampled_coords(state, extra=40):
    """Una coordenada de cada tensor más otras al azar"""
    coords = [state.layout.offsets[name] for name in state.layout.names]
    coords += seeded_rng(9).choice(state.num_params, extra, replace=False).tolist()
    return sorted(set(coords))


@pytest.mark.parametrize(
    "arch,readout",
    [
        ("transformer1", "mean"),
        ("transformer1", "last"),
        ("transformer2_paper", "mean"),
        ("transformer2_alt", "mean"),
        ("mlp", "mean"),
    ],
)
def test_gradients_match_finite_differences(arch, readout):
    spec = ModelSpec(arch, readout=readout, **SMALL)
    state = init_model(spec, seed=1)
    batch = small_batch()
    _, grad = loss_and_grad(state, batch)

    def loss(theta):
        logits = forward(state.with_params(theta), batch.inputs)
        return cross_entropy_loss(logits, batch.labels)[0]

    coords = sampled_coords(state)
    numeric = finite_diff_gradient(loss, state.params, coords=coords)
    assert np.allclose(grad[coords], numeric, rtol=1e-4, atol=1e-7)


def test_true_logit_gradient_matches_finite_differences():
    state = init_model(ModelSpec("transformer1", **SMALL), seed=2)
    x = np.array([3, 5])
    grad = true_logit_gradient(state, x, label=1)

    def logit(theta):
        return float(forward(state.with_params(theta), x.reshape(1, -1))[0, 1])

    coords = sampled_coords(state, extra=20)
    assert np.allclose(grad[coords], finite_diff_gradient(logit, state.params, coords=coords), rtol=1e-4, atol=1e-7)


def test_parameter_counts_at_default_widths():
    assert parameter_count(ModelSpec("transformer1", 97)) == 223457
    assert parameter_count(ModelSpec("transformer2_paper", 97)) == 418304
    assert parameter_count(ModelSpec("transformer2_alt", 97)) == 421729
    assert parameter_count(ModelSpec("mlp", 97)) == 456417


def test_homogeneity_table():
    assert ModelSpec("transformer1", 7).homogeneity_degree_k == 1
    assert ModelSpec("transformer2_paper", 7).homogeneity_degree_k == 2
    assert ModelSpec("mlp", 7).homogeneity_degree_k == 4
    assert ModelSpec("mlp", 7, homogeneity_degree_k=3).homogeneity_degree_k == 3


def test_spec_errors():
    with pytest.raises(ValueError):
        ModelSpec("lstm", 7)
    with pytest.raises(ValueError):
        ModelSpec("transformer1", 7, embed_dim=10, heads=4)


def test_init_deterministic():
    spec = ModelSpec("transformer2_alt", **SMALL)
    a = init_model(spec, seed=3)
    b = init_model(spec, seed=3)
    c = init_model(spec, seed=4)
    assert np.array_equal(a.params, b.params)
    assert not np.array_equal(a.params, c.params)
    tensors = a.tensors()
    assert np.all(tensors["block0.norm1.gamma"] == 1.0)
    assert np.all(tensors["head.bias"] == 0.0)


def test_named_views_share_memory():
    state = init_model(ModelSpec("mlp", **SMALL), seed=0)
    state.tensors()["head.bias"][0] = 5.0
    assert state.params[state.layout.offsets["head.bias"]] == 5.0


def test_forward_rejects_bad_tokens():
    state = init_model(ModelSpec("transformer1", **SMALL), seed=0)
    with pytest.raises(ValueError):
        forward(state, np.array([[0, 7]]))
    with pytest.raises(ValueError):
        forward(state, np.array([[0, 1, 2]]))


def test_observables():
    assert param_norm_sq(np.array([3.0, 4.0])) == 25.0
    ref = np.array([1.0, 0.0])
    assert angle_to_reference(np.array([2.0, 0.0]), ref) == pytest.approx(0.0, abs=1e-12)
    assert angle_to_reference(np.array([0.0, 3.0]), ref) == pytest.approx(90.0)
    assert angle_to_reference(np.array([-1.0, 0.0]), ref) == pytest.approx(180.0)
    assert cos_to_reference(np.array([1.0, 1.0]), ref) == pytest.approx(np.sqrt(0.5))
    with pytest.raises(ValueError):
        angle_to_reference(np.zeros(2), ref)


def test_margins_agree_with_accuracy():
    state = init_model(ModelSpec("transformer1", **SMALL), seed=0)
    train, _ = gen_modular(7, "add", seed=0)
    report = margins(state, train)
    assert len(report) == len(train)
    assert report.accuracy == pytest.approx(1.0 - report.misclassified.mean())
    assert np.all(report.negative <= 0.0)


def test_ntk_feature_norm_positive():
    state = init_model(ModelSpec("mlp", **SMALL), seed=0)
    train, _ = gen_modular(7, "add", seed=0)
    g = ntk_feature_norm_sup(state, train, subset_size=5, seed=0)
    assert g > 0.0
    with pytest.raises(ValueError):
        ntk_feature_norm_sup(state, train, subset_size=0, seed=0)


def test_checkpoint_round_trip(tmp_path):
    state = init_model(ModelSpec("transformer1", **SMALL), seed=0)
    opt = OptimizerState("adamw", eta=1e-3, lam=1.0, num_params=state.num_params)
    _, grad = loss_and_grad(state, small_batch())
    state = state.with_params(adamw_step(state.params, grad, opt))
    path = save_checkpoint(tmp_path / "run.ckpt.npz", state, opt, extra={"rows": np.arange(4.0)})

    loaded, loaded_opt, extra = load_checkpoint(path)
    assert loaded.spec == state.spec
    assert np.array_equal(loaded.params, state.params)
    assert np.array_equal(loaded_opt.m, opt.m)
    assert np.array_equal(loaded_opt.v, opt.v)
    assert loaded_opt.t == 1
    assert np.array_equal(extra["rows"], np.arange(4.0))


def test_checkpoint_missing(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_checkpoint(tmp_path / "nada.ckpt.npz")
