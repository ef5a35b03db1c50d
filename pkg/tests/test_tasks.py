# Python 3.10.11
# Creado: 16/10/2026
"""Test de la generación de conjuntos de datos"""
import os
import sys

GROKLAB_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__) + "/groklab"))
sys.path.append(os.path.dirname(GROKLAB_DIR))


import numpy as np
import pytest

from groklab.tasks import dump_dataset, gen_modular, gen_sparse_parity, is_prime, train_size


def test_train_size():
    assert train_size(97) == 3763
    assert train_size(53) == 1123
    assert train_size(5) == 10


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_modular_split_sizes():
    train, val = gen_modular(97, "add", seed=0)
    assert len(train) == 3763
    assert len(val) == 97 * 97 - 3763
    assert train.num_classes == train.vocab_size == 97
    assert train.seq_len == 2
    assert train.split_tag == "train" and val.split_tag == "val"


def test_modular_split_partitions_the_domain():
    p = 23
    train, val = gen_modular(p, "add", seed=3)
    pairs_train = {tuple(row) for row in train.inputs.tolist()}
    pairs_val = {tuple(row) for row in val.inputs.tolist()}
    assert not pairs_train & pairs_val
    assert len(pairs_train | pairs_val) == p * p


def test_modular_labels():
    train, val = gen_modular(5, "add", seed=0)
    for dataset in (train, val):
        for (a, b), label in zip(dataset.inputs.tolist(), dataset.labels.tolist()):
            assert label == (a + b) % 5
            if (a, b) == (3, 4):
                assert label == 2
    train, _ = gen_modular(7, "mult", seed=1)
    for (a, b), label in zip(train.inputs.tolist(), train.labels.tolist()):
        assert label == (a * b) % 7


def test_modular_deterministic():
    a, _ = gen_modular(29, "add", seed=5)
    b, _ = gen_modular(29, "add", seed=5)
    c, _ = gen_modular(29, "add", seed=6)
    assert np.array_equal(a.inputs, b.inputs)
    assert not np.array_equal(a.inputs, c.inputs)


def test_modular_meta_and_readonly():
    train, _ = gen_modular(11, "add", seed=2)
    assert train.meta == {"task": "modular", "op": "add", "p": 11, "seed": 2}
    with pytest.raises(ValueError):
        train.inputs[0, 0] = 1


def test_modular_errors():
    with pytest.raises(ValueError):
        gen_modular(4, "add", seed=0)
    with pytest.raises(ValueError):
        gen_modular(3, "add", seed=0)
    with pytest.raises(ValueError):
        gen_modular(9, "add", seed=0)
    with pytest.raises(ValueError):
        gen_modular(7, "sub", seed=0)


def test_parity_split_and_labels():
    train, val = gen_sparse_parity(20, 3, 4096, seed=0)
    assert len(train) == len(val) == 2048
    assert train.seq_len == 20
    assert train.num_classes == train.vocab_size == 2
    subset = train.meta["subset"]
    assert len(subset) == 3 and subset == sorted(subset)
    for dataset in (train, val):
        expected = dataset.inputs[:, subset].sum(axis=1) % 2
        assert np.array_equal(dataset.labels, expected)


def test_parity_balanced():
    train, _ = gen_sparse_parity(20, 3, 4096, seed=1)
    assert abs(train.labels.mean() - 0.5) < 0.05


def test_parity_deterministic():
    a, _ = gen_sparse_parity(10, 3, 64, seed=4)
    b, _ = gen_sparse_parity(10, 3, 64, seed=4)
    assert np.array_equal(a.inputs, b.inputs)
    assert a.meta["subset"] == b.meta["subset"]


def test_parity_errors():
    with pytest.raises(ValueError):
        gen_sparse_parity(5, 0, 64, seed=0)
    with pytest.raises(ValueError):
        gen_sparse_parity(5, 6, 64, seed=0)
    with pytest.raises(ValueError):
        gen_sparse_parity(5, 2, 1, seed=0)


def test_subset_keeps_description():
    train, _ = gen_modular(11, "add", seed=0)
    part = train.subset(np.arange(5))
    assert len(part) == 5
    assert part.meta == train.meta
    assert np.array_equal(part.labels, train.labels[:5])


def test_dump_dataset(tmp_path):
    train, _ = gen_modular(5, "add", seed=0)
    path = dump_dataset(train, tmp_path / "train.txt")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# groklab-dataset/1"
    assert len(lines) == 1 + len(train)
    a, b, label = (int(v) for v in lines[1].split())
    assert label == (a + b) % 5

    parity, _ = gen_sparse_parity(6, 2, 8, seed=0)
    path = dump_dataset(parity, tmp_path / "parity.txt")
    bits, label = path.read_text(encoding="utf-8").splitlines()[1].split()
    assert len(bits) == 6 and set(bits) <= {"0", "1"}
    assert int(label) == sum(int(bits[i]) for i in parity.meta["subset"]) % 2
