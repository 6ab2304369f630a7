# Copyright 2026  The ivcomp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.
"""Smoke tests of the Python bindings."""

import numpy as np
import pytest

import ivcomp


def small_split(seed=3):
    cfg = ivcomp.SynthConfig()
    cfg.dim = 10
    cfg.n_speakers = 30
    cfg.utts_per_speaker = 8
    cfg.distortion = "tanh_warp"
    cfg.seed = seed
    split = ivcomp.generate_split(cfg, 6, 3, 4)
    for k in ("train", "enroll", "test"):
        split[k] = ivcomp.length_normalize(split[k])
    return split


def test_corpus_round_trip(tmp_path):
    x = np.arange(12, dtype=float).reshape(4, 3) + 1.0
    c = ivcomp.LabeledCorpus(["a", "a", "b", "b"], ["u1", "u2", "u3", "u4"], x)
    assert len(c) == 4 and c.dim == 3 and c.num_speakers == 2
    assert list(c.labels) == [0, 0, 1, 1]
    np.testing.assert_array_equal(c.x, x)
    ivcomp.write_corpus(c, tmp_path / "c.txt")
    assert ivcomp.read_corpus(tmp_path / "c.txt") == c
    n = ivcomp.length_normalize(c)
    np.testing.assert_allclose(np.linalg.norm(n.x, axis=1), 1.0)


def test_duplicate_utterance_raises():
    with pytest.raises(ivcomp.FormatError):
        ivcomp.LabeledCorpus(["a", "b"], ["u", "u"], np.zeros((2, 2)) + 1.0)


def test_generator_is_deterministic():
    a, b = small_split(), small_split()
    assert a["train"] == b["train"]
    assert a["trials"] == b["trials"]
    assert len(a["trials"]) == 6 * 6 * 4


def test_lda_whitens_within_scatter():
    split = small_split()
    train = split["train"]
    lda = ivcomp.fit_lda(train, 5)
    assert lda.projection.shape == (10, 5)
    y = lda.transform(train.x)
    assert y.shape == (len(train), 5)
    np.testing.assert_allclose(lda.transform(train.x[0]), y[0])
    # Within-class scatter of the projections, normalized as in training.
    labels = np.asarray(train.labels)
    sw = np.zeros((5, 5))
    for k in np.unique(labels):
        d = y[labels == k] - y[labels == k].mean(axis=0)
        sw += d.T @ d
    sw /= len(train)
    w = lda.projection
    np.testing.assert_allclose(sw + lda.ridge * w.T @ w, np.eye(5), atol=1e-8)


def test_plda_fit_and_score():
    split = small_split()
    model, loglik = ivcomp.fit_plda(split["train"], 5)
    assert len(loglik) == 6
    assert all(b >= a - 1e-9 for a, b in zip(loglik, loglik[1:]))
    within, between = model.covariances()
    assert within.shape == between.shape == (10, 10)
    x = split["test"].x
    same = model.score(x[0], 1, x[1])
    assert np.isfinite(same)


def test_dda_training_and_compensation():
    split = small_split()
    train = split["train"]
    arch = ivcomp.DdaArchitecture(10, 16, 4, train.num_speakers)
    cfg = ivcomp.TrainConfig()
    cfg.epochs = 3
    cfg.batch_size = 32
    cfg.lambda_ = 0.1
    model, history = ivcomp.train_dda(train, arch, cfg)
    assert len(history) == 3
    for h in history:
        assert h.total == pytest.approx(h.softmax + 0.1 * h.center, rel=1e-12)
    e = model.compensate(split["test"].x)
    assert e.shape == (len(split["test"]), 4)
    assert model.centers.shape == (train.num_speakers, 4)


def test_eer_and_roc():
    report = ivcomp.compute_eer([3.0, 2.0, 1.0, 0.0], [True, True, False, False])
    assert report["eer_percent"] == 0.0
    assert report["n_target"] == 2 and report["n_nontarget"] == 2
    roc = ivcomp.roc_points([0.5, 0.2], [True, False])
    assert all(0.0 <= far <= 1.0 and 0.0 <= frr <= 1.0 for _, far, frr in roc)


def test_grid_and_model_files(tmp_path):
    split = small_split()
    opts = ivcomp.BackendOptions()
    opts.out_dim = 4
    opts.dda_hidden = 12
    opts.dda.epochs = 2
    opts.dda.batch_size = 32
    opts.plda_iters = 3
    cells = ivcomp.run_grid(split["train"], split["enroll"], split["test"],
                            split["trials"], opts)
    assert len(cells) == 9
    assert {(c["method"], c["scorer"]) for c in cells} == {
        (m, s) for m in ("none", "lda", "dda") for s in ("cos", "euc", "plda")}
    lda = ivcomp.fit_lda(split["train"], 4)
    ivcomp.save_model(lda, tmp_path / "lda.mdl")
    back = ivcomp.load_model(tmp_path / "lda.mdl")
    assert isinstance(back, ivcomp.LdaModel)
    np.testing.assert_array_equal(back.projection, lda.projection)
    stats = ivcomp.distance_stats(split["test"])
    assert stats["within_mean"] < stats["between_mean"]
