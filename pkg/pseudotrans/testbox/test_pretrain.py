import numpy as np
import pytest
from numpy.testing import assert_array_equal
from pseudotrans.errors import ValidationError
from pseudotrans.numerics.mlp import MlpClassifier
from pseudotrans.synthetics.generator import ConditionalGenerator
from pseudotrans.transfer.pcs import PseudoLabelSet
from pseudotrans.transfer.pretrain import PretrainConfig, pseudo_pretrain, offline_dataset, target_initialization


def separated_generator(K=4, dim=4):
    means = 6. * np.eye(K, dim)
    return ConditionalGenerator(means, np.array([np.eye(dim)] * K))


def same_weights(a, b):
    for p, q in zip(a.parameters(), b.parameters()):
        assert_array_equal(p, q)


# ------------------------------
def test_default_decay_at_sixty_percent():
    assert PretrainConfig(steps=1000).decay_steps == [600]


def test_zero_steps_returns_the_initialization():
    G = separated_generator()
    init = MlpClassifier([4, 8, 4], rng=np.random.default_rng(0))
    out = pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=0), "uniform",
                          np.random.default_rng(1), init=init)
    same_weights(out, init)

    fresh = pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=0), "uniform", np.random.default_rng(2))
    same_weights(fresh, MlpClassifier([4, 8, 4], rng=np.random.default_rng(2)))


def test_uniform_pretraining_learns_the_source_task():
    G = separated_generator()
    config = PretrainConfig(steps=300, batch_size=32, lr=0.05)
    model = pseudo_pretrain([4, 16, 4], G, 4, config, "uniform", np.random.default_rng(0))

    rng = np.random.default_rng(1)
    labels = rng.integers(4, size=400)
    X = G.sample_batch(np.eye(4)[labels], rng)
    assert np.mean(model.predict(X) == labels) >= 0.9


def test_online_and_offline_runs_are_equivalent():
    G = separated_generator()
    config = PretrainConfig(steps=20, batch_size=8, lr=0.05)
    init = MlpClassifier([4, 8, 4], rng=np.random.default_rng(0))

    log = []
    online = pseudo_pretrain([4, 8, 4], G, 4, config, "uniform", np.random.default_rng(1),
                             batch_log=log, init=init)
    assert len(log) == 20
    replay = (np.concatenate([X for X, _ in log]), np.concatenate([T for _, T in log]))
    offline = pseudo_pretrain([4, 8, 4], G, 4, config, "offline", np.random.default_rng(99),
                              offline_data=replay, shuffle=False, init=init)
    same_weights(online, offline)


def test_offline_strategy_generates_its_dataset():
    G = separated_generator()
    a = pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=10, batch_size=8), "offline",
                        np.random.default_rng(3))
    b = pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=10, batch_size=8), "offline",
                        np.random.default_rng(3))
    same_weights(a, b)


def test_offline_dataset_is_a_fixed_share_of_the_draws():
    G = separated_generator()
    assert PretrainConfig(steps=2000, batch_size=64).offline_size == 1280
    assert PretrainConfig(steps=10, batch_size=8).offline_size == 8
    X, T = offline_dataset(G, PretrainConfig(steps=10, batch_size=8, offline_size=20), np.random.default_rng(0))
    assert X.shape == (20, 4) and T.shape == (20, 4)
    assert_array_equal(T.sum(axis=1), np.ones(20))
    with pytest.raises(ValidationError):
        PretrainConfig(offline_size=0)


def test_uniform_label_frequencies():
    G = separated_generator()
    steps, batch, K = 50, 32, 4
    log = []
    pseudo_pretrain([4, 8, 4], G, K, PretrainConfig(steps=steps, batch_size=batch), "uniform",
                    np.random.default_rng(6), batch_log=log)
    counts = np.concatenate([T for _, T in log]).sum(axis=0)
    N, p = steps * batch, 1. / K
    assert np.all(np.abs(counts - N * p) <= 4. * np.sqrt(N * p * (1. - p)))


def test_filtered_batches_stay_in_the_kept_classes():
    G = separated_generator()
    log = []
    pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=10, batch_size=16), "filtered",
                    np.random.default_rng(0), classes=[1, 3], batch_log=log)
    T = np.concatenate([T for _, T in log])
    assert_array_equal(T[:, [0, 2]], np.zeros((160, 2)))
    with pytest.raises(ValidationError):
        pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=1), "filtered", np.random.default_rng(0))


def test_pcs_batches_use_the_pseudo_labels():
    G = separated_generator()
    soft = np.array([[0.5, 0.5, 0., 0.], [0., 0., 0.1, 0.9]])
    pseudo = PseudoLabelSet(soft, provenance=[0, 1])
    log = []
    pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=5, batch_size=4), "pcs",
                    np.random.default_rng(0), pseudo=pseudo, batch_log=log)
    for _, T in log:
        for row in T:
            assert any(np.array_equal(row, s) for s in soft)
    with pytest.raises(ValidationError):
        pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=1), "pcs", np.random.default_rng(0))


def test_bad_strategy_and_head():
    G = separated_generator()
    with pytest.raises(ValidationError):
        pseudo_pretrain([4, 8, 4], G, 4, PretrainConfig(steps=1), "bogus", np.random.default_rng(0))
    with pytest.raises(ValidationError):
        pseudo_pretrain([4, 8, 3], G, 4, PretrainConfig(steps=1), "uniform", np.random.default_rng(0))


def test_target_initialization_swaps_the_head():
    pretrained = MlpClassifier([4, 8, 8, 20], rng=np.random.default_rng(0))
    model = target_initialization(pretrained, 5, PretrainConfig(init_scale=0.01), np.random.default_rng(1))
    assert model.widths == [4, 8, 8, 5]
    for (W, b), (W2, b2) in zip(pretrained.layers[:-1], model.layers[:-1]):
        assert_array_equal(W, W2)
        assert_array_equal(b, b2)
    assert np.abs(model.layers[-1][0]).max() < 0.1
