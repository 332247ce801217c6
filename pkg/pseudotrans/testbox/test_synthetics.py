import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.synthetics.taskpair import \
    TaskPairSpec, LabeledDataset, UnlabeledDataset, make_task_pair, load_dataset, default_mixing
from pseudotrans.synthetics.generator import \
    ConditionalGenerator, fit_source_generator, load_generator, sample_generator
from pseudotrans.numerics.mlp import MlpClassifier
from pseudotrans.synthetics.source import train_source_classifier
from pseudotrans.transfer.training import TrainConfig
from pseudotrans.diagnostics.metrics import accuracy, frechet_distance


def small_spec(**kwargs):
    d = dict(dim=4, source_classes=6, target_classes=3, source_per_class=50,
             target_train=30, target_test=30, seed=7)
    d.update(kwargs)
    return TaskPairSpec(**d)


# ------------------------------ task pairs
def test_task_pair_shapes_and_label_spaces():
    D_s, D_t, D_test, truth = make_task_pair(small_spec())
    assert (len(D_s), D_s.dim, D_s.K) == (300, 4, 6)
    assert (len(D_t), D_t.K, len(D_test)) == (30, 3, 30)
    assert D_s.label_space != D_t.label_space
    assert_array_equal(D_t.class_counts(), [10, 10, 10])
    assert truth.mixing.shape == (3, 6)
    assert_allclose(truth.mixing.sum(axis=1), np.ones(3), atol=1e-12)


def test_task_pair_determinism():
    a = make_task_pair(small_spec(sigma_align=0.5))
    b = make_task_pair(small_spec(sigma_align=0.5))
    for D1, D2 in zip(a[:3], b[:3]):
        assert_array_equal(D1.features, D2.features)
        assert_array_equal(D1.labels, D2.labels)
    c = make_task_pair(small_spec(sigma_align=0.5, seed=8))
    assert not np.array_equal(a[0].features, c[0].features)


def test_identity_mixing_reuses_the_source_means():
    M = np.zeros((3, 6))
    M[[0, 1, 2], [0, 1, 2]] = 1.
    _, _, _, truth = make_task_pair(small_spec(mixing=M, sigma_align=0.))
    assert_allclose(truth.target_means, truth.source_means[:3], rtol=1e-15, atol=0.)
    assert_allclose(truth.target_covs, truth.source_covs[:3], rtol=1e-15, atol=0.)


def test_sigma_align_only_moves_the_target_means():
    D_s0, D_t0, _, truth0 = make_task_pair(small_spec(sigma_align=0.))
    D_s1, D_t1, _, truth1 = make_task_pair(small_spec(sigma_align=1.))
    assert_array_equal(D_s0.features, D_s1.features)
    assert_array_equal(truth0.mixing, truth1.mixing)
    assert_array_equal(D_t0.labels, D_t1.labels)
    assert not np.allclose(truth0.target_means, truth1.target_means)


def test_target_class_means_follow_the_construction():
    spec = TaskPairSpec(dim=16, source_classes=20, target_classes=8, source_per_class=1,
                        target_train=8000, target_test=8, seed=3, sigma_align=0.25)
    _, D_t, _, truth = make_task_pair(spec)
    for k, I in enumerate(D_t.groups()):
        sigma = np.sqrt(np.diag(truth.target_covs[k]))
        error = np.abs(D_t.features[I].mean(axis=0) - truth.target_means[k])
        assert np.all(error <= 5. * sigma / np.sqrt(len(I)))


def test_default_mixing_support():
    M = default_mixing(8, 20, np.random.default_rng(0), support=2)
    assert_array_equal((M > 0).sum(axis=1), 2 * np.ones(8, int))
    # disjoint supports
    assert (M > 0).sum(axis=0).max() == 1


def test_bad_specs():
    with pytest.raises(ValidationError):
        TaskPairSpec(sigma_align=-1.)
    with pytest.raises(DimensionError):
        TaskPairSpec(source_classes=4, target_classes=2, mixing=np.ones((2, 3)) / 3.)
    with pytest.raises(ValidationError):
        TaskPairSpec(source_classes=3, target_classes=2, mixing=np.ones((2, 3)))


def test_dataset_files(tmp_path):
    D_s, _, _, _ = make_task_pair(small_spec())
    filename = str(tmp_path / "source.json")
    D_s.write(filename)
    loaded = load_dataset(filename)
    assert isinstance(loaded, LabeledDataset)
    assert_array_equal(loaded.features, D_s.features)
    assert loaded.label_space == D_s.label_space

    U = UnlabeledDataset(D_s.features[:5], provenance=[4, 3, 2, 1, 0])
    filename = str(tmp_path / "unlabeled.json")
    U.write(filename)
    loaded = load_dataset(filename)
    assert isinstance(loaded, UnlabeledDataset)
    assert_array_equal(loaded.provenance, [4, 3, 2, 1, 0])


def test_dataset_split():
    D_s, _, _, _ = make_task_pair(small_spec())
    kept, held = D_s.split(0.1, np.random.default_rng(0))
    assert len(kept) == 270 and len(held) == 30
    assert D_s.split(0., np.random.default_rng(0)) == (D_s, None)


def test_labels_out_of_range():
    with pytest.raises(ValidationError):
        LabeledDataset(np.zeros((2, 3)), [0, 3], label_space="x", n_classes=3)


# ------------------------------ source classifier
def test_source_classifier_separable_fixture():
    rng = np.random.default_rng(0)
    X = np.vstack([rng.standard_normal((100, 2)) * 0.5 - 3., rng.standard_normal((100, 2)) * 0.5 + 3.])
    D = LabeledDataset(X, np.repeat([0, 1], 100), label_space="source")
    C = train_source_classifier(D, [2, 16, 2], np.random.default_rng(1),
                                config=TrainConfig(epochs=10, batch_size=16, lr=0.05, decay_epochs=[]))
    assert accuracy(C, D) >= 0.99


def test_source_classifier_checks_the_arch():
    D_s, _, _, _ = make_task_pair(small_spec())
    with pytest.raises(ValidationError):
        train_source_classifier(D_s, [4, 8, 5], np.random.default_rng(0))
    with pytest.raises(DimensionError):
        train_source_classifier(D_s, [3, 8, 6], np.random.default_rng(0))


def test_zero_epochs_leave_the_initialization():
    D_s, _, _, _ = make_task_pair(small_spec())
    config = TrainConfig(epochs=0, batch_size=16, lr=0.05, decay_epochs=[])
    C = train_source_classifier(D_s, [4, 8, 6], np.random.default_rng(3), config=config)
    init = MlpClassifier([4, 8, 6], rng=np.random.default_rng(3))
    for a, b in zip(C.parameters(), init.parameters()):
        assert_array_equal(a, b)


def test_zero_epochs_give_chance_accuracy():
    rng = np.random.default_rng(0)
    X = np.vstack([rng.standard_normal((100, 2)) * 0.5 - 3., rng.standard_normal((100, 2)) * 0.5 + 3.])
    D = LabeledDataset(X, np.repeat([0, 1], 100), label_space="source")
    config = TrainConfig(epochs=0, batch_size=16, lr=0.05, decay_epochs=[])
    accs = [accuracy(train_source_classifier(D, [2, 16, 2], np.random.default_rng(seed), config=config), D)
            for seed in range(40)]
    # output rows are exchangeable at initialization
    assert abs(np.mean(accs) - 0.5) <= 4. * 0.5 / np.sqrt(40)


# ------------------------------ generator
def test_fitted_means_are_consistent():
    spec = small_spec(source_per_class=2000)
    D_s, _, _, truth = make_task_pair(spec)
    G = fit_source_generator(D_s)
    for c in range(D_s.K):
        sigma = np.sqrt(np.diag(truth.source_covs[c]))
        assert np.all(np.abs(G.means[c] - truth.source_means[c]) <= 5. * sigma / np.sqrt(2000))


@pytest.mark.parametrize("mode", ["interpolate", "mixture"])
def test_one_hot_sampling(mode):
    means = np.array([[0., 0.], [10., -5.], [-3., 4.]])
    covs = np.array([np.eye(2), np.diag([4., 1.]), np.eye(2) * 0.25])
    G = ConditionalGenerator(means, covs, mode=mode)
    n = 5000
    X = sample_generator(G, np.array([0., 1., 0.]), n, np.random.default_rng(0))
    assert X.shape == (n, 2)
    assert np.all(np.abs(X.mean(axis=0) - means[1]) <= 5. * np.array([2., 1.]) / np.sqrt(n))


def test_interpolated_moments():
    means = np.array([[0., 0.], [2., 2.]])
    covs = np.array([np.eye(2), 3. * np.eye(2)])
    G = ConditionalGenerator(means, covs)
    mean, cov = G.conditional_moments(np.array([[0.5, 0.5]]))
    assert_allclose(mean[0], [1., 1.])
    assert_allclose(cov[0], 2. * np.eye(2))


def test_interpolated_moments_are_continuous_in_the_label():
    D_s, _, _, _ = make_task_pair(small_spec())
    G = fit_source_generator(D_s, mode="interpolate")
    y = np.random.default_rng(1).dirichlet(np.ones(6))
    scale = np.abs(G.means).max() + np.abs(G.covs).max()
    for eps in [1e-3, 1e-6]:
        z = y + eps * (np.eye(6)[0] - y)
        (m0, m1), (c0, c1) = G.conditional_moments(np.array([y, z]))
        assert np.abs(m1 - m0).max() <= 2. * eps * scale
        assert np.abs(c1 - c0).max() <= 2. * eps * scale


def test_generator_sampling_is_deterministic():
    D_s, _, _, _ = make_task_pair(small_spec())
    G = fit_source_generator(D_s, mode="mixture")
    Y = np.random.default_rng(0).dirichlet(np.ones(6), size=20)
    assert_array_equal(G.sample_batch(Y, np.random.default_rng(5)), G.sample_batch(Y, np.random.default_rng(5)))


def test_generator_rejects_bad_inputs():
    with pytest.raises(ValidationError):
        ConditionalGenerator(np.zeros((2, 2)), np.array([np.eye(2), [[1., 1.], [0., 1.]]]))
    with pytest.raises(ValidationError):
        ConditionalGenerator(np.zeros((2, 2)), np.array([np.eye(2), -np.eye(2)]))
    G = ConditionalGenerator(np.zeros((2, 2)), np.array([np.eye(2), np.eye(2)]))
    with pytest.raises(ValidationError):
        G.sample_batch(np.array([[0.7, 0.7]]), np.random.default_rng(0))
    with pytest.raises(DimensionError):
        G.sample_batch(np.array([[0.2, 0.3, 0.5]]), np.random.default_rng(0))
    D = LabeledDataset(np.zeros((3, 2)), [0, 0, 2], label_space="source")
    with pytest.raises(ValidationError):
        fit_source_generator(D)


def test_generator_samples_look_like_held_out_data():
    D_s, _, _, _ = make_task_pair(small_spec(source_per_class=400, seed=11))
    rng = np.random.default_rng(0)
    perm = rng.permutation(len(D_s))
    train, held = D_s.subset(perm[:len(D_s) // 2]), D_s.subset(perm[len(D_s) // 2:])

    G = fit_source_generator(train)
    Y = np.eye(D_s.K)[held.labels]
    synthetic = G.sample_batch(Y, rng)

    half = len(train) // 2
    baseline = frechet_distance(train.features[:half], train.features[half:])
    assert frechet_distance(synthetic, held.features) <= 3. * baseline


def test_generator_file(tmp_path):
    D_s, _, _, _ = make_task_pair(small_spec())
    G = fit_source_generator(D_s, mode="mixture")
    filename = str(tmp_path / "generator.json")
    G.write(filename)
    loaded = load_generator(filename)
    assert loaded.mode == "mixture"
    assert_array_equal(loaded.means, G.means)
    assert_array_equal(loaded.covs, G.covs)
