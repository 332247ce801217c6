import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal
from pseudotrans.errors import ValidationError, DimensionError, TrainingError
from pseudotrans.numerics.mlp import MlpClassifier
from pseudotrans.numerics.losses import entropy, softmax, softmax_cross_entropy
from pseudotrans.synthetics.taskpair import TaskPairSpec, LabeledDataset, UnlabeledDataset, make_task_pair
from pseudotrans.transfer.training import TrainConfig, epoch_batches, split_streams, train_supervised
from pseudotrans.transfer.pssl import \
    SslConfig, augment, unsup_loss, train_pssl, train_pseudo_supervised, SSL_METHODS
from pseudotrans.transfer.distill import KdConfig, kd_loss, kd_train, finetune_teacher
from pseudotrans.diagnostics.metrics import accuracy


@pytest.fixture(scope="module")
def task():
    spec = TaskPairSpec(dim=4, source_classes=6, target_classes=3, source_per_class=20,
                        target_train=30, target_test=30, seed=2)
    D_s, D_t, D_test, _ = make_task_pair(spec)
    D_u = UnlabeledDataset(D_s.features[:100])
    return D_t, D_u


def small_config():
    return TrainConfig(epochs=3, batch_size=8, lr=0.05, decay_epochs=[2])


def same_weights(a, b):
    for p, q in zip(a.parameters(), b.parameters()):
        assert_array_equal(p, q)


# ------------------------------ training
def test_epoch_batches_visit_every_sample():
    X = np.arange(10.)[:, np.newaxis]
    seen = [x for epoch, x, _ in epoch_batches(X, X, 2, 4, np.random.default_rng(0)) if epoch == 1]
    assert sorted(np.concatenate(seen).ravel().tolist()) == list(range(10))
    assert [len(x) for x in seen] == [4, 4, 2]


def test_split_streams_are_reproducible():
    a, b = split_streams(np.random.default_rng(0))
    c, d = split_streams(np.random.default_rng(0))
    assert a.integers(1 << 30) == c.integers(1 << 30)
    assert b.integers(1 << 30) == d.integers(1 << 30)


def test_non_finite_loss_raises_a_training_error(task):
    D_t, _ = task
    broken = LabeledDataset(np.full_like(D_t.features, np.nan), D_t.labels, label_space=D_t.label_space)
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    with np.errstate(all="ignore"):
        with pytest.raises(TrainingError) as info:
            train_supervised(init, broken, small_config(), np.random.default_rng(0))
    assert info.value.step == 0
    assert info.value.method == "scratch"


def test_supervised_training_checks_the_head(task):
    D_t, _ = task
    with pytest.raises(ValidationError):
        train_supervised(MlpClassifier([4, 8, 5], rng=np.random.default_rng(0)), D_t, small_config(),
                         np.random.default_rng(0))


# ------------------------------ pssl
def test_augment_expectation():
    x = np.array([1., 2., -1.])
    strength, n = 2., 200000
    X = augment(np.tile(x, (n, 1)), strength, np.random.default_rng(0))
    keep = 1. - 0.1 * strength
    var = (x ** 2. + strength ** 2.) * keep - (x * keep) ** 2.
    assert np.all(np.abs(X.mean(axis=0) - x * keep) <= 5. * np.sqrt(var / n))


def test_augment_strength_range():
    assert_array_equal(augment(np.ones((3, 2)), 0., np.random.default_rng(0)), np.ones((3, 2)))
    with pytest.raises(ValidationError):
        augment(np.ones(3), 11., np.random.default_rng(0))


def test_uda_with_unit_threshold_has_no_effect():
    net = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    X = np.random.default_rng(1).standard_normal((16, 4))
    loss, grads = unsup_loss("uda", net, X, SslConfig(method="uda", beta=1.), np.random.default_rng(2))
    assert loss == 0.
    for g in grads:
        assert not np.any(g)


def test_consistency_without_augmentation_is_the_entropy():
    net = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    X = np.random.default_rng(1).standard_normal((16, 4))
    cfg = SslConfig(method="consistency", tau=1., strength=0.)
    loss, _ = unsup_loss("consistency", net, X, cfg, np.random.default_rng(2))
    assert abs(loss - entropy(net.forward(X))[0].mean()) <= 1e-12


def test_entmin_vanishes_at_saturation():
    net = MlpClassifier([3, 3], layers=[(np.eye(3), np.zeros(3))])
    loss, _ = unsup_loss("entmin", net, np.array([[50., 0., 0.], [0., 0., 60.]]), SslConfig(method="entmin"),
                         np.random.default_rng(0))
    assert 0. <= loss < 1e-12


def test_unconfident_samples_do_not_contribute():
    net = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    X = np.random.default_rng(1).standard_normal((32, 4)) * 3.
    confidence = net.predict_proba(X).max(axis=1)
    beta = np.median(confidence)
    confident = confidence > beta
    assert 0 < confident.sum() < len(X)

    cfg = SslConfig(method="pseudo_label", beta=beta)
    loss, grads = unsup_loss("pseudo_label", net, X, cfg, np.random.default_rng(2))
    loss_sub, grads_sub = unsup_loss("pseudo_label", net, X[confident], cfg, np.random.default_rng(2))
    ratio = confident.sum() / float(len(X))
    assert abs(loss - ratio * loss_sub) <= 1e-12
    for g, gsub in zip(grads, grads_sub):
        assert_allclose(g, ratio * gsub, rtol=1e-10, atol=1e-14)


def test_sharpened_targets_are_held_constant():
    net = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    X = np.random.default_rng(1).standard_normal((16, 4)) * 2.
    cfg = SslConfig(method="soft_pseudo_label", tau=0.4)
    _, grads = unsup_loss("soft_pseudo_label", net, X, cfg, np.random.default_rng(2))
    target = softmax(net.forward(X) / cfg.tau)

    def fixed_target_loss(params):
        other = net.copy()
        other.set_parameters(params)
        return softmax_cross_entropy(other.forward(X), target)[0].mean()

    def full_loss(params):
        other = net.copy()
        other.set_parameters(params)
        return unsup_loss("soft_pseudo_label", other, X, cfg, np.random.default_rng(2))[0]

    h = 1e-6
    mismatch = 0.
    params = net.parameters()
    for n, g in enumerate(grads):
        for index in list(np.ndindex(g.shape))[:6]:
            plus = [p.copy() for p in params]
            minus = [p.copy() for p in params]
            plus[n][index] += h
            minus[n][index] -= h
            numeric = (fixed_target_loss(plus) - fixed_target_loss(minus)) / (2. * h)
            assert abs(g[index] - numeric) <= 1e-6
            mismatch = max(mismatch, abs(g[index] - (full_loss(plus) - full_loss(minus)) / (2. * h)))
    # differentiating through the target would give another gradient
    assert mismatch > 1e-4


@pytest.mark.parametrize("method", SSL_METHODS)
def test_every_ssl_method_trains(task, method):
    D_t, D_u = task
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    model = train_pssl(init, D_t, D_u, SslConfig(method=method, unsup_batch=8), small_config(),
                       np.random.default_rng(1))
    assert model.widths == init.widths
    assert all(np.all(np.isfinite(p)) for p in model.parameters())


def test_zero_lambda_equals_supervised_training(task):
    D_t, D_u = task
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    pssl = train_pssl(init, D_t, D_u, SslConfig(lam=0.), small_config(), np.random.default_rng(5))
    sup = train_supervised(init, D_t, small_config(), np.random.default_rng(5))
    same_weights(pssl, sup)


def test_saturated_uda_mask_equals_supervised_training(task):
    D_t, D_u = task
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    pssl = train_pssl(init, D_t, D_u, SslConfig(method="uda", beta=1.), small_config(), np.random.default_rng(5))
    sup = train_supervised(init, D_t, small_config(), np.random.default_rng(5))
    same_weights(pssl, sup)


def test_pssl_checks_dimensions(task):
    D_t, _ = task
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    with pytest.raises(DimensionError):
        train_pssl(init, D_t, UnlabeledDataset(np.zeros((5, 2))), SslConfig(), small_config(),
                   np.random.default_rng(0))


def test_pseudo_supervised_without_pairs_is_supervised(task):
    D_t, _ = task
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    same_weights(train_pseudo_supervised(init, D_t, None, small_config(), np.random.default_rng(3)),
                 train_supervised(init, D_t, small_config(), np.random.default_rng(3)))


def test_permuted_pseudo_pairs_hurt():
    rng = np.random.default_rng(0)
    means = 4. * np.eye(3, 4)

    def draw(n):
        labels = np.arange(n) % 3
        return LabeledDataset(means[labels] + rng.standard_normal((n, 4)), labels,
                              label_space="target", n_classes=3)

    D_t, pairs, D_test = draw(9), draw(300), draw(300)
    permuted = LabeledDataset(pairs.features, (pairs.labels + 1) % 3, label_space="target", n_classes=3)
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(1))
    config = TrainConfig(epochs=5, batch_size=16, lr=0.05, decay_epochs=[])
    right = train_pseudo_supervised(init, D_t, pairs, config, np.random.default_rng(2))
    wrong = train_pseudo_supervised(init, D_t, permuted, config, np.random.default_rng(2))
    assert accuracy(right, D_test) > accuracy(wrong, D_test) + 0.3


def test_ssl_config_validation():
    with pytest.raises(ValidationError):
        SslConfig(method="mixmatch")
    with pytest.raises(ValidationError):
        SslConfig(beta=1.5)
    with pytest.raises(ValidationError):
        SslConfig(tau=0.)


# ------------------------------ distillation
def test_logit_matching_value():
    loss, _ = kd_loss("logit_matching", np.array([[1., 0.]]), np.array([[0., 1.]]))
    assert_allclose(loss, [1.])


@pytest.mark.parametrize("method", ["logit_matching", "soft_target"])
def test_self_distillation_is_free(method):
    z = np.random.default_rng(0).standard_normal((10, 5))
    loss, grad = kd_loss(method, z, z.copy(), temperature=4.)
    assert_array_equal(loss, np.zeros(10))
    assert_allclose(grad, np.zeros_like(z), atol=1e-15)


def test_soft_target_gradient():
    rng = np.random.default_rng(1)
    zs, zt = rng.standard_normal(5), rng.standard_normal(5)
    _, grad = kd_loss("soft_target", zs[np.newaxis], zt[np.newaxis], temperature=4.)
    h = 1e-6
    numeric = [(kd_loss("soft_target", (zs + h * e)[np.newaxis], zt[np.newaxis], 4.)[0][0] -
                kd_loss("soft_target", (zs - h * e)[np.newaxis], zt[np.newaxis], 4.)[0][0]) / (2. * h)
               for e in np.eye(5)]
    assert_allclose(grad[0], numeric, atol=1e-7)


def test_kd_shape_mismatch():
    with pytest.raises(DimensionError):
        kd_loss("soft_target", np.zeros((2, 3)), np.zeros((2, 4)))


def test_soft_target_ignores_a_common_logit_shift():
    rng = np.random.default_rng(2)
    zs, zt = rng.standard_normal((10, 5)), rng.standard_normal((10, 5))
    loss, grad = kd_loss("soft_target", zs, zt, temperature=4.)
    shifted, shifted_grad = kd_loss("soft_target", zs + rng.standard_normal((10, 1)) * 10.,
                                    zt + rng.standard_normal((10, 1)) * 10., temperature=4.)
    assert_allclose(shifted, loss, rtol=1e-8, atol=1e-12)
    assert_allclose(shifted_grad, grad, rtol=1e-8, atol=1e-12)


@pytest.mark.parametrize("method", ["logit_matching", "soft_target"])
def test_distillation_loss_is_non_negative(method):
    rng = np.random.default_rng(3)
    loss, _ = kd_loss(method, 5. * rng.standard_normal((200, 6)), 5. * rng.standard_normal((200, 6)))
    assert np.all(loss >= 0.)


def test_zero_lambda_distillation_equals_scratch(task):
    D_t, _ = task
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    teacher = MlpClassifier([4, 16, 3], rng=np.random.default_rng(1))
    student = kd_train(init, teacher, D_t, KdConfig(lam=0.), small_config(), np.random.default_rng(7))
    same_weights(student, train_supervised(init, D_t, small_config(), np.random.default_rng(7)))


def test_distillation_checks_the_teacher(task):
    D_t, _ = task
    init = MlpClassifier([4, 8, 3], rng=np.random.default_rng(0))
    with pytest.raises(ValidationError):
        kd_train(init, MlpClassifier([4, 16, 6], rng=np.random.default_rng(1)), D_t, KdConfig(),
                 small_config(), np.random.default_rng(0))


def test_finetune_teacher_gets_a_target_head(task):
    D_t, _ = task
    source = MlpClassifier([4, 16, 6], rng=np.random.default_rng(0))
    teacher = finetune_teacher(source, D_t, small_config(), np.random.default_rng(1))
    assert teacher.widths == [4, 16, 3]
    assert KdConfig(method="soft_target", temperature=4.).temperature == 4.


def test_zero_epoch_teacher_keeps_the_source_body(task):
    D_t, _ = task
    source = MlpClassifier([4, 16, 6], rng=np.random.default_rng(0))
    config = TrainConfig(epochs=0, batch_size=8, lr=0.05, decay_epochs=[])
    teacher = finetune_teacher(source, D_t, config, np.random.default_rng(1))
    assert teacher.widths == [4, 16, 3]
    for (W, b), (Ws, bs) in zip(teacher.layers[:-1], source.layers[:-1]):
        assert_array_equal(W, Ws)
        assert_array_equal(b, bs)
