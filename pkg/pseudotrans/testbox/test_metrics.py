import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy.stats import ortho_group
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics.mlp import MlpClassifier
from pseudotrans.synthetics.taskpair import LabeledDataset
from pseudotrans.diagnostics.metrics import \
    frechet_distance, frechet_distance_from_moments, class_confidence, confidence_filter, \
    accuracy, pearson, spearman


# ------------------------------ frechet distance
def test_frechet_distance_closed_form_1d():
    assert abs(frechet_distance_from_moments(0., 1., 3., 4.) - 10.) <= 1e-6
    # [-1, 1] : mean 0, var 2 ; [1, 5] : mean 3, var 8
    assert abs(frechet_distance([-1., 1.], [1., 5.]) - 11.) <= 1e-9


def test_frechet_distance_to_itself():
    X = np.random.default_rng(0).standard_normal((200, 5))
    assert frechet_distance(X, X) <= 1e-6


def test_frechet_distance_symmetry_and_rotation():
    rng = np.random.default_rng(1)
    X = rng.standard_normal((300, 4)).dot(rng.standard_normal((4, 4)))
    Y = rng.standard_normal((300, 4)) * 2. + 1.
    d = frechet_distance(X, Y)
    assert abs(d - frechet_distance(Y, X)) <= 1e-8
    Q = ortho_group.rvs(4, random_state=2)
    assert abs(d - frechet_distance(X.dot(Q), Y.dot(Q))) <= 1e-6


def test_frechet_distance_of_shifted_gaussians():
    S = np.diag([1., 2., 3.])
    assert abs(frechet_distance_from_moments(np.zeros(3), S, np.ones(3), S) - 3.) <= 1e-9


def test_frechet_distance_errors():
    with pytest.raises(ValidationError):
        frechet_distance(np.zeros((1, 3)), np.zeros((5, 3)))
    with pytest.raises(DimensionError):
        frechet_distance(np.zeros((5, 3)), np.zeros((5, 2)))
    with pytest.raises(DimensionError):
        frechet_distance_from_moments(np.zeros(2), np.eye(2), np.zeros(3), np.eye(3))


# ------------------------------ confidence filtering
def saturated_classifier(d, K_s, winner):
    b = np.zeros(K_s)
    b[winner] = 100.
    return MlpClassifier([d, K_s], layers=[(np.zeros((K_s, d)), b)])


def test_saturated_classifier_keeps_one_class():
    D_t = LabeledDataset(np.random.default_rng(0).standard_normal((20, 3)), np.arange(20) % 4, label_space="target")
    C = saturated_classifier(3, 6, 3)
    assert confidence_filter(C, D_t, 0.001) == [3]
    assert confidence_filter(C, D_t, 1.0) == []


def test_filter_threshold_zero_keeps_every_class():
    D_t = LabeledDataset(np.random.default_rng(0).standard_normal((20, 3)), np.arange(20) % 4, label_space="target")
    C = MlpClassifier([3, 8, 6], rng=np.random.default_rng(1))
    assert confidence_filter(C, D_t, 0.) == list(range(6))
    conf = class_confidence(C, D_t)
    assert conf.shape == (4, 6)
    assert_allclose(conf.sum(axis=1), np.ones(4), atol=1e-12)


# ------------------------------ accuracy and correlations
class RandomGuess(object):
    def __init__(self, K, rng):
        self.K = K
        self.rng = rng

    def predict(self, X):
        return self.rng.integers(self.K, size=len(X))


def test_accuracy_of_random_guesses():
    D = LabeledDataset(np.zeros((1000, 2)), np.arange(1000) % 4, label_space="target")
    acc = accuracy(RandomGuess(4, np.random.default_rng(0)), D)
    assert abs(acc - 0.25) <= 4. * np.sqrt(0.25 * 0.75 / 1000)


def test_accuracy_of_a_perfect_classifier():
    D = LabeledDataset(np.eye(3), [0, 1, 2], label_space="target")
    C = MlpClassifier([3, 3], layers=[(np.eye(3), np.zeros(3))])
    assert accuracy(C, D) == 1.


def test_rank_correlation():
    assert_allclose(float(spearman([1, 2, 3], [3, 1, 2])), -0.5, atol=1e-12)
    assert_allclose(float(spearman([1, 2, 3, 4], [10, 20, 30, 400])), 1., atol=1e-12)
    assert_allclose(float(pearson([1, 2, 3], [2, 4, 6])), 1., atol=1e-12)


def test_degenerate_correlations():
    r = pearson([1, 2, 3], [5, 5, 5])
    assert r.degenerate
    assert r.to_dict()['rho'] is None
    with pytest.raises(ValidationError):
        spearman([1, 2], [2, 1])


def test_non_finite_inputs_are_degenerate():
    for corr in [pearson, spearman]:
        r = corr([1., 2., np.nan], [1., 2., 3.])
        assert r.degenerate and r.to_dict()['rho'] is None
        assert corr([1., 2., 3.], [1., np.inf, 3.]).degenerate
        assert corr([4., 4., 4.], [1., 2., 3.]).degenerate


# ------------------------------ large scale singular covariances
@pytest.mark.parametrize("scale", [1e3, 1e4])
def test_frechet_distance_of_few_large_samples(scale):
    rng = np.random.default_rng(3)
    X = scale * rng.standard_normal((3, 16))
    Y = scale * rng.standard_normal((10, 16))
    with pytest.warns(UserWarning):
        d = frechet_distance(X, Y)
    assert np.isfinite(d) and d >= 0.
    with pytest.warns(UserWarning):
        assert frechet_distance(X, X) <= 1e-6 * scale ** 2.


def test_confidence_filter_shrinks_with_the_threshold():
    D_t = LabeledDataset(np.random.default_rng(4).standard_normal((40, 3)), np.arange(40) % 4, label_space="target")
    C = MlpClassifier([3, 8, 6], rng=np.random.default_rng(5))
    kept = [set(confidence_filter(C, D_t, t)) for t in np.linspace(0., 1., 21)]
    for larger, smaller in zip(kept[:-1], kept[1:]):
        assert smaller <= larger
    assert kept[0] == set(range(6)) and kept[-1] == set()
