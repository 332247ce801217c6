from __future__ import print_function
import warnings
import numpy as np
from scipy.stats import rankdata
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics.linalg import fit_gaussian, sqrt_clamped
from pseudotrans.numerics.losses import softmax
from pseudotrans.defaults import DEFAULT_FILTER_THRESHOLD

TRACE_RESIDUE_TOL = 1e-6  # relative to max(1, Tr(S1 + S2))


# ------------------------------ frechet distance
def _as_samples(X, name):
    X = np.asarray(X, float)
    if X.ndim == 1:
        X = X[:, np.newaxis]
    if X.ndim != 2:
        raise DimensionError('{} must be a 2D sample array, got shape {}'.format(name, X.shape))
    if X.shape[0] < 2:
        raise ValidationError('{} needs at least 2 samples, got {}'.format(name, X.shape[0]))
    return X


def frechet_distance_from_moments(mean1, cov1, mean2, cov2):
    """
    2-Wasserstein distance between N(mean1, cov1) and N(mean2, cov2)
        |m1 - m2|^2 + Tr(S1 + S2 - 2 (S1^1/2 S2 S1^1/2)^1/2)
    """
    mean1, mean2 = np.atleast_1d(mean1).astype(float), np.atleast_1d(mean2).astype(float)
    cov1, cov2 = np.atleast_2d(cov1).astype(float), np.atleast_2d(cov2).astype(float)
    if mean1.shape != mean2.shape or cov1.shape != cov2.shape or cov1.shape != (mean1.size, mean1.size):
        raise DimensionError('moment shapes do not match : {} {} {} {}'.format(
            mean1.shape, cov1.shape, mean2.shape, cov2.shape))

    diff = mean1 - mean2
    if not (np.all(np.isfinite(cov1)) and np.all(np.isfinite(cov2))):
        raise ValidationError('covariances contain non finite values')

    # rounding leaves negative eigenvalues that scale with the covariances
    s1 = sqrt_clamped(cov1)
    product = s1.dot(cov2).dot(s1)
    covmean = sqrt_clamped(product)

    residue = np.trace(cov1) + np.trace(cov2) - 2. * np.trace(covmean)
    if residue < 0.:
        if residue < -TRACE_RESIDUE_TOL * max(1., np.trace(cov1) + np.trace(cov2)):
            warnings.warn('negative trace residue {} clamped to 0'.format(residue))
        residue = 0.
    return float(diff.dot(diff) + residue)


def frechet_distance(X, Y):
    """
    frechet distance between gaussians fitted to two sample sets (raw features)
    :param X: 2D array (N x d), N >= 2
    :param Y: 2D array (M x d), M >= 2
    :return: float >= 0
    """
    X = _as_samples(X, "X")
    Y = _as_samples(Y, "Y")
    if X.shape[1] != Y.shape[1]:
        raise DimensionError('X has {} features, Y has {}'.format(X.shape[1], Y.shape[1]))
    m1, s1 = fit_gaussian(X)
    m2, s2 = fit_gaussian(Y)
    return frechet_distance_from_moments(m1, s1, m2, s2)


# ------------------------------ confidence filtering
def class_confidence(C_s, D_t):
    """mean softmax output of C_s over the samples of each target class, K_t x K_s"""
    P = softmax(C_s.forward(D_t.features))
    conf = np.zeros((D_t.K, P.shape[1]))
    for k, I in enumerate(D_t.groups()):
        if len(I):
            conf[k] = P[I].mean(axis=0)
    return conf


def confidence_filter(C_s, D_t, threshold=DEFAULT_FILTER_THRESHOLD):
    """
    source classes whose mean predicted probability exceeds threshold
    for at least one target class
    :return: sorted list of source class indices
    """
    conf = class_confidence(C_s, D_t)
    return [int(c) for c in np.flatnonzero((conf > threshold).any(axis=0))]


# ------------------------------ accuracy
def accuracy(C, dataset):
    """fraction of argmax-correct predictions, C needs a predict(features) method"""
    predictions = np.asarray(C.predict(dataset.features))
    return float(np.mean(predictions == dataset.labels))


# ------------------------------ correlations
class Correlation(object):
    """correlation coefficient, degenerate when one of the inputs is constant or not finite"""

    def __init__(self, rho, degenerate=False, n=0):
        self.rho = rho
        self.degenerate = degenerate
        self.n = n

    def __str__(self):
        if self.degenerate:
            return "degenerate (n={})".format(self.n)
        return "{:.4f} (n={})".format(self.rho, self.n)

    def __float__(self):
        return float(self.rho)

    def to_dict(self):
        return {"rho": None if self.degenerate else self.rho,
                "degenerate": self.degenerate, "n": self.n}


def _paired(x, y):
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if x.ndim != 1 or x.shape != y.shape:
        raise DimensionError('expected two 1D arrays of equal length, got {} and {}'.format(x.shape, y.shape))
    if x.size < 3:
        raise ValidationError('need at least 3 pairs, got {}'.format(x.size))
    return x, y


def pearson(x, y):
    x, y = _paired(x, y)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        return Correlation(np.nan, degenerate=True, n=x.size)
    if np.ptp(x) == 0. or np.ptp(y) == 0.:
        return Correlation(np.nan, degenerate=True, n=x.size)
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = dx.dot(dx), dy.dot(dy)
    rho = dx.dot(dy) / np.sqrt(sxx * syy)
    return Correlation(float(np.clip(rho, -1., 1.)), n=x.size)


def spearman(x, y):
    """pearson correlation of the rank vectors, ties get average ranks"""
    x, y = _paired(x, y)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        return Correlation(np.nan, degenerate=True, n=x.size)
    return pearson(rankdata(x), rankdata(y))
