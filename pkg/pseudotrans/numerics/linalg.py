from __future__ import print_function
import warnings
import numpy as np
from scipy.linalg import eigh
from pseudotrans.errors import ValidationError, DimensionError

SYMMETRY_TOL = 1e-8
EIGEN_CLAMP = 1e-8
COV_EPSILON = 1e-6


def sqrt_clamped(A):
    """
    square root of a symmetric matrix known to be PSD up to rounding,
    negative eigenvalues are set to 0 whatever their size
    """
    A = 0.5 * (A + A.T)
    vals, vecs = eigh(A)
    vals = np.clip(vals, 0., None)
    S = (vecs * np.sqrt(vals)).dot(vecs.T)
    return 0.5 * (S + S.T)


def matrix_sqrt_psd(A):
    """
    principal square root of a symmetric positive semi-definite matrix
    eigenvalues in [-1e-8, 0) are treated as 0

    :param A: 2D array (d x d), symmetric within 1e-8
    :return S: symmetric PSD matrix with S.dot(S) = A
    """
    A = np.asarray(A, float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError('expected a square matrix, got shape {}'.format(A.shape))
    if not np.all(np.isfinite(A)):
        raise ValidationError('matrix contains non finite values')
    asym = np.abs(A - A.T).max() if A.size else 0.
    if asym > SYMMETRY_TOL:
        raise ValidationError('matrix is not symmetric (max |A - A.T| = {})'.format(asym))

    vals = eigh(0.5 * (A + A.T), eigvals_only=True)
    if vals.size and vals.min() < -EIGEN_CLAMP:
        raise ValidationError('matrix is not positive semi-definite (eigenvalue {})'.format(vals.min()))
    return sqrt_clamped(A)


def fit_gaussian(samples, epsilon=COV_EPSILON):
    """
    mean and unbiased covariance of a sample set
    a singular covariance (rank < d, including N <= d) is regularized by epsilon * I

    :param samples: 2D array (N x d)
    :return mean: 1D array (d)
    :return cov: 2D array (d x d)
    """
    samples = np.asarray(samples, float)
    if samples.ndim != 2:
        raise DimensionError('expected a 2D array of samples, got shape {}'.format(samples.shape))
    N, d = samples.shape
    if N == 0:
        raise ValidationError('cannot fit a gaussian to an empty sample set')

    mean = samples.mean(axis=0)
    if N > 1:
        cov = np.cov(samples, rowvar=False, ddof=1).reshape((d, d))
    else:
        cov = np.zeros((d, d))
    cov = 0.5 * (cov + cov.T)

    if np.linalg.matrix_rank(cov) < d:
        warnings.warn('singular covariance (N={}, d={}), adding {} * I'.format(N, d, epsilon))
        cov = cov + epsilon * np.eye(d)
    return mean, cov
