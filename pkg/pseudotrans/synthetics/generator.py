from __future__ import print_function
import json
import numpy as np
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics.linalg import fit_gaussian, matrix_sqrt_psd
from pseudotrans.numerics.losses import check_simplex, SIMPLEX_TOL
from pseudotrans.defaults import DEFAULT_GENERATOR_MODE, DEFAULT_COV_EPSILON

"""
class conditional gaussian generator, fitted once on the labeled source data,
then used in place of it

conditioning on a soft label y (K_s simplex)
    interpolate : x ~ N(sum_c y_c mu_c, sum_c y_c S_c)
    mixture     : c ~ Categorical(y), x ~ N(mu_c, S_c)
"""

GENERATOR_MODES = ["interpolate", "mixture"]


def _factor(covs):
    """lower factors L with L L^T = cov, for a stack of covariance matrices"""
    try:
        return np.linalg.cholesky(covs)
    except np.linalg.LinAlgError:
        # singular members, fall back to symmetric square roots
        return np.array([matrix_sqrt_psd(c) for c in covs])


class ConditionalGenerator(object):

    def __init__(self, means, covs, mode=DEFAULT_GENERATOR_MODE):
        """
        :param means: 2D array (K_s x d), class means
        :param covs: 3D array (K_s x d x d), class covariances, symmetric PSD
        :param mode: string, one of GENERATOR_MODES
        """
        means = np.asarray(means, float)
        covs = np.asarray(covs, float)
        if mode not in GENERATOR_MODES:
            raise ValidationError('mode must be one of {}, got {}'.format(GENERATOR_MODES, mode))
        if means.ndim != 2 or means.shape[0] < 2:
            raise ValidationError('need a K_s x d array of means with K_s >= 2, got shape {}'.format(means.shape))
        K, d = means.shape
        if covs.shape != (K, d, d):
            raise DimensionError('covs must be {}, got {}'.format((K, d, d), covs.shape))
        for c in range(K):
            if np.abs(covs[c] - covs[c].T).max() > 1e-8:
                raise ValidationError('covariance of class {} is not symmetric'.format(c))
            if np.linalg.eigvalsh(covs[c]).min() < -1e-8:
                raise ValidationError('covariance of class {} is not positive semi-definite'.format(c))

        self.means = means
        self.covs = covs
        self.mode = mode
        self._chols = None

    def __str__(self):
        return "ConditionalGenerator(K_s={}, d={}, mode={})".format(self.K, self.dim, self.mode)

    @property
    def K(self):
        return self.means.shape[0]

    @property
    def dim(self):
        return self.means.shape[1]

    @property
    def class_factors(self):
        if self._chols is None:
            self._chols = _factor(self.covs)
        return self._chols

    # ------------------------------
    def _check_labels(self, Y):
        Y = np.asarray(Y, float)
        if Y.ndim != 2 or Y.shape[1] != self.K:
            raise DimensionError('labels must be N x {}, got shape {}'.format(self.K, Y.shape))
        return check_simplex(Y, tol=SIMPLEX_TOL, name="conditioning label")

    def conditional_moments(self, Y):
        """mean (N x d) and covariance (N x d x d) of the interpolated gaussians"""
        Y = self._check_labels(Y)
        return Y.dot(self.means), np.einsum('nc,cij->nij', Y, self.covs)

    def sample_batch(self, Y, rng):
        """
        one draw per conditioning label
        :param Y: 2D array (N x K_s), rows on the simplex
        :param rng: numpy.random.Generator
        :return: 2D array (N x d)
        """
        Y = self._check_labels(Y)
        N = Y.shape[0]
        if not N:
            return np.zeros((0, self.dim))

        if self.mode == "interpolate":
            mean, cov = self.conditional_moments(Y)
            L = _factor(0.5 * (cov + cov.transpose((0, 2, 1))))
            z = rng.standard_normal((N, self.dim))
            return mean + np.einsum('nij,nj->ni', L, z)

        elif self.mode == "mixture":
            u = rng.random(N)
            cums = np.cumsum(Y, axis=1)
            classes = np.array([np.searchsorted(cum, v, side="right") for cum, v in zip(cums, u)])
            # rounding may leave the last cumulated value slightly below u
            classes = np.minimum(classes, self.K - 1)
            z = rng.standard_normal((N, self.dim))
            return self.means[classes] + np.einsum('nij,nj->ni', self.class_factors[classes], z)

        raise ValidationError('unknown mode {}'.format(self.mode))

    def sample(self, y, n, rng):
        """n draws conditioned on the same label y (1D array on the K_s simplex)"""
        y = np.asarray(y, float)
        if y.ndim != 1:
            raise DimensionError('expected a single label vector, got shape {}'.format(y.shape))
        if n < 0:
            raise ValidationError('n must be >= 0')
        return self.sample_batch(np.tile(y, (int(n), 1)), rng)

    # ------------------------------
    def to_dict(self):
        return {"means": self.means.tolist(),
                "covs": self.covs.tolist(),
                "mode": self.mode}

    @classmethod
    def from_dict(cls, d):
        return cls(means=d['means'], covs=d['covs'], mode=d.get('mode', DEFAULT_GENERATOR_MODE))

    def write(self, filename):
        with open(filename, 'w') as fid:
            json.dump(self.to_dict(), fid)


def load_generator(filename):
    with open(filename, 'r') as fid:
        return ConditionalGenerator.from_dict(json.load(fid))


# ------------------------------
def fit_source_generator(D_s, mode=DEFAULT_GENERATOR_MODE, epsilon=DEFAULT_COV_EPSILON):
    """
    per class gaussian fit (mean, unbiased covariance, epsilon * I if singular)
    the returned generator owns copies of the fitted moments only

    :param D_s: LabeledDataset, source data
    :return: ConditionalGenerator
    """
    means, covs = [], []
    for k, I in enumerate(D_s.groups()):
        if not len(I):
            raise ValidationError('source class {} is empty'.format(k))
        mean, cov = fit_gaussian(D_s.features[I], epsilon=epsilon)
        means.append(mean)
        covs.append(cov)
    return ConditionalGenerator(np.array(means), np.array(covs), mode=mode)


def sample_generator(G_s, y, n, rng):
    return G_s.sample(y, n, rng)


def sample_generator_batch(G_s, Y, rng):
    return G_s.sample_batch(Y, rng)
