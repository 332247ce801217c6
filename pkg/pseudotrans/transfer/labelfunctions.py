from __future__ import print_function
import numpy as np
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics import losses
from pseudotrans.numerics.losses import check_simplex, SIMPLEX_TOL
from pseudotrans.defaults import DEFAULT_LABEL_TEMPERATURE

"""
output label functions g : source logits -> distribution over the source label space
every function has a single sample form (returns a LabelDistribution)
and a batch form used by apply_label_function (returns a 2D array, one row per sample)
"""

LABEL_FUNCTIONS = ["softmax", "temp_softmax", "argmax", "sparsemax", "classwise_mean", "random"]


class LabelDistribution(object):
    def __init__(self, probs, label_space="source"):
        probs = np.asarray(probs, float)
        if probs.ndim != 1 or not probs.size:
            raise DimensionError('expected a nonempty 1D probability vector, got shape {}'.format(probs.shape))
        self.probs = check_simplex(probs, tol=SIMPLEX_TOL, name="label distribution")
        self.label_space = label_space

    def __str__(self):
        return "LabelDistribution({}, {})".format(
            self.label_space, np.array2string(self.probs, precision=3))

    def __len__(self):
        return self.probs.size

    @property
    def K(self):
        return self.probs.size

    def argmax(self):
        return int(np.argmax(self.probs))

    def support(self):
        return np.flatnonzero(self.probs > 0.)


def _logits2d(logits):
    logits = np.asarray(logits, float)
    if logits.ndim != 2:
        raise DimensionError('expected a 2D array of logits, got shape {}'.format(logits.shape))
    if not np.all(np.isfinite(logits)):
        raise ValidationError('logits must be finite')
    return logits


# ------------------------------ batch forms
def softmax_batch(logits):
    return losses.softmax(_logits2d(logits), axis=1)


def temperature_softmax_batch(logits, tau):
    if not tau > 0.:
        raise ValidationError('temperature must be > 0, got {}'.format(tau))
    return losses.softmax(_logits2d(logits) / tau, axis=1)


def argmax_onehot_batch(logits):
    logits = _logits2d(logits)
    # np.argmax returns the lowest index among ties
    return losses.onehot(np.argmax(logits, axis=1), logits.shape[1])


def sparsemax_batch(logits):
    """
    row-wise euclidean projection onto the simplex (sort-threshold algorithm)
        z sorted descending, k* = max{k : 1 + k z_(k) > sum_{j<=k} z_(j)}
        t = (sum_{j<=k*} z_(j) - 1) / k*,  p = max(z - t, 0)
    """
    z = _logits2d(logits)
    K = z.shape[1]
    zs = -np.sort(-z, axis=1)
    cssv = np.cumsum(zs, axis=1)
    k = np.arange(1, K + 1)
    # the support condition holds on a prefix of the sorted entries
    kstar = (1. + k * zs > cssv).sum(axis=1)
    t = (cssv[np.arange(z.shape[0]), kstar - 1] - 1.) / kstar
    return np.maximum(z - t[:, np.newaxis], 0.)


def random_label_batch(N, K_s, rng):
    if K_s < 1:
        raise ValidationError('K_s must be >= 1, got {}'.format(K_s))
    return losses.onehot(rng.integers(K_s, size=N), K_s)


def classwise_mean_batch(soft_labels, groups):
    """
    replace every soft label by the mean of its group
    :param soft_labels: 2D array (N x K_s)
    :param groups: 1D int array (N), group (target class) of each row
    """
    soft_labels = np.asarray(soft_labels, float)
    groups = np.asarray(groups, int)
    if groups.shape != (soft_labels.shape[0],):
        raise DimensionError('got {} group indices for {} labels'.format(groups.size, soft_labels.shape[0]))
    means = classwise_mean({g: soft_labels[groups == g] for g in np.unique(groups)})
    out = np.zeros_like(soft_labels)
    for g, dist in means.items():
        out[groups == g] = dist.probs
    return out


# ------------------------------ single sample forms
def _logits1d(logits):
    logits = np.asarray(logits, float)
    if logits.ndim != 1:
        raise DimensionError('expected a 1D logit vector, got shape {}'.format(logits.shape))
    return logits[np.newaxis, :]


def softmax(logits):
    return LabelDistribution(softmax_batch(_logits1d(logits))[0])


def temperature_softmax(logits, tau):
    return LabelDistribution(temperature_softmax_batch(_logits1d(logits), tau)[0])


def argmax_onehot(logits):
    return LabelDistribution(argmax_onehot_batch(_logits1d(logits))[0])


def sparsemax(logits):
    return LabelDistribution(sparsemax_batch(_logits1d(logits))[0])


def random_label(K_s, rng):
    return LabelDistribution(random_label_batch(1, K_s, rng)[0])


def classwise_mean(groups):
    """
    :param groups: dict (or list) mapping a target class to the 2D array of
                   soft labels of its members
    :return: dict target class -> LabelDistribution (mean of the group)
    """
    if not isinstance(groups, dict):
        groups = dict(enumerate(groups))
    out = {}
    for key, members in groups.items():
        members = np.asarray(members, float)
        if members.ndim != 2 or not members.shape[0]:
            raise ValidationError('group {} is empty'.format(key))
        check_simplex(members, name="member of group {}".format(key))
        out[key] = LabelDistribution(members.mean(axis=0))
    return out


# ------------------------------
def apply_label_function(name, logits, rng=None, tau=DEFAULT_LABEL_TEMPERATURE, groups=None):
    """
    evaluate a label function on a whole logit matrix
    :param name: one of LABEL_FUNCTIONS
    :param logits: 2D array (N x K_s), source logits
    :param rng: numpy.random.Generator, required by "random"
    :param tau: temperature of "temp_softmax"
    :param groups: 1D int array (N), target class of each row, required by "classwise_mean"
    :return: 2D array (N x K_s), rows on the simplex
    """
    if name == "softmax":
        return softmax_batch(logits)
    elif name == "temp_softmax":
        return temperature_softmax_batch(logits, tau)
    elif name == "argmax":
        return argmax_onehot_batch(logits)
    elif name == "sparsemax":
        return sparsemax_batch(logits)
    elif name == "classwise_mean":
        if groups is None:
            raise ValidationError('classwise_mean needs the target class of each sample')
        return classwise_mean_batch(softmax_batch(logits), groups)
    elif name == "random":
        if rng is None:
            raise ValidationError('random labels need a random generator')
        logits = _logits2d(logits)
        return random_label_batch(logits.shape[0], logits.shape[1], rng)
    raise ValidationError('unknown label function {}, use one of {}'.format(name, LABEL_FUNCTIONS))
