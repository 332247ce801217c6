import numpy as np
from scipy import special
from pseudotrans.errors import ValidationError, DimensionError

SIMPLEX_TOL = 1e-9


def softmax(logits, axis=-1):
    # scipy subtracts the max before exponentiating
    return special.softmax(np.asarray(logits, float), axis=axis)


def log_softmax(logits, axis=-1):
    return special.log_softmax(np.asarray(logits, float), axis=axis)


def check_simplex(probs, tol=SIMPLEX_TOL, name="target"):
    """raise ValidationError unless every row of probs lies on the probability simplex"""
    probs = np.asarray(probs, float)
    if not np.all(np.isfinite(probs)):
        raise ValidationError('{} contains non finite values'.format(name))
    if np.any(probs < 0.):
        raise ValidationError('{} has negative entries'.format(name))
    sums = probs.sum(axis=-1)
    if np.any(np.abs(sums - 1.) > tol):
        raise ValidationError('{} is not normalized (sum {} differs from 1 by more than {})'.format(
            name, sums if np.ndim(sums) == 0 else sums[np.argmax(np.abs(sums - 1.))], tol))
    return probs


def softmax_cross_entropy(logits, target):
    """
    cross entropy between a (soft) target distribution and softmax(logits)
        loss = -sum_k target_k log softmax(logits)_k
        grad = softmax(logits) - target

    :param logits: 1D (K) or 2D (B x K) array
    :param target: array with the same shape, rows on the simplex (soft labels accepted)
    :return loss: float (1D input) or 1D array of per sample losses
    :return grad_logits: derivative of each loss wrt its logits, same shape as logits
    """
    logits = np.asarray(logits, float)
    target = check_simplex(target)
    if target.shape != logits.shape:
        raise DimensionError('target shape {} does not match logits shape {}'.format(target.shape, logits.shape))

    logp = log_softmax(logits)
    # 0 * log(0) must count as 0 where the prediction saturates
    loss = -np.where(target > 0., target * logp, 0.).sum(axis=-1)
    grad = np.exp(logp) - target
    # rounding can leave tiny negative values
    loss = np.maximum(loss, 0.)
    return loss, grad


def onehot(labels, K):
    labels = np.asarray(labels, int)
    Y = np.zeros((len(labels), K))
    Y[np.arange(len(labels)), labels] = 1.
    return Y


def entropy(logits):
    """
    Shannon entropy of softmax(logits) and its derivative wrt the logits
        dH/dz_j = -p_j (log p_j + H)
    """
    logp = log_softmax(logits)
    p = np.exp(logp)
    H = -np.where(p > 0., p * logp, 0.).sum(axis=-1)
    grad = -p * (logp + np.expand_dims(H, -1))
    return H, grad
