from __future__ import print_function
import numpy as np
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics.losses import softmax, softmax_cross_entropy, entropy, onehot
from pseudotrans.synthetics.taskpair import LabeledDataset
from pseudotrans.transfer.training import split_streams, fit_supervised, train_supervised
from pseudotrans.defaults import \
    DEFAULT_SSL_METHOD, DEFAULT_LAMBDA, DEFAULT_BETA, DEFAULT_TAU, \
    DEFAULT_UNSUP_BATCH, DEFAULT_AUGMENT_STRENGTH

"""
semi supervised target training with a pseudo unlabeled dataset

    L = L_sup(D_t) + lambda * L_unsup(D_{s<-t})

unsupervised terms (targets are never differentiated)
    uda               : CE(softmax(z(x) / tau), z(T(x))) where max softmax(z(x) / tau) > beta
    consistency       : uda without the confidence mask
    fixmatch          : CE(onehot(argmax z(x)), z(T(x))) where max softmax(z(x)) > beta
    pseudo_label      : CE(onehot(argmax z(x)), z(x)) where max softmax(z(x)) > beta
    soft_pseudo_label : CE(softmax(z(x) / tau), z(x))
    entmin            : H(softmax(z(x)))
"""

SSL_METHODS = ["uda", "fixmatch", "pseudo_label", "soft_pseudo_label", "entmin", "consistency"]
SOFT_LABEL_METHODS = ["uda", "soft_pseudo_label", "consistency"]
HARD_LABEL_METHODS = ["pseudo_label", "fixmatch"]
MAX_AUGMENT_STRENGTH = 10.


class SslConfig(object):
    def __init__(self, method=DEFAULT_SSL_METHOD, lam=DEFAULT_LAMBDA, beta=DEFAULT_BETA,
                 tau=DEFAULT_TAU, unsup_batch=DEFAULT_UNSUP_BATCH, strength=DEFAULT_AUGMENT_STRENGTH):
        if method not in SSL_METHODS:
            raise ValidationError('unknown ssl method {}, use one of {}'.format(method, SSL_METHODS))
        if not lam >= 0.:
            raise ValidationError('lambda must be >= 0, got {}'.format(lam))
        if not 0. <= beta <= 1.:
            raise ValidationError('beta must be in [0, 1], got {}'.format(beta))
        if not tau > 0.:
            raise ValidationError('tau must be > 0, got {}'.format(tau))
        if int(unsup_batch) < 1:
            raise ValidationError('unsup_batch must be >= 1, got {}'.format(unsup_batch))
        if not 0. <= strength <= MAX_AUGMENT_STRENGTH:
            raise ValidationError('strength must be in [0, {}], got {}'.format(MAX_AUGMENT_STRENGTH, strength))

        self.method = method
        self.lam = float(lam)
        self.beta = float(beta)
        self.tau = float(tau)
        self.unsup_batch = int(unsup_batch)
        self.strength = float(strength)

    def __str__(self):
        return "SslConfig(method={}, lambda={}, beta={}, tau={}, unsup_batch={}, strength={})".format(
            self.method, self.lam, self.beta, self.tau, self.unsup_batch, self.strength)

    def copy(self, **kwargs):
        d = self.to_dict()
        d.update(kwargs)
        return SslConfig(**d)

    def to_dict(self):
        return {"method": self.method,
                "lam": self.lam,
                "beta": self.beta,
                "tau": self.tau,
                "unsup_batch": self.unsup_batch,
                "strength": self.strength}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


# ------------------------------
def augment(x, strength, rng, scale=None):
    """
    gaussian jitter followed by random coordinate dropout
        x' = (x + strength * scale * e) * m,  e ~ N(0, 1),  m_i ~ Bernoulli(1 - 0.1 * strength)

    :param x: 1D (d) or 2D (B x d) array
    :param strength: float in [0, 10]
    :param scale: per coordinate noise scale (feature std), 1 if None
    """
    if not 0. <= strength <= MAX_AUGMENT_STRENGTH:
        raise ValidationError('strength must be in [0, {}], got {}'.format(MAX_AUGMENT_STRENGTH, strength))
    x = np.asarray(x, float)
    scale = np.ones(x.shape[-1]) if scale is None else np.asarray(scale, float)
    noise = rng.standard_normal(x.shape)
    keep = rng.random(x.shape) >= 0.1 * strength
    return (x + strength * scale * noise) * keep


def unsup_loss(method, student, x_u, cfg, rng, scale=None):
    """
    :param method: one of SSL_METHODS
    :param student: MlpClassifier
    :param x_u: 2D array (B x d), unlabeled batch
    :param cfg: SslConfig (beta, tau, strength)
    :param rng: numpy.random.Generator, augmentation stream
    :param scale: per coordinate augmentation scale
    :return loss: float, mean over the batch (masked samples count as zeros)
    :return grads: parameter gradients of loss
    """
    if method not in SSL_METHODS:
        raise ValidationError('unknown ssl method {}, use one of {}'.format(method, SSL_METHODS))
    x_u = np.asarray(x_u, float)
    if x_u.ndim != 2 or x_u.shape[1] != student.input_dim:
        raise DimensionError('unlabeled batch of shape {} does not match input width {}'.format(
            x_u.shape, student.input_dim))

    logits, cache = student.forward_cache(x_u)

    if method == "entmin":
        H, grad_logits = entropy(logits)
        return H.mean(), student.backward(x_u, grad_logits, cache=cache)

    # detached targets
    if method in ["uda", "consistency", "soft_pseudo_label"]:
        target = softmax(logits / cfg.tau)
        confidence = target.max(axis=1)
    else:
        p = softmax(logits)
        target = onehot(np.argmax(logits, axis=1), logits.shape[1])
        confidence = p.max(axis=1)

    if method in ["uda", "fixmatch", "pseudo_label"]:
        mask = (confidence > cfg.beta).astype(float)
    else:
        mask = np.ones(len(x_u))

    if method in ["uda", "consistency", "fixmatch"]:
        x_in = augment(x_u, cfg.strength, rng, scale=scale)
        logits_in, cache_in = student.forward_cache(x_in)
    else:
        x_in, logits_in, cache_in = x_u, logits, cache

    ce, grad_logits = softmax_cross_entropy(logits_in, target)
    loss = (mask * ce).mean()
    grad_logits = mask[:, np.newaxis] * grad_logits
    return loss, student.backward(x_in, grad_logits, cache=cache_in)


# ------------------------------
def train_pssl(init, D_t, D_pseudo, cfg, config, rng, scale=None, verbose=False):
    """
    :param init: MlpClassifier with a target head
    :param D_t: LabeledDataset, labeled target data
    :param D_pseudo: UnlabeledDataset, pseudo (or real) unlabeled data
    :param cfg: SslConfig
    :param config: TrainConfig (supervised batches and schedule)
    :param rng: numpy.random.Generator, split into a supervised and an unsupervised stream
    :param scale: augmentation scale, per coordinate std of D_pseudo if None
    :return: trained MlpClassifier
    """
    if init.output_dim != D_t.K:
        raise ValidationError('classifier outputs {} classes, dataset has {}'.format(init.output_dim, D_t.K))
    if D_pseudo.dim != D_t.dim:
        raise DimensionError('unlabeled data has {} features, labeled data has {}'.format(D_pseudo.dim, D_t.dim))

    sup_rng, unsup_rng = split_streams(rng)
    if scale is None:
        scale = D_pseudo.features.std(axis=0)

    extra = None
    if cfg.lam > 0.:
        def extra(classifier, step, X, logits):
            I = unsup_rng.integers(len(D_pseudo), size=cfg.unsup_batch)
            loss, grads = unsup_loss(cfg.method, classifier, D_pseudo.features[I], cfg, unsup_rng, scale=scale)
            return cfg.lam * loss, None, [cfg.lam * g for g in grads]

    return fit_supervised(init, D_t.features, onehot(D_t.labels, D_t.K), config, sup_rng,
                          method="pssl_" + cfg.method, extra=extra, verbose=verbose)


def train_pseudo_supervised(init, D_t, pairs, config, rng, verbose=False):
    """
    supervised training on the union of the labeled target data and pseudo pairs (x_{s<-t}, y_t)
    :param pairs: LabeledDataset in the target label space, or None
    """
    if pairs is None or not len(pairs):
        return train_supervised(init, D_t, config, rng, method="pseudo_supervised", verbose=verbose)
    if pairs.K != D_t.K or pairs.dim != D_t.dim:
        raise DimensionError('pseudo pairs ({} classes, {} features) do not match the target data ({}, {})'.format(
            pairs.K, pairs.dim, D_t.K, D_t.dim))
    union = LabeledDataset(np.concatenate([D_t.features, pairs.features]),
                           np.concatenate([D_t.labels, pairs.labels]),
                           label_space=D_t.label_space, n_classes=D_t.K)
    return train_supervised(init, union, config, rng, method="pseudo_supervised", verbose=verbose)
