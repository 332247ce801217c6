from __future__ import print_function
import numpy as np
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics.losses import log_softmax, onehot
from pseudotrans.numerics.mlp import swap_final_layer
from pseudotrans.transfer.training import split_streams, fit_supervised, train_supervised
from pseudotrans.defaults import \
    DEFAULT_KD_METHOD, DEFAULT_KD_LAMBDA, DEFAULT_KD_TEMPERATURE, DEFAULT_INIT_SCALE

KD_METHODS = ["logit_matching", "soft_target"]


class KdConfig(object):
    def __init__(self, method=DEFAULT_KD_METHOD, lam=DEFAULT_KD_LAMBDA,
                 temperature=DEFAULT_KD_TEMPERATURE):
        if method not in KD_METHODS:
            raise ValidationError('unknown distillation method {}, use one of {}'.format(method, KD_METHODS))
        if not lam >= 0.:
            raise ValidationError('lambda_d must be >= 0, got {}'.format(lam))
        if not temperature > 0.:
            raise ValidationError('temperature must be > 0, got {}'.format(temperature))
        self.method = method
        self.lam = float(lam)
        self.temperature = float(temperature)

    def __str__(self):
        return "KdConfig(method={}, lambda_d={}, T={})".format(self.method, self.lam, self.temperature)

    def copy(self, **kwargs):
        d = self.to_dict()
        d.update(kwargs)
        return KdConfig(**d)

    def to_dict(self):
        return {"method": self.method, "lam": self.lam, "temperature": self.temperature}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


# ------------------------------
def finetune_teacher(C_s, D_t, config, rng, init_scale=DEFAULT_INIT_SCALE, verbose=False):
    """
    source architecture with a fresh target head, fine-tuned on the labeled target data
    the head is drawn from rng first, then the training consumes rng
    """
    teacher = swap_final_layer(C_s, D_t.K, init_scale, rng)
    return train_supervised(teacher, D_t, config, rng, method="ft_teacher", verbose=verbose)


def kd_loss(method, student_logits, teacher_logits, temperature=DEFAULT_KD_TEMPERATURE):
    """
    distillation term, the teacher branch is constant
        logit_matching : mean_k (z_s - z_t)^2
        soft_target    : T^2 KL(softmax(z_t / T) || softmax(z_s / T))

    :return loss: 1D array, per sample loss
    :return grad_logits: per sample derivative wrt the student logits
    """
    zs = np.asarray(student_logits, float)
    zt = np.asarray(teacher_logits, float)
    if zs.shape != zt.shape:
        raise DimensionError('student logits {} and teacher logits {} differ in shape'.format(zs.shape, zt.shape))
    if not temperature > 0.:
        raise ValidationError('temperature must be > 0, got {}'.format(temperature))

    if method == "logit_matching":
        K = zs.shape[-1]
        diff = zs - zt
        return (diff ** 2.).mean(axis=-1), 2. * diff / K

    elif method == "soft_target":
        T = temperature
        logq = log_softmax(zt / T)
        logp = log_softmax(zs / T)
        q = np.exp(logq)
        kl = np.where(q > 0., q * (logq - logp), 0.).sum(axis=-1)
        loss = np.maximum(T ** 2. * kl, 0.)
        return loss, T * (np.exp(logp) - q)

    raise ValidationError('unknown distillation method {}, use one of {}'.format(method, KD_METHODS))


def kd_train(init, teacher, D_t, kd_cfg, config, rng, verbose=False):
    """
    minimize L_sup + lambda_d * L_KD over the labeled target data
    :param init: MlpClassifier, student initialization (target architecture)
    :param teacher: MlpClassifier, fine-tuned teacher (any architecture, same output width)
    :param kd_cfg: KdConfig
    :param config: TrainConfig
    :param rng: numpy.random.Generator, batch order (supervised stream of split_streams)
    """
    if init.output_dim != teacher.output_dim:
        raise ValidationError('student outputs {} classes, teacher outputs {}'.format(
            init.output_dim, teacher.output_dim))
    if init.input_dim != teacher.input_dim:
        raise DimensionError('student reads {} features, teacher reads {}'.format(init.input_dim, teacher.input_dim))
    if init.output_dim != D_t.K:
        raise ValidationError('classifier outputs {} classes, dataset has {}'.format(init.output_dim, D_t.K))

    sup_rng, _ = split_streams(rng)
    extra = None
    if kd_cfg.lam > 0.:
        def extra(classifier, step, X, logits):
            loss, grad_logits = kd_loss(kd_cfg.method, logits, teacher.forward(X), kd_cfg.temperature)
            return kd_cfg.lam * loss.mean(), kd_cfg.lam * grad_logits, None

    return fit_supervised(init, D_t.features, onehot(D_t.labels, D_t.K), config, sup_rng,
                          method="kd_" + kd_cfg.method, extra=extra, verbose=verbose)
