from __future__ import print_function
import numpy as np
from pseudotrans.errors import ValidationError
from pseudotrans.numerics.losses import onehot
from pseudotrans.numerics.mlp import MlpClassifier, swap_final_layer
from pseudotrans.numerics.optimizers import OptimizerState
from pseudotrans.transfer.training import descend
from pseudotrans.defaults import \
    DEFAULT_PP_STEPS, DEFAULT_PP_BATCH, DEFAULT_PP_LR, DEFAULT_PP_DECAY_FRACTION, \
    DEFAULT_PP_OFFLINE_FRACTION, DEFAULT_MOMENTUM, DEFAULT_WEIGHT_DECAY, DEFAULT_DECAY_FACTOR, \
    DEFAULT_INIT_SCALE

"""
pseudo pre-training : train the target architecture on the source task
with batches synthesized by the source generator

    uniform  : fresh batch every step, labels uniform over all source classes
    filtered : fresh batch every step, labels uniform over a subset of source classes
    pcs      : fresh batch every step, soft targets drawn from a pseudo label set
    offline  : a fixed dataset generated in advance, then shuffled epochs
"""

PP_STRATEGIES = ["uniform", "filtered", "pcs", "offline"]


class PretrainConfig(object):
    def __init__(self, steps=DEFAULT_PP_STEPS, batch_size=DEFAULT_PP_BATCH, lr=DEFAULT_PP_LR,
                 momentum=DEFAULT_MOMENTUM, weight_decay=DEFAULT_WEIGHT_DECAY,
                 decay_steps=None, decay_factor=DEFAULT_DECAY_FACTOR,
                 init_scale=DEFAULT_INIT_SCALE, offline_size=None):
        """
        :param decay_steps: steps at which the rate is multiplied by decay_factor,
                            default : one decay at 60% of the budget
        :param init_scale: scale of the gaussian weights of the target head after the swap
        :param offline_size: number of samples of the offline dataset,
                             default : DEFAULT_PP_OFFLINE_FRACTION of the steps x batch draws, at least one batch
        """
        self.steps = int(steps)
        self.batch_size = int(batch_size)
        self.lr = float(lr)
        self.momentum = float(momentum)
        self.weight_decay = float(weight_decay)
        if decay_steps is None:
            decay_steps = [int(DEFAULT_PP_DECAY_FRACTION * self.steps)]
        self.decay_steps = [int(s) for s in decay_steps]
        self.decay_factor = float(decay_factor)
        self.init_scale = float(init_scale)
        if offline_size is None:
            offline_size = max(self.batch_size, int(round(DEFAULT_PP_OFFLINE_FRACTION * self.steps * self.batch_size)))
        self.offline_size = int(offline_size)

        if self.steps < 0:
            raise ValidationError('steps must be >= 0, got {}'.format(self.steps))
        if self.batch_size < 1:
            raise ValidationError('batch_size must be >= 1, got {}'.format(self.batch_size))
        if self.init_scale < 0.:
            raise ValidationError('init_scale must be >= 0, got {}'.format(self.init_scale))
        if self.offline_size < 1:
            raise ValidationError('offline_size must be >= 1, got {}'.format(self.offline_size))

    def __str__(self):
        return "PretrainConfig(steps={}, batch_size={}, lr={}, decay_steps={})".format(
            self.steps, self.batch_size, self.lr, self.decay_steps)

    def optimizer(self, params):
        return OptimizerState(params, lr=self.lr, momentum=self.momentum,
                              weight_decay=self.weight_decay,
                              decay_epochs=self.decay_steps, decay_factor=self.decay_factor)

    def to_dict(self):
        return {"steps": self.steps,
                "batch_size": self.batch_size,
                "lr": self.lr,
                "momentum": self.momentum,
                "weight_decay": self.weight_decay,
                "decay_steps": list(self.decay_steps),
                "decay_factor": self.decay_factor,
                "init_scale": self.init_scale,
                "offline_size": self.offline_size}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


# ------------------------------ batch sources
def _hard_batch(G_s, classes, batch_size, rng):
    """labels uniform over classes, one generator draw per label"""
    labels = classes[rng.integers(len(classes), size=batch_size)]
    T = onehot(labels, G_s.K)
    return G_s.sample_batch(T, rng), T


def _soft_batch(G_s, pseudo, batch_size, rng):
    T = pseudo.labels[rng.integers(len(pseudo), size=batch_size)]
    return G_s.sample_batch(T, rng), T


def online_batches(G_s, config, rng, classes=None, pseudo=None, batch_log=None):
    """yield (step, X, T) with a fresh synthetic batch at every step"""
    for step in range(config.steps):
        if pseudo is not None:
            X, T = _soft_batch(G_s, pseudo, config.batch_size, rng)
        else:
            X, T = _hard_batch(G_s, classes, config.batch_size, rng)
        if batch_log is not None:
            batch_log.append((X, T))
        yield step, X, T


def offline_dataset(G_s, config, rng):
    """config.offline_size synthetic samples with uniform labels, generated in advance"""
    classes = np.arange(G_s.K)
    nchunks = int(np.ceil(config.offline_size / float(config.batch_size)))
    chunks = [_hard_batch(G_s, classes, config.batch_size, rng) for _ in range(nchunks)]
    X = np.concatenate([X for X, _ in chunks])
    T = np.concatenate([T for _, T in chunks])
    return X[:config.offline_size], T[:config.offline_size]


def offline_batches(X, T, config, rng, shuffle=True):
    """yield (step, X, T) by epochs over a fixed dataset, config.steps batches in total"""
    N = X.shape[0]
    if not N:
        return
    step = 0
    while step < config.steps:
        order = rng.permutation(N) if shuffle else np.arange(N)
        for start in range(0, N, config.batch_size):
            if step >= config.steps:
                return
            I = order[start:start + config.batch_size]
            yield step, X[I], T[I]
            step += 1


# ------------------------------
def pseudo_pretrain(arch, G_s, K_s, config, strategy, rng, classes=None, pseudo=None,
                    offline_data=None, shuffle=True, batch_log=None, init=None, verbose=False):
    """
    :param arch: widths of the target architecture with a source head [d, ..., K_s]
    :param G_s: ConditionalGenerator
    :param K_s: int, number of source classes
    :param config: PretrainConfig
    :param strategy: one of PP_STRATEGIES
    :param rng: numpy.random.Generator, initialization (if init is None) then batches
    :param classes: source classes kept by the confidence filter ("filtered")
    :param pseudo: PseudoLabelSet ("pcs")
    :param offline_data: (X, T) replaces the generated offline dataset ("offline")
    :param shuffle: shuffle the offline dataset at each epoch
    :param batch_log: list receiving the (X, T) batches of an online run
    :param init: MlpClassifier to start from instead of a fresh initialization
    :return: MlpClassifier with a source head
    """
    if strategy not in PP_STRATEGIES:
        raise ValidationError('unknown strategy {}, use one of {}'.format(strategy, PP_STRATEGIES))
    arch = list(arch)
    if arch[-1] != K_s or G_s.K != K_s:
        raise ValidationError('source head width {} and generator classes {} must equal K_s={}'.format(
            arch[-1], G_s.K, K_s))

    classifier = MlpClassifier(arch, rng=rng) if init is None else init.copy()
    state = config.optimizer(classifier.parameters())

    if strategy == "uniform":
        batches = online_batches(G_s, config, rng, classes=np.arange(K_s), batch_log=batch_log)
    elif strategy == "filtered":
        if classes is None or not len(classes):
            raise ValidationError('the filtered strategy needs a nonempty set of source classes')
        classes = np.sort(np.asarray(list(classes), int))
        batches = online_batches(G_s, config, rng, classes=classes, batch_log=batch_log)
    elif strategy == "pcs":
        if pseudo is None:
            raise ValidationError('the pcs strategy needs pseudo labels')
        batches = online_batches(G_s, config, rng, pseudo=pseudo, batch_log=batch_log)
    else:
        if offline_data is None:
            offline_data = offline_dataset(G_s, config, rng)
        X, T = offline_data
        batches = offline_batches(np.asarray(X, float), np.asarray(T, float), config, rng, shuffle=shuffle)

    classifier, _ = descend(classifier, batches, state, method="pp_" + strategy,
                            nsteps=config.steps, verbose=verbose)
    return classifier


def target_initialization(pretrained, K_t, config, rng):
    """pre-trained body with a fresh target head"""
    return swap_final_layer(pretrained, K_t, config.init_scale, rng)
