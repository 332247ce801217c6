from __future__ import print_function
import numpy as np
from pseudotrans.errors import ValidationError, TrainingError
from pseudotrans.numerics.losses import softmax_cross_entropy, onehot
from pseudotrans.numerics.optimizers import OptimizerState, sgd_step
from pseudotrans.standalone.stdout import progress
from pseudotrans.defaults import \
    DEFAULT_TARGET_EPOCHS, DEFAULT_SUP_BATCH, DEFAULT_LR_SCRATCH, \
    DEFAULT_MOMENTUM, DEFAULT_WEIGHT_DECAY, DEFAULT_TARGET_DECAY_EPOCHS, DEFAULT_DECAY_FACTOR


class TrainConfig(object):
    """supervised training settings, the decay points are counted in epochs"""

    def __init__(self, epochs=DEFAULT_TARGET_EPOCHS, batch_size=DEFAULT_SUP_BATCH,
                 lr=DEFAULT_LR_SCRATCH, momentum=DEFAULT_MOMENTUM,
                 weight_decay=DEFAULT_WEIGHT_DECAY, decay_epochs=DEFAULT_TARGET_DECAY_EPOCHS,
                 decay_factor=DEFAULT_DECAY_FACTOR):
        self.epochs = int(epochs)
        self.batch_size = int(batch_size)
        self.lr = float(lr)
        self.momentum = float(momentum)
        self.weight_decay = float(weight_decay)
        self.decay_epochs = [int(e) for e in decay_epochs]
        self.decay_factor = float(decay_factor)

        if self.epochs < 0:
            raise ValidationError('epochs must be >= 0, got {}'.format(self.epochs))
        if self.batch_size < 1:
            raise ValidationError('batch_size must be >= 1, got {}'.format(self.batch_size))

    def __str__(self):
        return "TrainConfig({})".format(", ".join(["{}={}".format(k, v) for k, v in self.to_dict().items()]))

    def copy(self, **kwargs):
        d = self.to_dict()
        d.update(kwargs)
        return TrainConfig(**d)

    def optimizer(self, params):
        return OptimizerState(params, lr=self.lr, momentum=self.momentum,
                              weight_decay=self.weight_decay,
                              decay_epochs=self.decay_epochs, decay_factor=self.decay_factor)

    def to_dict(self):
        return {"epochs": self.epochs,
                "batch_size": self.batch_size,
                "lr": self.lr,
                "momentum": self.momentum,
                "weight_decay": self.weight_decay,
                "decay_epochs": list(self.decay_epochs),
                "decay_factor": self.decay_factor}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


# ------------------------------
def split_streams(rng):
    """
    derive two independent generators from rng
    (supervised batch order, unsupervised sampling and augmentation)
    every target training routine uses this split so that runs differing only
    by their unsupervised term share the same supervised stream
    """
    ss = np.random.SeedSequence(int(rng.integers(2 ** 63)))
    sup, unsup = ss.spawn(2)
    return np.random.default_rng(sup), np.random.default_rng(unsup)


def epoch_batches(features, targets, epochs, batch_size, rng):
    """
    yield (epoch, X, T) for shuffled mini-batches, the last batch of an epoch may be smaller
    :param targets: 2D array of (soft) targets, one row per sample
    """
    N = features.shape[0]
    for epoch in range(epochs):
        perm = rng.permutation(N)
        for start in range(0, N, batch_size):
            I = perm[start:start + batch_size]
            yield epoch, features[I], targets[I]


def descend(classifier, batches, state, method="supervised",
            extra=None, nsteps=None, verbose=False):
    """
    mini-batch descent on the mean cross entropy plus optional extra terms

    :param classifier: MlpClassifier, updated in place
    :param batches: iterable of (counter, X, T), counter drives the decay schedule
                    (epoch for target training, step for pre-training)
    :param state: OptimizerState
    :param extra: None or function(classifier, step, X, logits) -> (loss, grad_logits, param_grads)
                  grad_logits (same batch) and param_grads (any other batch) may be None
    :param nsteps: expected number of steps, for the waitbar only
    :return: classifier, list of per step losses
    """
    losses = []
    last_loss = np.nan
    with progress(method, verbose and nsteps is not None) as wb:
        for step, (counter, X, T) in enumerate(batches):
            state.epoch = counter
            logits, cache = classifier.forward_cache(X)
            loss, grad_logits = softmax_cross_entropy(logits, T)
            loss = loss.mean()

            other_grads = None
            if extra is not None:
                xloss, xgrad_logits, other_grads = extra(classifier, step, X, logits)
                loss = loss + xloss
                if xgrad_logits is not None:
                    grad_logits = grad_logits + xgrad_logits

            if not np.isfinite(loss):
                raise TrainingError(method, step, state.current_lr(), last_loss)
            last_loss = loss
            losses.append(loss)

            grads = classifier.backward(X, grad_logits, cache=cache)
            if other_grads is not None:
                grads = [g + o for g, o in zip(grads, other_grads)]

            params, state = sgd_step(classifier.parameters(), grads, state)
            classifier.set_parameters(params)
            if nsteps:
                wb.refresh((step + 1.) / nsteps)
    return classifier, losses


def steps_per_epoch(N, batch_size):
    return int(np.ceil(N / float(batch_size)))


# ------------------------------
def fit_supervised(init, features, targets, config, rng, method="supervised",
                   extra=None, verbose=False):
    """
    train a copy of init on (features, soft targets) with the settings of config
    :return: trained MlpClassifier
    """
    classifier = init.copy()
    state = config.optimizer(classifier.parameters())
    batches = epoch_batches(features, targets, config.epochs, config.batch_size, rng)
    nsteps = config.epochs * steps_per_epoch(features.shape[0], config.batch_size)
    classifier, _ = descend(classifier, batches, state, method=method,
                            extra=extra, nsteps=nsteps, verbose=verbose)
    return classifier


def train_supervised(init, D_t, config, rng, method="scratch", verbose=False):
    """
    plain supervised training on a labeled dataset,
    the batch order comes from the supervised stream of split_streams(rng)
    """
    sup_rng, _ = split_streams(rng)
    if init.output_dim != D_t.K:
        raise ValidationError('classifier outputs {} classes, dataset has {}'.format(init.output_dim, D_t.K))
    return fit_supervised(init, D_t.features, onehot(D_t.labels, D_t.K), config, sup_rng,
                          method=method, verbose=verbose)
