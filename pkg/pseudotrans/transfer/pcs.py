from __future__ import print_function
import json
import numpy as np
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics.losses import check_simplex
from pseudotrans.synthetics.taskpair import LabeledDataset, UnlabeledDataset
from pseudotrans.transfer.labelfunctions import LabelDistribution, apply_label_function
from pseudotrans.standalone.multipro import Job, mapper
from pseudotrans.defaults import DEFAULT_LABEL_FUNCTION, DEFAULT_LABEL_TEMPERATURE, PCS_SHARD_SIZE

"""
pseudo conditional sampling
    1/ y_{s<-t} = g(C_s(x_t)) for every labeled target sample
    2/ cycle the pseudo labels up to N_target entries
    3/ x_{s<-t} ~ G_s(y_{s<-t}), one draw per entry
"""


class PseudoLabelSet(object):
    def __init__(self, labels, provenance, label_space="source"):
        """
        :param labels: 2D array (N x K_s), rows on the simplex
        :param provenance: 1D int array (N), index of the target sample each label comes from
        """
        labels = np.asarray(labels, float)
        provenance = np.asarray(provenance, int)
        if labels.ndim != 2:
            raise DimensionError('labels must be 2D, got shape {}'.format(labels.shape))
        if provenance.shape != (labels.shape[0],):
            raise DimensionError('provenance length {} does not match {} labels'.format(
                provenance.size, labels.shape[0]))
        self.labels = check_simplex(labels, name="pseudo label")
        self.provenance = provenance
        self.label_space = label_space

    def __str__(self):
        return "PseudoLabelSet(N={}, K_s={})".format(len(self), self.K)

    def __len__(self):
        return self.labels.shape[0]

    def __getitem__(self, n):
        return LabelDistribution(self.labels[n], label_space=self.label_space)

    @property
    def K(self):
        return self.labels.shape[1]

    def to_dict(self):
        return {"labels": self.labels.tolist(),
                "provenance": self.provenance.tolist(),
                "label_space": self.label_space}

    @classmethod
    def from_dict(cls, d):
        return cls(labels=d['labels'], provenance=d['provenance'], label_space=d.get('label_space', 'source'))

    def write(self, filename):
        with open(filename, 'w') as fid:
            json.dump(self.to_dict(), fid)


def load_pseudo_labels(filename):
    with open(filename, 'r') as fid:
        return PseudoLabelSet.from_dict(json.load(fid))


# ------------------------------
class LabelHead(object):
    """the source classifier with its softmax output replaced by a label function"""

    def __init__(self, classifier, label_function=DEFAULT_LABEL_FUNCTION,
                 tau=DEFAULT_LABEL_TEMPERATURE, rng=None):
        self.classifier = classifier
        self.label_function = label_function
        self.tau = tau
        self.rng = rng

    def __call__(self, X, groups=None):
        logits = self.classifier.forward(X)
        if callable(self.label_function):
            return np.asarray(self.label_function(logits), float)
        return apply_label_function(self.label_function, logits, rng=self.rng,
                                    tau=self.tau, groups=groups)


def pseudo_labels(C_s, D_t, g=DEFAULT_LABEL_FUNCTION, rng=None, tau=DEFAULT_LABEL_TEMPERATURE):
    """
    :param C_s: MlpClassifier, source classifier
    :param D_t: LabeledDataset, labeled target data (labels used by classwise_mean only)
    :param g: label function name or callable logits (N x K_s) -> labels (N x K_s)
    :param rng: numpy.random.Generator, required by the "random" label function
    :return: PseudoLabelSet, one label per target sample, in dataset order
    """
    if C_s.input_dim != D_t.dim:
        raise DimensionError('source classifier expects {} features, target data has {}'.format(
            C_s.input_dim, D_t.dim))
    head = LabelHead(C_s, label_function=g, tau=tau, rng=rng)
    labels = head(D_t.features, groups=D_t.labels)
    return PseudoLabelSet(labels, provenance=np.arange(len(D_t)))


# ------------------------------
def _sample_shard(G_s, labels, seed):
    return G_s.sample_batch(labels, np.random.default_rng(seed))


def build_pseudo_dataset(G_s, Y, N_target, rng, nworkers=1, shard_size=PCS_SHARD_SIZE):
    """
    :param G_s: ConditionalGenerator
    :param Y: PseudoLabelSet
    :param N_target: int, number of samples to generate
    :param rng: numpy.random.Generator, master stream
    :param nworkers: int, number of processes (None = all cpus), the output does not depend on it
    :param shard_size: int, samples per shard, each shard draws from its own stream
    :return: UnlabeledDataset with provenance
    """
    N_target = int(N_target)
    if N_target < 1:
        raise ValidationError('N_target must be >= 1, got {}'.format(N_target))
    if not len(Y):
        raise ValidationError('empty pseudo label set')
    if Y.K != G_s.K:
        raise DimensionError('pseudo labels have {} classes, the generator has {}'.format(Y.K, G_s.K))

    # cycle the labels, the last repeat is truncated
    index = np.arange(N_target) % len(Y)

    bounds = list(range(0, N_target, shard_size)) + [N_target]
    seeds = np.random.SeedSequence(int(rng.integers(2 ** 63))).spawn(len(bounds) - 1)

    def gen():
        for (start, end), seed in zip(zip(bounds[:-1], bounds[1:]), seeds):
            yield Job(G_s, Y.labels[index[start:end]], seed)

    shards = []
    with mapper(nworkers)(_sample_shard, gen(), Nworkers=nworkers) as ma:
        for _, features, _, _ in ma:
            shards.append(features)

    return UnlabeledDataset(np.concatenate(shards, axis=0), provenance=Y.provenance[index])


def pseudo_conditional_sampling(C_s, G_s, D_t, N_target, rng, g=DEFAULT_LABEL_FUNCTION,
                                tau=DEFAULT_LABEL_TEMPERATURE, nworkers=1):
    """pseudo labels then generation, the label stream and the sampling stream are split from rng"""
    label_rng, sample_rng = [np.random.default_rng(s) for s in
                             np.random.SeedSequence(int(rng.integers(2 ** 63))).spawn(2)]
    Y = pseudo_labels(C_s, D_t, g=g, rng=label_rng, tau=tau)
    return build_pseudo_dataset(G_s, Y, N_target, sample_rng, nworkers=nworkers), Y


def pseudo_pairs(D_pseudo, D_t):
    """(x_{s<-t}, y_t) pairs, y_t being the label of the target sample each row originates from"""
    if D_pseudo.provenance is None:
        raise ValidationError('pseudo dataset has no provenance')
    return LabeledDataset(D_pseudo.features, D_t.labels[D_pseudo.provenance],
                          label_space=D_t.label_space, n_classes=D_t.K)
