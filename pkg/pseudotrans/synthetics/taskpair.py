from __future__ import print_function
import json
import numpy as np
from pseudotrans.errors import ValidationError, DimensionError
from pseudotrans.numerics.losses import check_simplex
from pseudotrans.defaults import \
    DEFAULT_DIM, DEFAULT_SOURCE_CLASSES, DEFAULT_TARGET_CLASSES, \
    DEFAULT_SOURCE_PER_CLASS, DEFAULT_TARGET_TRAIN, DEFAULT_TARGET_TEST, \
    DEFAULT_SIGMA_ALIGN, DEFAULT_RADIUS, DEFAULT_EIGEN_RANGE, DEFAULT_MIXING_SUPPORT

"""
synthetic source / target task pairs with disjoint label spaces

    source class c   : N(mu_c, S_c), mu_c on a sphere of radius R, S_c = Q diag(e) Q^T
    target class k   : N(sum_c M_kc mu_c + sigma_align * n_k, sum_c M_kc S_c)

the mixing matrix M (K_t x K_s, rows on the simplex) is the ground truth
relation between the two label spaces
"""

SOURCE_LABEL_SPACE = "source"
TARGET_LABEL_SPACE = "target"


# ------------------------------
class LabeledDataset(object):
    def __init__(self, features, labels, label_space, n_classes=None):
        """
        :param features: 2D array (N x d)
        :param labels: 1D int array (N), in [0, n_classes)
        :param label_space: string, label space identifier
        :param n_classes: int, number of classes (default max(labels) + 1)
        """
        features = np.asarray(features, float)
        labels = np.asarray(labels)
        if features.ndim != 2:
            raise DimensionError('features must be 2D, got shape {}'.format(features.shape))
        if labels.shape != (features.shape[0],):
            raise DimensionError('got {} labels for {} samples'.format(labels.size, features.shape[0]))
        if not len(labels):
            raise ValidationError('empty dataset')
        if not np.all(labels == np.round(labels)):
            raise ValidationError('labels must be integers')
        labels = labels.astype(int)
        if n_classes is None:
            n_classes = int(labels.max()) + 1
        if labels.min() < 0 or labels.max() >= n_classes:
            raise ValidationError('labels must be in [0, {})'.format(n_classes))

        self.features = features
        self.labels = labels
        self.label_space = str(label_space)
        self.K = int(n_classes)

    def __str__(self):
        return "LabeledDataset(label_space={}, N={}, d={}, K={})".format(
            self.label_space, len(self), self.dim, self.K)

    def __len__(self):
        return self.features.shape[0]

    @property
    def dim(self):
        return self.features.shape[1]

    def subset(self, indices):
        indices = np.asarray(indices, int)
        return LabeledDataset(self.features[indices], self.labels[indices],
                              label_space=self.label_space, n_classes=self.K)

    def groups(self):
        """list of index arrays, one per class (may be empty)"""
        return [np.flatnonzero(self.labels == k) for k in range(self.K)]

    def class_counts(self):
        return np.bincount(self.labels, minlength=self.K)

    def split(self, fraction, rng):
        """
        hold out a random fraction of the samples
        :return: (kept, held_out), held_out is None if no sample is held out
        """
        if not 0. <= fraction < 1.:
            raise ValidationError('fraction must be in [0, 1), got {}'.format(fraction))
        nout = int(np.floor(fraction * len(self)))
        if not nout:
            return self, None
        perm = rng.permutation(len(self))
        return self.subset(np.sort(perm[nout:])), self.subset(np.sort(perm[:nout]))

    # ------------------------------
    def to_dict(self):
        return {"features": self.features.tolist(),
                "labels": self.labels.tolist(),
                "label_space": self.label_space,
                "n_classes": self.K}

    @classmethod
    def from_dict(cls, d):
        return cls(features=d['features'], labels=d['labels'],
                   label_space=d['label_space'], n_classes=d.get('n_classes'))

    def write(self, filename):
        with open(filename, 'w') as fid:
            json.dump(self.to_dict(), fid)


# ------------------------------
class UnlabeledDataset(object):
    def __init__(self, features, provenance=None):
        """
        :param features: 2D array (N x d), N > 0
        :param provenance: optional 1D int array (N), index of the sample each row originates from
        """
        features = np.asarray(features, float)
        if features.ndim != 2:
            raise DimensionError('features must be 2D, got shape {}'.format(features.shape))
        if not features.shape[0]:
            raise ValidationError('empty dataset')
        if provenance is not None:
            provenance = np.asarray(provenance, int)
            if provenance.shape != (features.shape[0],):
                raise DimensionError('provenance length {} does not match {} samples'.format(
                    provenance.size, features.shape[0]))
        self.features = features
        self.provenance = provenance

    def __str__(self):
        return "UnlabeledDataset(N={}, d={})".format(len(self), self.dim)

    def __len__(self):
        return self.features.shape[0]

    @property
    def dim(self):
        return self.features.shape[1]

    def subset(self, indices):
        indices = np.asarray(indices, int)
        return UnlabeledDataset(self.features[indices],
                                None if self.provenance is None else self.provenance[indices])

    def to_dict(self):
        d = {"features": self.features.tolist()}
        if self.provenance is not None:
            d['provenance'] = self.provenance.tolist()
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(features=d['features'], provenance=d.get('provenance'))

    def write(self, filename):
        with open(filename, 'w') as fid:
            json.dump(self.to_dict(), fid)


def load_dataset(filename):
    """read a labeled or an unlabeled dataset, depending on the keys found in the file"""
    with open(filename, 'r') as fid:
        d = json.load(fid)
    if "labels" in d.keys():
        return LabeledDataset.from_dict(d)
    return UnlabeledDataset.from_dict(d)


# ------------------------------
def default_mixing(K_t, K_s, rng, support=DEFAULT_MIXING_SUPPORT):
    """
    each target class mixes `support` source classes with Dirichlet(1,...,1) weights
    the supports are disjoint as long as K_t * support <= K_s
    """
    if support < 1 or support > K_s:
        raise ValidationError('support must be in [1, K_s], got {}'.format(support))
    perm = rng.permutation(K_s)
    M = np.zeros((K_t, K_s))
    for k in range(K_t):
        cols = perm[(k * support + np.arange(support)) % K_s]
        M[k, cols] = rng.dirichlet(np.ones(support))
    return M


class TaskPairSpec(object):
    def __init__(self, dim=DEFAULT_DIM, source_classes=DEFAULT_SOURCE_CLASSES,
                 target_classes=DEFAULT_TARGET_CLASSES, source_per_class=DEFAULT_SOURCE_PER_CLASS,
                 target_train=DEFAULT_TARGET_TRAIN, target_test=DEFAULT_TARGET_TEST,
                 mixing=None, sigma_align=DEFAULT_SIGMA_ALIGN, seed=0,
                 radius=DEFAULT_RADIUS, eigen_range=DEFAULT_EIGEN_RANGE,
                 mixing_support=DEFAULT_MIXING_SUPPORT):
        """
        :param mixing: K_t x K_s array with rows on the simplex,
                       or None to draw the default sparse mixing from the seed
        """
        self.dim = int(dim)
        self.source_classes = int(source_classes)
        self.target_classes = int(target_classes)
        self.source_per_class = int(source_per_class)
        self.target_train = int(target_train)
        self.target_test = int(target_test)
        self.sigma_align = float(sigma_align)
        self.seed = int(seed)
        self.radius = float(radius)
        self.eigen_range = (float(eigen_range[0]), float(eigen_range[1]))
        self.mixing_support = int(mixing_support)

        if self.dim < 1:
            raise ValidationError('dim must be >= 1')
        if self.source_classes < 2 or self.target_classes < 2:
            raise ValidationError('need at least 2 classes in each label space')
        if min(self.source_per_class, self.target_train, self.target_test) < 1:
            raise ValidationError('sample counts must be >= 1')
        if self.sigma_align < 0.:
            raise ValidationError('sigma_align must be >= 0, got {}'.format(self.sigma_align))
        if not 0. < self.eigen_range[0] <= self.eigen_range[1]:
            raise ValidationError('eigen_range must satisfy 0 < low <= high, got {}'.format(self.eigen_range))

        self.mixing = None
        if mixing is not None:
            mixing = np.asarray(mixing, float)
            if mixing.shape != (self.target_classes, self.source_classes):
                raise DimensionError('mixing must be {} x {}, got {}'.format(
                    self.target_classes, self.source_classes, mixing.shape))
            self.mixing = check_simplex(mixing, name="mixing matrix")

    def __str__(self):
        return "TaskPairSpec(d={}, K_s={}, K_t={}, sigma_align={}, seed={})".format(
            self.dim, self.source_classes, self.target_classes, self.sigma_align, self.seed)

    def copy(self, **kwargs):
        d = self.to_dict()
        d.update(kwargs)
        return TaskPairSpec.from_dict(d)

    def to_dict(self):
        return {"dim": self.dim,
                "source_classes": self.source_classes,
                "target_classes": self.target_classes,
                "source_per_class": self.source_per_class,
                "target_train": self.target_train,
                "target_test": self.target_test,
                "mixing": None if self.mixing is None else self.mixing.tolist(),
                "sigma_align": self.sigma_align,
                "seed": self.seed,
                "radius": self.radius,
                "eigen_range": list(self.eigen_range),
                "mixing_support": self.mixing_support}

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


class TaskTruth(object):
    """construction parameters of a task pair, for diagnostics and tests only"""

    def __init__(self, mixing, source_means, source_covs, target_means, target_covs):
        self.mixing = mixing
        self.source_means = source_means
        self.source_covs = source_covs
        self.target_means = target_means
        self.target_covs = target_covs


def _random_covariance(d, eigen_range, rng):
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    Q = Q * np.sign(np.diag(R))
    e = rng.uniform(eigen_range[0], eigen_range[1], size=d)
    cov = (Q * e).dot(Q.T)
    return 0.5 * (cov + cov.T)


def _draw(means, covs, labels, rng):
    """one gaussian draw per label"""
    chols = np.linalg.cholesky(covs)
    z = rng.standard_normal((len(labels), means.shape[1]))
    return means[labels] + np.einsum('nij,nj->ni', chols[labels], z)


def _balanced_labels(n, K, rng):
    return rng.permutation(np.arange(n) % K)


def make_task_pair(spec):
    """
    :param spec: TaskPairSpec
    :return D_s: LabeledDataset, source data
    :return D_t_train: LabeledDataset, labeled target training data
    :return D_t_test: LabeledDataset, target test data
    :return truth: TaskTruth, holds the mixing matrix M
    """
    if not isinstance(spec, TaskPairSpec):
        raise ValidationError('expected a TaskPairSpec, got {}'.format(type(spec)))
    rng = np.random.default_rng(spec.seed)
    d, K_s, K_t = spec.dim, spec.source_classes, spec.target_classes

    # source geometry
    directions = rng.standard_normal((K_s, d))
    directions /= np.sqrt((directions ** 2.).sum(axis=1, keepdims=True))
    source_means = spec.radius * directions
    source_covs = np.array([_random_covariance(d, spec.eigen_range, rng) for _ in range(K_s)])

    # mixing matrix, the draw is consumed even when M is given so that
    # the rest of the stream does not depend on it
    drawn = default_mixing(K_t, K_s, rng, support=min(spec.mixing_support, K_s))
    M = drawn if spec.mixing is None else spec.mixing

    # the alignment noise is always drawn, sigma_align only scales it
    noise = rng.standard_normal((K_t, d))
    target_means = M.dot(source_means) + spec.sigma_align * noise
    target_covs = np.einsum('kc,cij->kij', M, source_covs)
    target_covs = 0.5 * (target_covs + target_covs.transpose((0, 2, 1)))

    # samples
    source_labels = np.repeat(np.arange(K_s), spec.source_per_class)
    source_labels = rng.permutation(source_labels)
    train_labels = _balanced_labels(spec.target_train, K_t, rng)
    test_labels = _balanced_labels(spec.target_test, K_t, rng)

    D_s = LabeledDataset(_draw(source_means, source_covs, source_labels, rng), source_labels,
                         label_space=SOURCE_LABEL_SPACE, n_classes=K_s)
    D_t_train = LabeledDataset(_draw(target_means, target_covs, train_labels, rng), train_labels,
                               label_space=TARGET_LABEL_SPACE, n_classes=K_t)
    D_t_test = LabeledDataset(_draw(target_means, target_covs, test_labels, rng), test_labels,
                              label_space=TARGET_LABEL_SPACE, n_classes=K_t)

    # no label overlap between source and target
    assert D_s.label_space != D_t_train.label_space

    truth = TaskTruth(mixing=M, source_means=source_means, source_covs=source_covs,
                      target_means=target_means, target_covs=target_covs)
    return D_s, D_t_train, D_t_test, truth
